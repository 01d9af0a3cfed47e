#include "kwlab/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace kw;

TEST_CASE("theta and x")
{
    CHECK(std::abs(theta(cplx(1.0, 0.0), 1.0).Theta - std::log(1.0 + std::sqrt(2.0))) < 1e-15);
    CHECK(theta(cplx(1e8, 0.0), 1.0).Theta < 1e-7);
    CHECK(std::abs(theta(cplx(0.0, 4.0), 3.0).x - 5.0) < 1e-14);
    CHECK(theta(cplx(0.0, 0.0), 1.0).on_axis);
}

TEST_CASE("m = 0 is the pole solution")
{
    const ModelSolution ms(0);
    for (const auto& p : sample_points(3, 100)) {
        const ModelEval e = evaluate(ms, p);
        CHECK(std::abs(e.alpha + 0.5 / p.t) < 1e-14 / p.t);
        CHECK(std::abs(std::sqrt(hnorm2(e.phi)) - 1.0 / (std::sqrt(2.0) * p.t)) < 1e-14 / p.t);
        CHECK(e.B[2].norm() == 0.0);
        CHECK(e.E[0].norm() == 0.0);
        CHECK(e.E[1].norm() == 0.0);
    }
}

TEST_CASE("reduced equations")
{
    const FieldPoint p{1.0, {0.7, 0.2}, 0.0};
    CHECK(verify_reduced_eqs(ModelSolution(0), p, 1e-4).max() < 1e-8);

    const ModelSolution m2(2);
    const auto a = verify_reduced_eqs(m2, p, 1e-4), b = verify_reduced_eqs(m2, p, 5e-5);
    CHECK(a.max() < 1e-6);
    for (int i = 0; i < 5; ++i) {
        INFO(reduced_residual_names[i]);
        if (a.r[i] > 1e-11) CHECK(std::abs(a.r[i] / b.r[i] - 4.0) < 0.5);
    }
    CHECK(verify_reduced_eqs(m2, p, 1e-4, true).r[4] > 1e-3);
}

TEST_CASE("m = 0 residuals are rounding-limited except where differences of 1/t enter")
{
    // phi_t and B3 involve t-derivatives of 1/t, whose centred difference carries h^2/t^2
    const auto r = verify_reduced_eqs(ModelSolution(0), FieldPoint{1.0, {0.7, 0.2}, 0.0}, 1e-4);
    CHECK(r.r[1] < 1e-10);
    CHECK(r.r[2] < 1e-10);
    CHECK(r.r[3] < 1e-10);
}

TEST_CASE("properties at seeded samples")
{
    const auto pts = sample_points(11, 500);
    for (int m = 0; m < 4; ++m)
        for (const auto& pr : verify_properties(ModelSolution(m), pts)) {
            INFO("m=" << m << " " << pr.name << " worst " << pr.worst << " at " << pr.location);
            CHECK(pr.pass);
        }
}

TEST_CASE("section built from a polynomial")
{
    const FieldPoint p{1.0, {0.7, 0.2}, 0.0};
    const auto c = case4_solution(ModelSolution(1), 1, p, 1e-4);
    CHECK(c.res_t < 1e-6);
    CHECK(c.res_holo < 1e-6);
    CHECK(std::abs(c.exponent - 2.0) < 1e-3);
    CHECK_THROWS_AS(case4_solution(ModelSolution(1), 0, p, 1e-4), std::invalid_argument);
}

TEST_CASE("domain errors")
{
    CHECK_THROWS(evaluate(ModelSolution(1), FieldPoint{0.0, {1.0, 0.0}, 0.0}));
    CHECK_THROWS(evaluate(ModelSolution(1), FieldPoint{1.0, {0.0, 0.0}, 0.0}));
    CHECK_THROWS(ModelSolution(-1));
}
