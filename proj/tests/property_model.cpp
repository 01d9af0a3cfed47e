#include "kwlab/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace kw;

TEST_CASE("properties hold for several seeds")
{
    for (std::uint64_t seed : {1u, 2u, 3u})
        for (int m = 0; m < 4; ++m)
            for (const auto& pr : verify_properties(ModelSolution(m), sample_points(seed, 500))) {
                INFO("seed " << seed << " m=" << m << " " << pr.name << " worst " << pr.worst << " at " << pr.location);
                CHECK(pr.pass);
            }
}

TEST_CASE("scaling equivariance at random dilations")
{
    std::uint64_t st = 77;
    for (int m = 0; m < 4; ++m) {
        const ModelSolution ms(m);
        for (const auto& p : sample_points(40 + m, 200)) {
            const double lam = std::exp(3.0 * unit_uniform(st) - 1.5);
            const ModelEval a = evaluate(ms, p), b = evaluate(ms, FieldPoint{lam * p.t, lam * p.z, p.x3});
            CHECK(std::abs(lam * b.alpha - a.alpha) < 1e-12 * std::abs(a.alpha));
            for (int i = 0; i < 3; ++i) CHECK((lam * b.a[i] - a.a[i]).norm() < 1e-12 * (1.0 + a.a[i].norm()));
        }
    }
}

TEST_CASE("reduced equations converge at second order at random points")
{
    for (int m = 1; m < 4; ++m) {
        const ModelSolution ms(m);
        for (const auto& p : sample_points(90 + m, 25, 0.05)) {
            const auto a = verify_reduced_eqs(ms, p, 1e-4), b = verify_reduced_eqs(ms, p, 5e-5);
            INFO("m=" << m << " " << describe(p));
            if (a.max() > 1e-10) CHECK(std::abs(a.max() / b.max() - 4.0) < 0.5);
        }
        // absolute size away from the boundary and the axis
        for (const auto& p : sample_points(95 + m, 25, 0.2, 0.35)) {
            INFO("m=" << m << " " << describe(p));
            CHECK(verify_reduced_eqs(ms, p, 1e-4).max() < 1e-6);
        }
    }
}

TEST_CASE("scale-aware default step keeps residuals small up to the boundary")
{
    for (int m = 0; m < 4; ++m) {
        const ModelSolution ms(m);
        for (const auto& p : sample_points(120 + m, 100, 0.05)) {
            INFO("m=" << m << " " << describe(p));
            CHECK(verify_reduced_eqs(ms, p).max() < 1e-6);
        }
    }
}

TEST_CASE("x3 translation invariance")
{
    for (int m = 0; m < 4; ++m) {
        const ModelSolution ms(m);
        for (const auto& p : sample_points(5, 50)) {
            const ModelEval a = evaluate(ms, p), b = evaluate(ms, FieldPoint{p.t, p.z, p.x3 + 1.234});
            CHECK(a.alpha == b.alpha);
        }
    }
}
