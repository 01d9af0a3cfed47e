#include "kwlab/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace kw;

TEST_CASE("half-sphere ground state")
{
    const auto h = hemisphere_eig0(2000);
    CHECK(std::abs(h.eig0 - 2.0) < 1e-3);
    CHECK(h.cos_distance < 1e-2);
    // next Legendre level with P'(0) = 0 and P(1) = 0 reached at l = 3
    CHECK(h.eig1 == doctest::Approx(12.0).epsilon(1e-4));
    CHECK_THROWS(hemisphere_eig0(10));
}

TEST_CASE("reduced Rayleigh quotient")
{
    SLProblem p;
    const auto s0 = rayleigh_min(p);
    CHECK(std::abs(s0.mu - 2.0) < 5e-3);
    CHECK(s0.refinement_change < 2e-4);
    p.angular_mode = 1;
    CHECK(rayleigh_min(p).mu > 2.0);
    p.angular_mode = 0;
    p.potential = case_potential(ExclusionCase::Case2, 1);
    CHECK(rayleigh_min(p).mu > 2.0);
    p.potential = [](double) { return -1.0; };
    CHECK_THROWS(sl_solve(p));
}

TEST_CASE("exclusion intervals")
{
    for (auto c : {ExclusionCase::B3ct, ExclusionCase::Case2, ExclusionCase::Case3}) {
        const auto r = exclusion_report(c, 1);
        INFO(r.name);
        CHECK(r.covers_0_to_3half);
        CHECK(r.mu_min >= r.claimed_bound - 5e-3);
        // endpoints solve the quadratic with equality
        const double s = r.inequality == "lambda^2 + lambda <= mu" ? 1.0 : -1.0;
        CHECK(r.lo * r.lo + s * r.lo == doctest::Approx(r.mu_min));
        CHECK(r.hi * r.hi + s * r.hi == doctest::Approx(r.mu_min));
    }
    CHECK(exclusion_report(ExclusionCase::Case3, 1).mu_min >= 6.0 - 5e-3);
    CHECK(parse_case("case2") == ExclusionCase::Case2);
    CHECK_THROWS(parse_case("case4"));
    CHECK_THROWS(exclusion_report(ExclusionCase::Case2, 0));
}

TEST_CASE("Hardy quotient")
{
    const double r = hardy_half_line_ratio([](double t) { return t * std::exp(-t); },
                                           [](double t) { return (1.0 - t) * std::exp(-t); }, 0.0, 800.0);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r <= 4.0);
    CHECK_THROWS(hardy_half_line_ratio([](double) { return 1.0; }, [](double) { return 0.0; }, 0.0, 1.0));
}

TEST_CASE("Hardy families")
{
    const auto H = hardy_suite();
    CHECK(H.sup_half_line <= 4.0);
    CHECK(H.sup_near_extremal >= 3.5);
    CHECK(H.sup_three_d <= 4.0 / 9.0);
    CHECK(H.sup_hyperbolic <= 4.0);
}

TEST_CASE("radial system at lambda = 1")
{
    std::vector<double> g;
    for (int i = 0; i <= 20; ++i) g.push_back(0.1 * std::pow(100.0, i / 20.0));
    const auto up = radial_ode_solve(1.0, 1.0, 1.0, {std::exp(1.0), std::exp(1.0)}, g);
    const auto down = radial_ode_solve(1.0, 1.0, 1.0, {std::exp(-1.0), -std::exp(-1.0)}, g);
    REQUIRE(up.x.size() == g.size());
    REQUIRE(down.x.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g[i], e = std::exp(x) / x, f = std::exp(-x) / x;
        CHECK(std::abs(up.a[i] - e) < 1e-8 * e);
        CHECK(std::abs(up.b[i] - e) < 1e-8 * e);
        CHECK(std::abs(down.a[i] - f) < 1e-8 * f);
        CHECK(std::abs(down.b[i] + f) < 1e-8 * f);
    }
    CHECK(up.max_identity < 1e-8);
    CHECK(down.max_residual < 1e-8);
    CHECK_THROWS(radial_ode_solve(1.0, 0.0, 1.0, {1.0, 1.0}, g));
    CHECK_THROWS(radial_ode_solve(1.0, 1.0, -1.0, {1.0, 1.0}, g));
}

TEST_CASE("admissibility window")
{
    CHECK(radial_admissible(1.0, 1.0).admissible);
    CHECK_FALSE(radial_admissible(2.0, 1.0).admissible);
    CHECK_FALSE(radial_admissible(0.0, 1.0).admissible);
    const auto a = radial_admissible(0.6, -2.0);
    CHECK(a.admissible);
    CHECK(a.exponent == doctest::Approx(a.expected_exponent).epsilon(1e-2));
}
