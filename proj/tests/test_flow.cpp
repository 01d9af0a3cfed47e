#include "kwlab/flow.hpp"

#include "kwlab/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace kw;

TEST_CASE("functional and gradient at special data")
{
    const auto Z = zero_field(8);
    CHECK(cs_functional(Z) == 0.0);
    const auto G0 = gradient(Z);
    CHECK(G0.max_abs() == 0.0);

    const auto F = abelian_field(32, 0.5);
    CHECK(std::abs(cs_functional(F)) < 1e-14);
    const auto G = gradient(F);
    double e = 0.0;
    for (std::size_t p = 0; p < F.size(); ++p) {
        const auto x = F.position(p);
        e = std::max({e, (G.A[2][p] - Vec3(0, 0, 0.5 * std::cos(x[0]))).norm(), G.A[0][p].norm(), G.A[1][p].norm(),
                      G.a[0][p].norm(), G.a[1][p].norm(), G.a[2][p].norm()});
    }
    CHECK(e < 1e-4);
}

TEST_CASE("gradient check")
{
    const auto F = random_field(12, 3, 0.3);
    const auto gc = gradient_check(F, random_field(12, 50, 1.0), {0.2, 0.1, 0.05, 1e-4});
    CHECK(gc.rel_err.back() < 1e-6);
    CHECK(gc.observed_order == doctest::Approx(2.0).epsilon(0.1));

    // along the gradient itself the first variation is |grad|^2
    const auto G = gradient(F);
    const double s = 1e-4;
    TorusField fp = F, fm = F;
    fp.axpy(s, G);
    fm.axpy(-s, G);
    const double g2 = field_inner(G, G);
    CHECK(g2 > 0.0);
    CHECK((cs_functional(fp) - cs_functional(fm)) / (2 * s) == doctest::Approx(g2).epsilon(1e-6));
}

TEST_CASE("constraint vanishes for zero Higgs field")
{
    for (const auto& v : constraint(zero_field(8))) CHECK(v.norm() == 0.0);
}

TEST_CASE("flow from zero is stationary")
{
    const auto Z = zero_field(8);
    const auto tr = run_flow(Z, FlowConfig{0.05 * Z.h(), 10});
    for (std::size_t i = 0; i < tr.cs.size(); ++i) {
        CHECK(tr.cs[i] == 0.0);
        CHECK(tr.energy_identity_relerr[i] == 0.0);
        CHECK(tr.constraint_drift[i] == 0.0);
    }
    CHECK(lojasiewicz_fit(tr.time, tr.cs).status == "already converged");
}

TEST_CASE("stability bound")
{
    const auto F = random_field(8, 1, 1e-3);
    CHECK_THROWS_AS(run_flow(F, FlowConfig{F.h(), 1}), CflError);
    try {
        run_flow(F, FlowConfig{F.h(), 1});
    } catch (const CflError& e) {
        CHECK(e.suggested_dt == doctest::Approx(0.2 * F.h()));
    }
}

TEST_CASE("short flow monitors")
{
    const auto F = random_field(12, 7, 1e-100);
    const auto tr = run_flow(F, FlowConfig{0.05 * F.h(), 40});
    CHECK(tr.monotone);
    CHECK(tr.energy_identity_max < 1e-3);
    CHECK(tr.forms_max < 1e-3);
    for (double v : tr.energy_identity_relerr) CHECK(std::isfinite(v));
}

TEST_CASE("exponential fit on a synthetic trace")
{
    std::vector<double> t, c;
    for (int i = 0; i <= 200; ++i) {
        t.push_back(0.02 * i);
        c.push_back(1.0 - std::exp(-3.0 * t.back()));
    }
    const auto L = lojasiewicz_fit(t, c);
    CHECK(L.model == "exponential");
    CHECK(L.rate == doctest::Approx(3.0).epsilon(1e-2));
}

TEST_CASE("linearized evolution")
{
    const auto plus = linearized_decay(seeded_modes(1, 4, "plus-unit"), 5.0, 0.5);
    for (std::size_t i = 0; i < plus.t.size(); ++i) {
        CHECK(std::abs(plus.f_plus[i] - plus.f_plus[0] * std::exp(-plus.t[i])) < 1e-8 * plus.f_plus[0]);
        CHECK(plus.f_minus[i] == 0.0);
    }
    const auto minus = linearized_decay(seeded_modes(1, 4, "minus-unit"), 2.0, 0.5);
    CHECK(minus.f_minus.back() == doctest::Approx(minus.f_minus.front() * std::exp(2.0)).epsilon(1e-10));
    CHECK_THROWS(seeded_modes(1, 4, "sideways"));
    CHECK(seeded_modes(2, 4, "mixed").reality_defect() < 1e-14);
}

TEST_CASE("symbol squares to |k|^2")
{
    const auto s = symbol({1, 2, -1});
    CHECK((s * s - 6.0 * Eigen::Matrix<std::complex<double>, 24, 24>::Identity()).norm() < 1e-12);
}

TEST_CASE("Kuranishi map")
{
    CHECK(kuranishi_w(constant_phi({}, 2)).w.h_norm() == 0.0);
    std::array<double, 18> bc;
    std::uint64_t st = 1;
    for (auto& v : bc) v = 0.6 * unit_uniform(st) - 0.3;
    const auto phi = constant_phi(bc, 3);
    const auto K = kuranishi_w(phi);
    CHECK(K.converged);
    CHECK(K.residual < 1e-12);
    CHECK(kuranishi_contraction(phi, 3, 0.1) < 1.0);

    ModeVector bad = phi;
    bad.at(1, 0, 0)(0) = 0.1;
    bad.at(-1, 0, 0)(0) = 0.1;
    CHECK_THROWS_AS(kuranishi_w(bad), std::invalid_argument);
    ModeVector with_ct = phi;
    with_ct.at(0, 0, 0)(3 * CT) = 0.1;
    CHECK_THROWS_AS(kuranishi_w(with_ct), std::invalid_argument);
}

TEST_CASE("quadratic term of a constant field is constant")
{
    std::array<double, 18> bc;
    std::uint64_t st = 9;
    for (auto& v : bc) v = unit_uniform(st) - 0.5;
    const auto q = quadratic_sharp(constant_phi(bc, 2));
    double off = 0.0;
    for (std::size_t i = 0; i < q.c.size(); ++i) {
        const auto k = q.wavevector(i);
        if (k[0] || k[1] || k[2]) off = std::max(off, q.c[i].norm());
    }
    CHECK(off < 1e-15);
    CHECK(q.at(0, 0, 0).norm() > 1e-3);
}
