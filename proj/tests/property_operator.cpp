#include "kwlab/operator.hpp"

#include "kwlab/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace kw;

namespace {

Point4 random_point(std::uint64_t& st)
{
    const double r = 0.2 + 2.8 * unit_uniform(st), ang = 2.0 * M_PI * unit_uniform(st);
    return {0.3 + 2.7 * unit_uniform(st), r * std::cos(ang), r * std::sin(ang), 2.0 * M_PI * unit_uniform(st)};
}

const char* const kBackgrounds[] = {"trivial", "nahm", "model:1", "model:2", "model:3", "torus"};

}  // namespace

TEST_CASE("depictions agree on random data")
{
    std::uint64_t st = 31;
    for (int i = 0; i < 600; ++i) {
        const auto bg = parse_background(kBackgrounds[i % 6], 1 + i);
        const Point4 p = random_point(st);
        const auto psi = trig_section(500 + i, 2, true);
        const Spinor8 c = apply_D(*bg, *psi, p, Depiction::Clifford);
        INFO(bg->name());
        CHECK((c - apply_D(*bg, *psi, p, Depiction::Components)).norm() < 1e-9 * c.norm());
        CHECK((c - apply_D(*bg, *psi, p, Depiction::Matrix)).norm() < 1e-9 * c.norm());
    }
}

TEST_CASE("D is linear in the section")
{
    std::uint64_t st = 32;
    for (int i = 0; i < 100; ++i) {
        const auto bg = parse_background(kBackgrounds[i % 6], 7);
        const Point4 p = random_point(st);
        const auto a = trig_section(800 + i, 1, true), b = trig_section(900 + i, 1, true);
        const double s = 2.0 * unit_uniform(st) - 1.0;
        const auto sum = fn_section([a, b, s](const Point4& q) { return Spinor8(s * a->value(q) + b->value(q)); });
        const Spinor8 lhs = apply_D(*bg, *sum, p, Depiction::Clifford);
        const Spinor8 rhs = s * apply_D(*bg, *a, p, Depiction::Clifford) + apply_D(*bg, *b, p, Depiction::Clifford);
        CHECK((lhs - rhs).norm() < 1e-8 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("Y intertwining on random data")
{
    std::uint64_t st = 33;
    for (int i = 0; i < 100; ++i) {
        const auto bg = parse_background(kBackgrounds[i % 6], 3);
        const Point4 p = random_point(st);
        const auto psi = trig_section(1000 + i, 1, true);
        const double scale = apply_D(*bg, *psi, p, Depiction::Clifford).norm();
        CHECK(y_intertwine(bg, psi, p) < 1e-8 * scale);
    }
}

TEST_CASE("spatial identification on random trigonometric fields")
{
    std::uint64_t st = 34;
    for (int i = 0; i < 100; ++i) {
        const Point4 p = random_point(st);
        CHECK(spatial_identification(*trivial_background(), *trig_section(1200 + i, 2, false), p) < 1e-9);
        CHECK(spatial_identification(*torus_background(i), *trig_section(1300 + i, 1, false), p) < 1e-9);
    }
}

TEST_CASE("remainder is symmetric and blind to b3, ct at random points")
{
    std::uint64_t st = 35;
    for (int i = 0; i < 40; ++i) {
        const auto bg = parse_background(kBackgrounds[1 + i % 4]);
        const Point4 p = random_point(st);
        const Endo24 X = remainder_closed(background_derivs(*bg, p));
        CHECK((X - X.transpose()).cwiseAbs().maxCoeff() < 1e-8 * (1.0 + X.cwiseAbs().maxCoeff()));
        // on-shell cancellation, exact up to the eps / h rounding of the differenced background
        const double floor = 1e-10 * (1.0 + X.cwiseAbs().maxCoeff());
        CHECK(X.middleCols<3>(3 * B3).cwiseAbs().maxCoeff() < floor);
        CHECK(X.middleCols<3>(3 * CT).cwiseAbs().maxCoeff() < floor);
    }
}

TEST_CASE("hemisphere operator commutes with dilations and with Q")
{
    const auto bg = model_background(2);
    const Endo24 Q = derived_endos().Q;
    std::uint64_t st = 36;
    for (int i = 0; i < 10; ++i) {
        const Point4 p = random_point(st);
        Eigen::Matrix<double, 24, 3> c;
        for (int k = 0; k < c.size(); ++k) c.data()[k] = 2.0 * unit_uniform(st) - 1.0;
        const auto xi = fn_section([c](const Point4& q) {
            const double x = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
            return Spinor8(c.col(0) + (q[0] / x) * c.col(1) + (q[1] * q[2] / (x * x)) * c.col(2));
        });
        const Spinor8 o = omega_apply(bg, xi, p);
        const double lam = 0.5 + 2.0 * unit_uniform(st);
        CHECK((omega_apply(bg, xi, Point4{lam * p[0], lam * p[1], lam * p[2], p[3]}) - o).norm() < 1e-8 * o.norm());
        CHECK((Q * o - omega_apply(bg, mapped_section(Q, xi), p)).norm() < 1e-8 * o.norm());
    }
}
