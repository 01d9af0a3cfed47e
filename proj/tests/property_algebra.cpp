#include "kwlab/algebra.hpp"
#include "kwlab/model.hpp"

#include <doctest.h>

using namespace kw;

namespace {

LieElem random_elem(std::uint64_t& st)
{
    Eigen::Vector3cd c;
    for (int i = 0; i < 3; ++i) c[i] = cplx(2.0 * unit_uniform(st) - 1.0, 2.0 * unit_uniform(st) - 1.0);
    return from_ccoords(c);
}

cplx random_scalar(std::uint64_t& st) { return {2.0 * unit_uniform(st) - 1.0, 2.0 * unit_uniform(st) - 1.0}; }

}  // namespace

TEST_CASE("bracket is antisymmetric and satisfies Jacobi")
{
    std::uint64_t st = 21;
    for (int n = 0; n < 1000; ++n) {
        const LieElem x = random_elem(st), y = random_elem(st), z = random_elem(st);
        CHECK((bracket(x, y) + bracket(y, x)).m.norm() < 1e-14);
        CHECK((bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).m.norm() < 1e-13);
    }
}

TEST_CASE("pairing is symmetric and ad-invariant")
{
    std::uint64_t st = 22;
    for (int n = 0; n < 1000; ++n) {
        const LieElem x = random_elem(st), u = random_elem(st), v = random_elem(st);
        CHECK(std::abs(inner(u, v) - inner(v, u)) < 1e-14);
        CHECK(std::abs(inner(bracket(x, u), v) + inner(u, bracket(x, v))) < 1e-13);
    }
}

TEST_CASE("conjugation is an antilinear involution")
{
    std::uint64_t st = 23;
    for (int n = 0; n < 1000; ++n) {
        const LieElem u = random_elem(st);
        const cplx c = random_scalar(st);
        CHECK((star(u * c) - star(u) * std::conj(c)).m.norm() < 1e-14);
        CHECK((star(star(u)) - u).m.norm() == 0.0);
    }
}

TEST_CASE("L decomposition is a linear splitting into eigenspaces")
{
    std::uint64_t st = 24;
    for (int n = 0; n < 1000; ++n) {
        const LieElem u = random_elem(st), v = random_elem(st);
        const cplx c = random_scalar(st);
        const LDecomp d = l_decompose(u * c + v), du = l_decompose(u), dv = l_decompose(v);
        CHECK((d.plus - du.plus * c - dv.plus).m.norm() < 1e-13);
        CHECK((d.minus - du.minus * c - dv.minus).m.norm() < 1e-13);
        CHECK((grading(d.plus) - d.plus).m.norm() < 1e-13);
        CHECK((grading(d.minus) + d.minus).m.norm() < 1e-13);
        CHECK((l_decompose(d.plus).plus - d.plus).m.norm() < 1e-13);
    }
}

TEST_CASE("real coordinates round trip")
{
    std::uint64_t st = 25;
    for (int n = 0; n < 1000; ++n) {
        const Vec3 x(unit_uniform(st) - 0.5, unit_uniform(st) - 0.5, unit_uniform(st) - 0.5);
        CHECK(is_su2(from_coords(x)));
        CHECK((coords(from_coords(x)) - x).norm() < 1e-15);
        CHECK(std::abs(hnorm2(from_coords(x)) - x.squaredNorm()) < 1e-15);
    }
}
