#include "kwlab/algebra.hpp"

#include <stdexcept>
#include <string>

namespace kw {

namespace {

const cplx I{0.0, 1.0};

Mat2 pauli(int i)
{
    Mat2 p;
    switch (i) {
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -I, I, 0; break;
    default: p << 1, 0, 0, -1; break;
    }
    return p;
}

double table_defect_uncached()
{
    Mat2 s[3];
    for (int i = 0; i < 3; ++i) s[i] = I * pauli(i + 1);
    Mat2 id = Mat2::Identity();
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d = std::max(d, (s[i] * s[i] + id).cwiseAbs().maxCoeff());
    d = std::max(d, (s[0] * s[1] + s[2]).cwiseAbs().maxCoeff());
    d = std::max(d, (s[1] * s[2] + s[0]).cwiseAbs().maxCoeff());
    d = std::max(d, (s[2] * s[0] + s[1]).cwiseAbs().maxCoeff());
    return d;
}

// fail fast if the realization does not give the required product table
const bool table_ok = [] {
    if (table_defect_uncached() > 1e-14)
        throw std::logic_error("sigma realization violates the product table");
    return true;
}();

}  // namespace

LieElem::LieElem(const Mat2& x) : m(x)
{
    if (std::abs(x.trace()) > 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("LieElem: matrix is not trace-free");
}

LieElem sigma(int i)
{
    if (i < 1 || i > 3) throw std::out_of_range("sigma: index " + std::to_string(i) + " not in 1..3");
    return LieElem(Mat2(I * pauli(i)));
}

cplx inner(const LieElem& u, const LieElem& v) { return -0.5 * (u.m * v.m).trace(); }

LieElem bracket(const LieElem& u, const LieElem& v) { return LieElem(Mat2(u.m * v.m - v.m * u.m)); }

LieElem star(const LieElem& v) { return LieElem(Mat2(-v.m.adjoint())); }

LieElem grading(const LieElem& v) { return bracket(sigma(3) * (0.5 * I), v); }

LDecomp l_decompose(const LieElem& v)
{
    // with sigma3 = i diag(1,-1), [i/2 sigma3, .] is +1 on the lower corner
    // and -1 on the upper corner
    LDecomp d;
    Mat2 lo = Mat2::Zero(), up = Mat2::Zero();
    lo(1, 0) = v.m(1, 0);
    up(0, 1) = v.m(0, 1);
    d.plus = LieElem(lo);
    d.minus = LieElem(up);
    d.zero = v.m(0, 0) / I;
    return d;
}

bool is_su2(const LieElem& v, double tol)
{
    return std::abs(v.m.trace()) <= tol && (v.m.adjoint() + v.m).cwiseAbs().maxCoeff() <= tol;
}

double hnorm2(const LieElem& v) { return 0.5 * (v.m * v.m.adjoint()).trace().real(); }

double product_table_defect() { return table_ok ? table_defect_uncached() : 1.0; }

LieElem from_ccoords(const Eigen::Vector3cd& x)
{
    Mat2 m = Mat2::Zero();
    for (int i = 0; i < 3; ++i) m += x(i) * I * pauli(i + 1);
    return LieElem(m);
}

LieElem from_coords(const Vec3& x) { return from_ccoords(x.cast<cplx>()); }

Eigen::Vector3cd ccoords(const LieElem& v)
{
    Eigen::Vector3cd c;
    for (int i = 0; i < 3; ++i) c(i) = inner(sigma(i + 1), v);
    return c;
}

Vec3 coords(const LieElem& v) { return ccoords(v).real(); }

Mat3 ad(const Vec3& x)
{
    Mat3 c;
    c << 0, -x(2), x(1),
         x(2), 0, -x(0),
        -x(1), x(0), 0;
    return -2.0 * c;
}

}  // namespace kw
