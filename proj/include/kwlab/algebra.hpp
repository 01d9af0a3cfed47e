#pragma once

#include <Eigen/Dense>
#include <complex>

namespace kw {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Element of sl(2,C) stored as a traceless 2x2 complex matrix.
struct LieElem {
    Mat2 m = Mat2::Zero();

    LieElem() = default;
    explicit LieElem(const Mat2& x);

    LieElem operator+(const LieElem& o) const { return LieElem(m + o.m); }
    LieElem operator-(const LieElem& o) const { return LieElem(m - o.m); }
    LieElem operator-() const { return LieElem(Mat2(-m)); }
    LieElem operator*(cplx s) const { return LieElem(Mat2(s * m)); }
    friend LieElem operator*(cplx s, const LieElem& v) { return v * s; }
};

// eigenspace split for the operator [i/2 sigma3, .]
struct LDecomp {
    LieElem plus;
    cplx zero{0.0, 0.0};
    LieElem minus;
};

LieElem sigma(int i);  // i in 1..3, throws std::out_of_range otherwise
cplx inner(const LieElem& u, const LieElem& v);
LieElem bracket(const LieElem& u, const LieElem& v);
LieElem star(const LieElem& v);
LDecomp l_decompose(const LieElem& v);

// [i/2 sigma3, v]; L+ is its +1 eigenspace, L- its -1 eigenspace
LieElem grading(const LieElem& v);

bool is_su2(const LieElem& v, double tol = 1e-12);
double hnorm2(const LieElem& v);  // 1/2 tr(v v^dagger)

// largest deviation from the product table sigma_i^2 = -1, sigma1 sigma2 = -sigma3 and cyclic
double product_table_defect();

// su(2) in real coordinates of the sigma basis (orthonormal for inner)
LieElem from_coords(const Vec3& x);
LieElem from_ccoords(const Eigen::Vector3cd& x);
Vec3 coords(const LieElem& v);  // real part; v must be su(2)
Eigen::Vector3cd ccoords(const LieElem& v);

// [x, y] in coordinates and the matrix of [x, .]
inline Vec3 lie(const Vec3& x, const Vec3& y) { return -2.0 * x.cross(y); }
Mat3 ad(const Vec3& x);

}  // namespace kw
