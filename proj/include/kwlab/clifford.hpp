#pragma once

#include "kwlab/algebra.hpp"

#include <array>
#include <string>
#include <vector>

namespace kw {

using Mat8i = Eigen::Matrix<int, 8, 8>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Endo24 = Eigen::Matrix<double, 24, 24>;

struct CliffordSet {
    std::array<Mat8i, 3> gamma;
    std::array<Mat8i, 3> rho;
};

const CliffordSet& load_clifford();

struct RelationCheck {
    std::string name;
    long mismatches = 0;  // number of integer entries that differ from the required value
};

// anticommutators of all pairs, antisymmetry, trace, one nonzero per row,
// and rho1 rho2 rho3 anticommuting with each gamma; all in integer arithmetic
std::vector<RelationCheck> clifford_relations(const CliffordSet& c);

Mat8 to_real(const Mat8i& m);
Endo24 kron(const Mat8& m, const Mat3& a);
Mat8 gamma(int i);  // 1-based, floating point
Mat8 rho(int i);

struct DerivedEndos {
    Endo24 Q;
    Endo24 L;
    Mat8i Y8;
    Endo24 Y;
};

DerivedEndos derived_endos();

// (t + z1 gamma1 + z2 gamma2) / x; throws at the origin
Mat8 U_endo(double t, double z1, double z2);

// sum_i rho_i [a_i, .] for the pole solution a_i = -sigma_i / (2t); throws for t <= 0
Endo24 nahm_pole_endo(double t);

struct EigenCount {
    double value;
    int multiplicity;
};

// eigenvalues of a symmetric matrix grouped within tol
std::vector<EigenCount> symmetric_spectrum(const Endo24& m, double tol = 1e-10);
// imaginary parts of the eigenvalues of an antisymmetric matrix from the real Schur form
std::vector<EigenCount> antisymmetric_spectrum(const Endo24& m, double tol = 1e-10);

}  // namespace kw
