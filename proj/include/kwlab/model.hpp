#pragma once

#include "kwlab/algebra.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kw {

struct ModelSolution {
    int m = 0;
    double ell = 2.0 * 3.14159265358979323846;

    explicit ModelSolution(int m_ = 0, double ell_ = 2.0 * 3.14159265358979323846);
};

struct FieldPoint {
    double t = 1.0;
    cplx z{1.0, 0.0};
    double x3 = 0.0;
};

struct ThetaValue {
    double Theta;  // +inf on the axis
    double x;
    bool on_axis;
};

// sinh(Theta) = t/|z|; on the unit hemisphere this is tanh(Theta) = t
ThetaValue theta(cplx z, double t);

struct ModelEval {
    std::array<Vec3, 3> a;  // Higgs components in sigma coordinates
    std::array<Vec3, 3> A;  // connection components; A3 = 0
    std::array<Vec3, 3> B;  // only B3 nonzero
    std::array<Vec3, 3> E;  // only E1, E2 nonzero
    double Aphi = 0.0;      // coefficient of sigma3 (z1 dz2 - z2 dz1)/|z|^2
    double alpha = 0.0;
    LieElem phi;            // a1 - i a2
};

// fields of the integer-m solution; throws for t <= 0 and for |z| < 1e-8 when m > 0
ModelEval evaluate(const ModelSolution& ms, const FieldPoint& p);

struct ReducedResiduals {
    // phi_t, phi_holo, E1, E2, B3 in that order
    std::array<double, 5> r{};
    double max() const;
};

extern const char* const reduced_residual_names[5];

// 1e-4 min(t, |z|), or 1e-4 t on the axis
double default_step(const FieldPoint& p);

// h <= 0 uses default_step; drop_phi_sq removes the |phi|^2 term from the B3 equation (negative control)
ReducedResiduals verify_reduced_eqs(const ModelSolution& ms, const FieldPoint& p, double h = 0.0,
                                    bool drop_phi_sq = false);

struct PropertyResult {
    std::string name;
    bool pass = true;
    double worst = 0.0;
    std::string location;
};

std::vector<FieldPoint> sample_points(std::uint64_t seed, int n, double axis_exclusion = 1e-6, double t_min = 0.2);
std::vector<PropertyResult> verify_properties(const ModelSolution& ms, const std::vector<FieldPoint>& samples);

struct Case4Result {
    double res_t = 0.0;     // |grad_t s + 2 alpha s|
    double res_holo = 0.0;  // |(grad_1 + i grad_2) s|
    double exponent = 0.0;  // fitted power of |s| against x along the ray through the point
    double pairing_err = 0.0;  // |<phi s> - z^p|
};

Case4Result case4_solution(const ModelSolution& ms, int p_degree, const FieldPoint& p, double h);

// one-sided deterministic uniform in [0,1) from a 64-bit generator state
double unit_uniform(std::uint64_t& state);

std::string describe(const FieldPoint& p);

}  // namespace kw
