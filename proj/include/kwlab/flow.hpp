#pragma once

#include "kwlab/operator.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace kw {

// (A, a) on the periodic N^3 grid of the side-L torus; components stored as
// real su(2) coordinates, index = i + N (j + N k)
struct TorusField {
    int N = 0;
    double L = 2.0 * M_PI;
    std::array<std::vector<Vec3>, 3> A, a;

    TorusField() = default;
    TorusField(int n, double side = 2.0 * M_PI);
    double h() const { return L / N; }
    std::size_t size() const { return static_cast<std::size_t>(N) * N * N; }
    std::size_t index(int i, int j, int k) const;
    std::array<double, 3> position(std::size_t idx) const;

    TorusField& axpy(double s, const TorusField& x);  // this += s x
    double max_abs() const;
};

TorusField zero_field(int N, double L = 2.0 * M_PI);
// all Fourier modes |n|_inf <= kmax with seeded coefficients damped by exp(-|n|^2/4)
TorusField random_field(int N, std::uint64_t seed, double amplitude, int kmax = 2, double L = 2.0 * M_PI);
// a = amplitude sigma3 sin(x1) dx2, A = 0
TorusField abelian_field(int N, double amplitude, double L = 2.0 * M_PI);
// superposition of the unit-wavevector modes that decay under the linearized
// flow at rate 1, each with its own seeded Lie direction
TorusField decaying_helical_field(int N, std::uint64_t seed, double amplitude);

// L^2 pairing h^3 sum (A.A' + a.a')
double field_inner(const TorusField& x, const TorusField& y);

double cs_functional(const TorusField& F);
// gradient of cs: A-part curl_A a, a-part B_A - *(a ^ a)
TorusField gradient(const TorusField& F);
// d_A^* a up to sign: sum_i (d_i a_i + [A_i, a_i]) at each grid point
std::vector<Vec3> constraint(const TorusField& F);
// curvature B_k = 1/2 eps_kij F_ij
std::vector<Vec3> curvature_B(const TorusField& F, int k);

// pointwise gauge transformation by exp(xi), xi = eps * (smooth seeded field)
TorusField gauge_transform(const TorusField& F, std::uint64_t seed, double eps);

struct GradientCheck {
    std::vector<double> s, rel_err;
    double observed_order = 0.0;  // from the first two entries of s_list
};

GradientCheck gradient_check(const TorusField& F, const TorusField& dir, const std::vector<double>& s_list);

struct FlowConfig {
    double dt = 0.0;
    int steps = 0;
};

struct FlowTrace {
    std::vector<int> step;
    std::vector<double> time, cs, grad_norm_sq, energy_identity_relerr, forms_relerr, constraint_drift, sup_a;
    double monotone_worst = 0.0;   // max over steps of (cs drop - tolerance), <= 0 when monotone
    bool monotone = true;
    double energy_identity_max = 0.0;
    double forms_max = 0.0;
    double initial_constraint = 0.0;
};

struct CflError : std::runtime_error {
    double suggested_dt;
    CflError(const std::string& m, double s) : std::runtime_error(m), suggested_dt(s) {}
};

// ascending RK4 flow d/dt (A, a) = grad cs; throws CflError when dt > 0.2 h.
// The energy monitors need at least four steps and stay NaN otherwise.
FlowTrace run_flow(const TorusField& F0, const FlowConfig& cfg, TorusField* final_state = nullptr);

struct LojasiewiczFit {
    std::string status;  // "ok", "already converged", "non-converged"
    std::string model;   // "exponential" or "power"
    double cs_inf = 0.0;
    double rate = 0.0;      // exponential: cs_inf - cs ~ e^{-rate t}
    double power = 0.0;     // power: cs_inf - cs ~ t^{-power}
    double mu = 0.0;
    double rms_exp = 0.0, rms_pow = 0.0;
};

LojasiewiczFit lojasiewicz_fit(const std::vector<double>& t, const std::vector<double>& cs);

using CSpinor = Eigen::Matrix<std::complex<double>, 24, 1>;

// Fourier coefficients on |k|_inf <= kmax of a real Spinor8 field on the side-2pi torus
struct ModeVector {
    int kmax = 0;
    std::vector<CSpinor> c;

    explicit ModeVector(int k = 0);
    std::size_t index(int k1, int k2, int k3) const;
    std::array<int, 3> wavevector(std::size_t idx) const;
    CSpinor& at(int k1, int k2, int k3) { return c[index(k1, k2, k3)]; }
    const CSpinor& at(int k1, int k2, int k3) const { return c[index(k1, k2, k3)]; }
    double l2_norm() const;       // (2pi)^3 sum |c_k|^2, square root
    double h_norm() const;        // (2pi)^3 sum (1 + |k|^2) |c_k|^2, square root
    double reality_defect() const;
};

// symbol i gamma.k (x) id of the spatial operator at the trivial background
Eigen::Matrix<std::complex<double>, 24, 24> symbol(const std::array<int, 3>& k);

struct DecayTrace {
    std::vector<double> t, f_plus, f_minus;
};

// exact mode-wise evolution of d/dt psi = -L psi; f_pm = norms of the +-eigenspace parts
DecayTrace linearized_decay(const ModeVector& psi0, double T, double dt);
// seeded data: kind "plus" (only positive eigenvectors), "minus" or "mixed", |k|_inf <= kmax, no zero mode;
// "plus-unit" and "minus-unit" keep only |k| = 1
ModeVector seeded_modes(int kmax, std::uint64_t seed, const std::string& kind);

struct KuranishiResult {
    ModeVector w;
    int iterations = 0;
    double last_step = 0.0;      // H-norm of the last update
    double residual = 0.0;       // H-norm of (1 - Pi0) F(phi + w)
    double kappa = 0.0;          // |w|_H / |phi|_H^2
    double quad_scale = 0.0;     // H-norm of (phi + w)#(phi + w) before projection
    bool at_roundoff_floor = false;  // |w| indistinguishable from FFT rounding of the quadratic term
    bool converged = false;
};

struct KuranishiSweep {
    std::vector<double> phi_norm, w_norm;
    std::vector<bool> floor;
    double slope = 0.0;          // least-squares log-log slope; NaN when any point sits at the floor
    bool slope_defined = false;
};

// constant H^1 element from 18 numbers (b1..b3, c1..c3, three su(2) coordinates each)
ModeVector constant_phi(const std::array<double, 18>& bc, int kmax);
KuranishiResult kuranishi_w(const ModeVector& phi, double tol = 1e-13, int max_iter = 200);
// the map G_phi and the quadratic term, exposed for contraction and residual checks
ModeVector kuranishi_G(const ModeVector& phi, const ModeVector& w);
ModeVector quadratic_sharp(const ModeVector& psi);
// phi scaled by 2^-1 .. 2^-points
KuranishiSweep kuranishi_sweep(const ModeVector& phi, int points = 6);
// |G(w) - G(w')|_H / |w - w'|_H for seeded small w, w' with |.|_H = radius
double kuranishi_contraction(const ModeVector& phi, std::uint64_t seed, double radius);

}  // namespace kw
