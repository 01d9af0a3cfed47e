#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace kw {

// -f'' + (n^2 + W) f = mu sech^2(Theta) f on [Theta_min, Theta_max],
// Dirichlet at Theta_min, natural condition at Theta_max
struct SLProblem {
    double Theta_min = 1e-6;
    double Theta_max = 30.0;
    int n_mesh = 4000;
    int angular_mode = 0;
    std::function<double(double)> potential = [](double) { return 0.0; };
};

struct SLSolution {
    double mu = 0.0;
    int n_mesh = 0;
    double refinement_change = 0.0;  // |mu(n) - mu(n/2)| / mu(n)
    std::vector<double> grid, f;     // eigenfunction, unit weighted mass
};

// lowest eigenvalue at the given mesh; throws if W < 0 on the mesh
SLSolution sl_solve(const SLProblem& prob);
// doubles the mesh until the relative change drops below rel_tol
SLSolution rayleigh_min(SLProblem prob, double rel_tol = 2e-4, int max_mesh = 1 << 17);

struct HemisphereResult {
    double eig0 = 0.0;
    double eig1 = 0.0;
    double cos_distance = 0.0;  // weighted L2 distance to normalized cos(theta)
    std::vector<double> theta, f;
};

// -(1/sin) d/dtheta (sin d/dtheta) on [0, pi/2], Dirichlet at pi/2
HemisphereResult hemisphere_eig0(int n_mesh);

enum class ExclusionCase { B3ct, Case2, Case3 };

struct ExclusionReport {
    std::string name;
    int m = 0;
    double mu_min = 0.0;
    int mesh = 0;
    double lo = 0.0, hi = 0.0;   // lambda in [lo, hi] is excluded
    std::string inequality;      // "lambda^2 - lambda <= mu" or "lambda^2 + lambda <= mu"
    bool covers_0_to_3half = false;
    double claimed_bound = 0.0;    // the lower bound on mu claimed for the case
};

std::function<double(double)> case_potential(ExclusionCase c, int m);
ExclusionReport exclusion_report(ExclusionCase c, int m = 1);
ExclusionCase parse_case(const std::string& s);

struct HardyEntry {
    std::string family;
    double param = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
    double scaled_ratio = 0.0;  // same member multiplied by a constant
};

struct HardyReport {
    std::vector<HardyEntry> entries;
    double sup_half_line = 0.0;     // int f^2/t^2 over int f'^2, bound 4
    double sup_near_extremal = 0.0; // t^(1/2+eps) family
    double sup_three_d = 0.0;       // int psi^2/x^2 over int |grad psi|^2, bound 4/9
    double sup_hyperbolic = 0.0;    // int f^2/sinh^2 over int f'^2/cosh^2, bound 4
};

// int_a^b f^2/t^2 over int_a^b f'^2; throws unless f vanishes at both ends
double hardy_half_line_ratio(const std::function<double(double)>& f, const std::function<double(double)>& df,
                             double a, double b);
HardyReport hardy_suite();

struct RadialODEState {
    double lambda = 0.0, k = 0.0;
    std::vector<double> x, a, b;
    double max_residual = 0.0;    // relative residual of both equations on the grid
    double max_identity = 0.0;    // weighted-norm identity, relative
    bool overflow = false;
};

// integrates the radial system from x_init with (a, b)(x_init) = init to every grid point
RadialODEState radial_ode_solve(double lambda, double k, double x_init, std::array<double, 2> init,
                                const std::vector<double>& grid);

struct Admissibility {
    bool admissible = false;
    double exponent = 0.0;           // fitted power of x^2(a^2+b^2) near 0
    double expected_exponent = 0.0;  // -2|lambda - 1|
    double fit_rms = 0.0;
    double integral = 0.0;           // int x^2 (a^2+b^2) over [x_min, x_max]
    double extension_change = 0.0;   // relative change when x_min is divided by 10
};

Admissibility radial_admissible(double lambda, double k);

}  // namespace kw
