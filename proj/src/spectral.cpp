#include "kwlab/spectral.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <stdexcept>

namespace kw {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// 3-point Gauss rule on [-1, 1]
constexpr std::array<double, 3> kGx = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr std::array<double, 3> kGw = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

struct Pencil {
    SpMat K, M;
};

// P1 elements on `x`; energy int p f'^2 + q f^2, mass int w f^2; an end node
// is dropped where a Dirichlet condition is imposed
Pencil assemble(const std::vector<double>& x, const std::function<double(double)>& p,
                const std::function<double(double)>& q, const std::function<double(double)>& w, bool dirichlet_left,
                bool dirichlet_right)
{
    const int nn = static_cast<int>(x.size());
    const int first = dirichlet_left ? 1 : 0, last = dirichlet_right ? nn - 2 : nn - 1;
    const int dim = last - first + 1;
    std::vector<Eigen::Triplet<double>> tk, tm;
    for (int e = 0; e + 1 < nn; ++e) {
        const double x0 = x[e], x1 = x[e + 1], h = x1 - x0;
        double k[2][2] = {}, m[2][2] = {};
        for (int g = 0; g < 3; ++g) {
            double s = 0.5 * (kGx[g] + 1.0), xg = x0 + s * h, wg = 0.5 * h * kGw[g];
            double phi[2] = {1.0 - s, s}, dphi[2] = {-1.0 / h, 1.0 / h};
            double pv = p(xg), qv = q(xg), wv = w(xg);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    k[i][j] += wg * (pv * dphi[i] * dphi[j] + qv * phi[i] * phi[j]);
                    m[i][j] += wg * wv * phi[i] * phi[j];
                }
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                int gi = e + i - first, gj = e + j - first;
                if (gi < 0 || gj < 0 || gi >= dim || gj >= dim) continue;
                tk.emplace_back(gi, gj, k[i][j]);
                tm.emplace_back(gi, gj, m[i][j]);
            }
    }
    Pencil pc{SpMat(dim, dim), SpMat(dim, dim)};
    pc.K.setFromTriplets(tk.begin(), tk.end());
    pc.M.setFromTriplets(tm.begin(), tm.end());
    return pc;
}

struct Eigs {
    std::vector<double> values;
    std::vector<Vec> vectors;  // M-normalized
};

// lowest `count` eigenpairs of K v = mu M v by inverse iteration with M-deflation
Eigs lowest_pairs(const Pencil& pc, int count)
{
    Eigen::SimplicialLDLT<SpMat> ldlt(pc.K);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("stiffness factorization failed");
    Eigs out;
    const Eigen::Index n = pc.K.rows();
    for (int c = 0; c < count; ++c) {
        Vec v = Vec::LinSpaced(n, 1.0, 2.0);
        if (c % 2 == 1) v = v.cwiseProduct(Vec::LinSpaced(n, -1.0, 1.0));
        double mu = 0.0;
        bool done = false;
        for (int it = 0; it < 5000 && !done; ++it) {
            for (const Vec& u : out.vectors) v -= u.dot(pc.M * v) * u;
            Vec y = ldlt.solve(pc.M * v);
            for (const Vec& u : out.vectors) y -= u.dot(pc.M * y) * u;
            double mass = y.dot(pc.M * y);
            double mu_new = y.dot(pc.K * y) / mass;
            v = y / std::sqrt(mass);
            done = it > 2 && std::abs(mu_new - mu) < 1e-12 * mu_new;
            mu = mu_new;
        }
        if (!done) throw std::runtime_error("inverse iteration did not converge");
        out.values.push_back(mu);
        out.vectors.push_back(v);
    }
    return out;
}

std::vector<double> uniform(double a, double b, int n)
{
    std::vector<double> x(n + 1);
    for (int i = 0; i <= n; ++i) x[i] = a + (b - a) * i / n;
    return x;
}

}  // namespace

SLSolution sl_solve(const SLProblem& prob)
{
    if (prob.n_mesh < 10) throw std::invalid_argument("SLProblem: mesh too coarse");
    if (!(prob.Theta_min > 0.0 && prob.Theta_max > prob.Theta_min))
        throw std::invalid_argument("SLProblem: bad domain");
    std::vector<double> x = uniform(prob.Theta_min, prob.Theta_max, prob.n_mesh);
    for (double t : x) {
        double w = prob.potential(t);
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::domain_error("potential negative or not finite on the mesh");
    }
    const double n2 = static_cast<double>(prob.angular_mode) * prob.angular_mode;
    auto W = prob.potential;
    Pencil pc = assemble(
        x, [](double) { return 1.0; }, [&](double t) { return n2 + W(t); },
        [](double t) { return 1.0 / (std::cosh(t) * std::cosh(t)); }, true, false);
    Eigs e = lowest_pairs(pc, 1);
    SLSolution s;
    s.mu = e.values[0];
    s.n_mesh = prob.n_mesh;
    s.grid = x;
    s.f.assign(x.size(), 0.0);
    for (Eigen::Index i = 0; i < e.vectors[0].size(); ++i) s.f[i + 1] = e.vectors[0](i);
    if (s.f.back() < 0.0)
        for (double& v : s.f) v = -v;
    return s;
}

SLSolution rayleigh_min(SLProblem prob, double rel_tol, int max_mesh)
{
    SLSolution prev = sl_solve(prob);
    while (prob.n_mesh * 2 <= max_mesh) {
        prob.n_mesh *= 2;
        SLSolution cur = sl_solve(prob);
        cur.refinement_change = std::abs(cur.mu - prev.mu) / cur.mu;
        if (cur.refinement_change < rel_tol) return cur;
        prev = std::move(cur);
    }
    throw std::runtime_error("rayleigh_min: no convergence under mesh refinement");
}

HemisphereResult hemisphere_eig0(int n_mesh)
{
    if (n_mesh < 100) throw std::invalid_argument("hemisphere_eig0: n_mesh must be at least 100");
    std::vector<double> th = uniform(0.0, M_PI / 2, n_mesh);
    // regularity at the pole is the natural condition
    auto sn = [](double t) { return std::sin(t); };
    Pencil pc = assemble(th, sn, [](double) { return 0.0; }, sn, false, true);
    Eigs e = lowest_pairs(pc, 2);

    HemisphereResult r;
    r.eig0 = e.values[0];
    r.eig1 = e.values[1];
    r.theta = th;
    r.f.assign(th.size(), 0.0);
    for (Eigen::Index i = 0; i < e.vectors[0].size(); ++i) r.f[i] = e.vectors[0](i);
    if (r.f[0] < 0.0)
        for (double& v : r.f) v = -v;
    // int cos^2 sin over [0, pi/2] is 1/3
    const double c = std::sqrt(3.0);
    double d2 = 0.0;
    for (std::size_t i = 0; i + 1 < th.size(); ++i) {
        const double h = th[i + 1] - th[i];
        for (int g = 0; g < 3; ++g) {
            double s = 0.5 * (kGx[g] + 1.0), t = th[i] + s * h;
            double fv = (1.0 - s) * r.f[i] + s * r.f[i + 1];
            double diff = fv - c * std::cos(t);
            d2 += 0.5 * h * kGw[g] * diff * diff * std::sin(t);
        }
    }
    r.cos_distance = std::sqrt(d2);
    return r;
}

std::function<double(double)> case_potential(ExclusionCase c, int m)
{
    const double M = m + 1.0;
    switch (c) {
    case ExclusionCase::B3ct: return [](double) { return 0.0; };
    case ExclusionCase::Case2:
        return [M](double t) {
            double s = std::sinh(M * t), ch = std::cosh(t);
            return 2.0 * M * M * ch * ch / (s * s);
        };
    case ExclusionCase::Case3:
        return [M](double t) {
            double s = std::sinh(M * t), cm = std::cosh(M * t), ch = std::cosh(t);
            return M * M * (cm * cm + ch * ch) / (s * s);
        };
    }
    throw std::invalid_argument("unknown exclusion case");
}

ExclusionCase parse_case(const std::string& s)
{
    if (s == "b3ct") return ExclusionCase::B3ct;
    if (s == "case2") return ExclusionCase::Case2;
    if (s == "case3") return ExclusionCase::Case3;
    throw std::invalid_argument("unknown case '" + s + "' (expected b3ct, case2, case3)");
}

ExclusionReport exclusion_report(ExclusionCase c, int m)
{
    if (c != ExclusionCase::B3ct && m < 1) throw std::invalid_argument("exclusion_report: m must be >= 1");
    SLProblem prob;
    prob.n_mesh = 4000;
    prob.potential = case_potential(c, m);
    SLSolution s = rayleigh_min(prob);

    ExclusionReport r;
    r.m = c == ExclusionCase::B3ct ? 0 : m;
    r.mu_min = s.mu;
    r.mesh = s.n_mesh;
    const double disc = std::sqrt(1.0 + 4.0 * s.mu);
    if (c == ExclusionCase::Case3) {
        r.name = "case3";
        r.inequality = "lambda^2 + lambda <= mu";
        r.lo = 0.5 * (-1.0 - disc);
        r.hi = 0.5 * (-1.0 + disc);
        r.claimed_bound = 2.0 + (m + 1.0) * (m + 1.0);
    } else {
        r.name = c == ExclusionCase::B3ct ? "b3ct" : "case2";
        r.inequality = "lambda^2 - lambda <= mu";
        r.lo = 0.5 * (1.0 - disc);
        r.hi = 0.5 * (1.0 + disc);
        r.claimed_bound = 2.0;
    }
    r.covers_0_to_3half = r.lo <= 0.0 && r.hi >= 1.5;
    return r;
}

}  // namespace kw
