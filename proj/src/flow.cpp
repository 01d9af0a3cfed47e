#include "kwlab/flow.hpp"

#include "kwlab/model.hpp"
#include "kwlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kw {

namespace {

struct Stencil {
    int N;
    double inv12h;
    // fourth-order periodic centered difference of f along dir at grid point (i, j, k)
    Vec3 d(const std::vector<Vec3>& f, int i, int j, int k, int dir) const
    {
        auto at = [&](int s) {
            int c[3] = {i, j, k};
            c[dir] = (c[dir] + s + 2 * N) % N;
            return f[c[0] + N * (c[1] + N * c[2])];
        };
        return inv12h * (8.0 * (at(1) - at(-1)) - (at(2) - at(-2)));
    }
};

// slabs of constant k processed in parallel
template <class Fn>
void for_points(const TorusField& F, Fn fn)
{
    const int N = F.N;
    parallel_for(N, [&](std::size_t k) {
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) fn(i, j, static_cast<int>(k), F.index(i, j, static_cast<int>(k)));
    });
}

Vec3 curv_at(const TorusField& F, const Stencil& st, int i, int j, int k, std::size_t p, int kc)
{
    // B_kc = d_a A_b - d_b A_a + [A_a, A_b] with (kc, a, b) cyclic
    const int a = (kc + 1) % 3, b = (kc + 2) % 3;
    return st.d(F.A[b], i, j, k, a) - st.d(F.A[a], i, j, k, b) + lie(F.A[a][p], F.A[b][p]);
}

double sum_ordered(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

Vec3 seeded_vec(std::uint64_t& st, double amp)
{
    return amp * Vec3(2.0 * unit_uniform(st) - 1.0, 2.0 * unit_uniform(st) - 1.0, 2.0 * unit_uniform(st) - 1.0);
}

}  // namespace

TorusField::TorusField(int n, double side) : N(n), L(side)
{
    if (n < 5) throw std::invalid_argument("TorusField: N must be at least 5");
    for (int c = 0; c < 3; ++c) {
        A[c].assign(size(), Vec3::Zero());
        a[c].assign(size(), Vec3::Zero());
    }
}

std::size_t TorusField::index(int i, int j, int k) const
{
    auto w = [this](int v) { return ((v % N) + N) % N; };
    return w(i) + static_cast<std::size_t>(N) * (w(j) + static_cast<std::size_t>(N) * w(k));
}

std::array<double, 3> TorusField::position(std::size_t idx) const
{
    const double hh = h();
    return {hh * static_cast<double>(idx % N), hh * static_cast<double>((idx / N) % N),
            hh * static_cast<double>(idx / (static_cast<std::size_t>(N) * N))};
}

TorusField& TorusField::axpy(double s, const TorusField& x)
{
    for (int c = 0; c < 3; ++c)
        for (std::size_t p = 0; p < size(); ++p) {
            A[c][p] += s * x.A[c][p];
            a[c][p] += s * x.a[c][p];
        }
    return *this;
}

double TorusField::max_abs() const
{
    double m = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t p = 0; p < size(); ++p) m = std::max({m, A[c][p].cwiseAbs().maxCoeff(), a[c][p].cwiseAbs().maxCoeff()});
    return m;
}

TorusField zero_field(int N, double L) { return TorusField(N, L); }

TorusField random_field(int N, std::uint64_t seed, double amplitude, int kmax, double L)
{
    TorusField F(N, L);
    std::uint64_t st = seed * 0x9e3779b97f4a7c15ULL + 17;
    const double kk = 2.0 * M_PI / L;
    const double side = 2.0 * kmax + 1.0;
    const double scale = amplitude / std::sqrt(side * side * side);
    for (int n0 = -kmax; n0 <= kmax; ++n0)
        for (int n1 = -kmax; n1 <= kmax; ++n1)
            for (int n2 = -kmax; n2 <= kmax; ++n2) {
                const double w = scale * std::exp(-0.25 * (n0 * n0 + n1 * n1 + n2 * n2));
                std::array<Vec3, 6> cc, ss;
                for (int f = 0; f < 6; ++f) {
                    cc[f] = seeded_vec(st, w);
                    ss[f] = seeded_vec(st, w);
                }
                for (std::size_t p = 0; p < F.size(); ++p) {
                    auto x = F.position(p);
                    double ph = kk * (n0 * x[0] + n1 * x[1] + n2 * x[2]);
                    double c = std::cos(ph), s = std::sin(ph);
                    for (int f = 0; f < 3; ++f) {
                        F.A[f][p] += c * cc[f] + s * ss[f];
                        F.a[f][p] += c * cc[3 + f] + s * ss[3 + f];
                    }
                }
            }
    return F;
}

TorusField abelian_field(int N, double amplitude, double L)
{
    TorusField F(N, L);
    const double kk = 2.0 * M_PI / L;
    for (std::size_t p = 0; p < F.size(); ++p) F.a[1][p] = amplitude * std::sin(kk * F.position(p)[0]) * Vec3::UnitZ();
    return F;
}

TorusField decaying_helical_field(int N, std::uint64_t seed, double amplitude)
{
    TorusField F(N);
    std::uint64_t st = seed * 0x2545f4914f6cdd1dULL + 3;
    for (int k1 = -1; k1 <= 1; ++k1)
        for (int k2 = -1; k2 <= 1; ++k2)
            for (int k3 = -1; k3 <= 1; ++k3) {
                // one representative per +-k pair, unit wavevectors only
                int lin = k1 * 9 + k2 * 3 + k3;
                if (lin <= 0 || k1 * k1 + k2 * k2 + k3 * k3 != 1) continue;
                Eigen::Vector3d k(k1, k2, k3), kh = k.normalized();
                Eigen::Vector3d e1 = (std::abs(kh.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY());
                e1 = (e1 - e1.dot(kh) * kh).normalized();
                Eigen::Vector3d e2 = kh.cross(e1);
                Vec3 dir = seeded_vec(st, 1.0).normalized();
                double phase0 = 2.0 * M_PI * unit_uniform(st);
                double amp = amplitude * (0.5 + unit_uniform(st));
                for (std::size_t p = 0; p < F.size(); ++p) {
                    auto x = F.position(p);
                    double ph = k1 * x[0] + k2 * x[1] + k3 * x[2] + phase0;
                    // curl v = |k| v; (A, a) = (v, -v) decays at rate |k|
                    Eigen::Vector3d v = amp * (e1 * std::cos(ph) - e2 * std::sin(ph));
                    for (int c = 0; c < 3; ++c) {
                        F.A[c][p] += v[c] * dir;
                        F.a[c][p] -= v[c] * dir;
                    }
                }
            }
    return F;
}

double field_inner(const TorusField& x, const TorusField& y)
{
    std::vector<double> part(x.N);
    for_points(x, [&](int, int, int k, std::size_t p) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += x.A[c][p].dot(y.A[c][p]) + x.a[c][p].dot(y.a[c][p]);
        part[k] += s;
    });
    const double h = x.h();
    return h * h * h * sum_ordered(part);
}

std::vector<Vec3> curvature_B(const TorusField& F, int kc)
{
    Stencil st{F.N, 1.0 / (12.0 * F.h())};
    std::vector<Vec3> B(F.size());
    for_points(F, [&](int i, int j, int k, std::size_t p) { B[p] = curv_at(F, st, i, j, k, p, kc); });
    return B;
}

double cs_functional(const TorusField& F)
{
    Stencil st{F.N, 1.0 / (12.0 * F.h())};
    std::vector<double> part(F.N);
    for_points(F, [&](int i, int j, int k, std::size_t p) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += F.a[c][p].dot(curv_at(F, st, i, j, k, p, c));
        s -= F.a[0][p].dot(lie(F.a[1][p], F.a[2][p]));
        part[k] += s;
    });
    const double h = F.h();
    return h * h * h * sum_ordered(part);
}

TorusField gradient(const TorusField& F)
{
    Stencil st{F.N, 1.0 / (12.0 * F.h())};
    TorusField G(F.N, F.L);
    for_points(F, [&](int i, int j, int k, std::size_t p) {
        for (int c = 0; c < 3; ++c) {
            const int u = (c + 1) % 3, v = (c + 2) % 3;
            // (curl_A a)_c = D_u a_v - D_v a_u with D = d + [A, .]
            G.A[c][p] = st.d(F.a[v], i, j, k, u) - st.d(F.a[u], i, j, k, v) + lie(F.A[u][p], F.a[v][p]) -
                        lie(F.A[v][p], F.a[u][p]);
            G.a[c][p] = curv_at(F, st, i, j, k, p, c) - lie(F.a[u][p], F.a[v][p]);
        }
    });
    return G;
}

std::vector<Vec3> constraint(const TorusField& F)
{
    Stencil st{F.N, 1.0 / (12.0 * F.h())};
    std::vector<Vec3> out(F.size());
    for_points(F, [&](int i, int j, int k, std::size_t p) {
        Vec3 s = Vec3::Zero();
        for (int c = 0; c < 3; ++c) s += st.d(F.a[c], i, j, k, c) + lie(F.A[c][p], F.a[c][p]);
        out[p] = s;
    });
    return out;
}

TorusField gauge_transform(const TorusField& F, std::uint64_t seed, double eps)
{
    std::uint64_t st = seed * 0xbf58476d1ce4e5b9ULL + 5;
    struct Mode {
        int n[3];
        Vec3 c, s;
    };
    std::vector<Mode> modes(3);
    for (auto& m : modes) {
        for (int& v : m.n) v = static_cast<int>(std::floor(unit_uniform(st) * 3.0)) - 1;
        m.c = seeded_vec(st, eps);
        m.s = seeded_vec(st, eps);
    }
    const double kk = 2.0 * M_PI / F.L;
    auto xi = [&](const std::array<double, 3>& x) {
        Vec3 v = Vec3::Zero();
        for (const auto& m : modes) {
            double ph = kk * (m.n[0] * x[0] + m.n[1] * x[1] + m.n[2] * x[2]);
            v += std::cos(ph) * m.c + std::sin(ph) * m.s;
        }
        return v;
    };
    auto group = [&](const std::array<double, 3>& x) {
        Vec3 v = xi(x);
        double r = v.norm();
        Mat2 X = from_coords(v).m;
        return Mat2(std::cos(r) * Mat2::Identity() + (r > 0 ? std::sin(r) / r : 1.0) * X);
    };
    TorusField out(F.N, F.L);
    const double dh = 1e-5;
    for (std::size_t p = 0; p < F.size(); ++p) {
        auto x = F.position(p);
        Mat2 g = group(x), gi = g.adjoint();
        for (int c = 0; c < 3; ++c) {
            auto xp = x, xm = x, xp2 = x, xm2 = x;
            xp[c] += dh;
            xm[c] -= dh;
            xp2[c] += 2 * dh;
            xm2[c] -= 2 * dh;
            Mat2 dg = (8.0 * (group(xp) - group(xm)) - (group(xp2) - group(xm2))) / (12.0 * dh);
            Mat2 Ac = g * from_coords(F.A[c][p]).m * gi - dg * gi;
            Mat2 ac = g * from_coords(F.a[c][p]).m * gi;
            // project back onto su(2) to remove rounding in the trace
            Ac = 0.5 * (Ac - Ac.adjoint());
            Ac -= 0.5 * Ac.trace() * Mat2::Identity();
            ac = 0.5 * (ac - ac.adjoint());
            ac -= 0.5 * ac.trace() * Mat2::Identity();
            out.A[c][p] = coords(LieElem(Ac));
            out.a[c][p] = coords(LieElem(ac));
        }
    }
    return out;
}

GradientCheck gradient_check(const TorusField& F, const TorusField& dir, const std::vector<double>& s_list)
{
    const TorusField G = gradient(F);
    const double exact = field_inner(G, dir);
    GradientCheck r;
    for (double s : s_list) {
        TorusField fp = F, fm = F;
        fp.axpy(s, dir);
        fm.axpy(-s, dir);
        double fd = (cs_functional(fp) - cs_functional(fm)) / (2.0 * s);
        r.s.push_back(s);
        r.rel_err.push_back(std::abs(fd - exact) / std::max(std::abs(exact), 1e-300));
    }
    // from the two leading steps, where truncation still dominates rounding
    if (r.s.size() >= 2) r.observed_order = std::log(r.rel_err[0] / r.rel_err[1]) / std::log(r.s[0] / r.s[1]);
    return r;
}

namespace {

// 0/0 counts as agreement: the zero pair has both sides identically zero
double relerr(double num, double den)
{
    if (num == 0.0) return 0.0;
    return den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
}

// energy identity and two-forms monitors at row first + j from five consecutive states
void monitor(const std::vector<TorusField>& win, FlowTrace& tr, int first, int j)
{
    static const double w[5][5] = {{-25, 48, -36, 16, -3}, {-3, -10, 18, -6, 1}, {1, -8, 0, 8, -1},
                                   {-1, 6, -18, 10, 3},    {3, -16, 36, -48, 25}};
    const double dt = tr.time[1] - tr.time[0];
    const int m = first + j;
    double dcs = 0.0;
    for (int q = 0; q < 5; ++q) dcs += w[j][q] * tr.cs[first + q];
    dcs /= 12.0 * dt;
    TorusField vel(win[0].N, win[0].L);
    for (int q = 0; q < 5; ++q)
        if (w[j][q] != 0.0) vel.axpy(w[j][q] / (12.0 * dt), win[q]);
    const double form1 = field_inner(vel, vel);
    const double form2 = tr.grad_norm_sq[m];
    tr.energy_identity_relerr[m] = relerr(std::abs(dcs - form1), form1);
    tr.forms_relerr[m] = relerr(std::abs(form1 - form2), form2);
    tr.energy_identity_max = std::max(tr.energy_identity_max, tr.energy_identity_relerr[m]);
    tr.forms_max = std::max(tr.forms_max, tr.forms_relerr[m]);
}

}  // namespace

FlowTrace run_flow(const TorusField& F0, const FlowConfig& cfg, TorusField* final_state)
{
    const double h = F0.h();
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("flow: dt must be positive");
    if (cfg.steps < 0) throw std::invalid_argument("flow: steps must be non-negative");
    if (cfg.dt > 0.2 * h) throw CflError("flow: dt exceeds the stability bound 0.2 h", 0.2 * h);

    const double dt = cfg.dt;
    FlowTrace tr;
    const std::vector<Vec3> c0 = constraint(F0);
    {
        double s = 0.0;
        for (const auto& v : c0) s += v.squaredNorm();
        tr.initial_constraint = std::sqrt(h * h * h * s);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();

    // five most recent states for centred time differences
    std::vector<TorusField> ring;
    TorusField F = F0;
    // spectral radius of the linearized generator on this grid, for the monotonicity tolerance
    double rho = 0.0;
    for (int q = 0; q <= 1000; ++q) {
        double th = M_PI * q / 1000.0;
        rho = std::max(rho, (8.0 * std::sin(th) - std::sin(2.0 * th)) / (6.0 * h));
    }
    rho *= std::sqrt(3.0);

    for (int n = 0; n <= cfg.steps; ++n) {
        TorusField k1 = gradient(F);
        const double cs = cs_functional(F);
        const double g2 = field_inner(k1, k1);
        tr.step.push_back(n);
        tr.time.push_back(n * dt);
        tr.cs.push_back(cs);
        tr.grad_norm_sq.push_back(g2);
        tr.energy_identity_relerr.push_back(nan);
        tr.forms_relerr.push_back(nan);
        {
            std::vector<Vec3> c = constraint(F);
            double s = 0.0;
            for (std::size_t p = 0; p < c.size(); ++p) s += (c[p] - c0[p]).squaredNorm();
            tr.constraint_drift.push_back(std::sqrt(h * h * h * s));
            double sup = 0.0;
            for (std::size_t p = 0; p < F.size(); ++p)
                sup = std::max(sup, std::sqrt(F.a[0][p].squaredNorm() + F.a[1][p].squaredNorm() + F.a[2][p].squaredNorm()));
            tr.sup_a.push_back(sup);
        }
        if (ring.size() == 5) ring.erase(ring.begin());
        ring.push_back(F);

        if (n >= 1) {
            const double drop = tr.cs[n - 1] - cs;
            const double tol = 10.0 * (1e-14 * std::abs(cs) + dt * tr.grad_norm_sq[n - 1] * std::pow(rho * dt, 4) / 120.0);
            tr.monotone_worst = n == 1 ? drop - tol : std::max(tr.monotone_worst, drop - tol);
            if (drop > tol) tr.monotone = false;
        }
        if (n >= 4) {
            // window holds states n-4 .. n; interior rows use the centred stencil,
            // the first and last two rows one-sided ones
            monitor(ring, tr, n - 4, 2);
            if (n == 4) {
                monitor(ring, tr, 0, 0);
                monitor(ring, tr, 0, 1);
            }
            if (n == cfg.steps) {
                monitor(ring, tr, n - 4, 3);
                monitor(ring, tr, n - 4, 4);
            }
        }
        if (n == cfg.steps) break;

        TorusField y = F;
        y.axpy(0.5 * dt, k1);
        TorusField k2 = gradient(y);
        y = F;
        y.axpy(0.5 * dt, k2);
        TorusField k3 = gradient(y);
        y = F;
        y.axpy(dt, k3);
        TorusField k4 = gradient(y);
        F.axpy(dt / 6.0, k1).axpy(dt / 3.0, k2).axpy(dt / 3.0, k3).axpy(dt / 6.0, k4);
        if (!std::isfinite(F.max_abs())) throw std::runtime_error("flow: state became non-finite");
    }
    if (final_state) *final_state = F;
    return tr;
}

LojasiewiczFit lojasiewicz_fit(const std::vector<double>& t, const std::vector<double>& cs)
{
    if (t.size() != cs.size() || t.size() < 8) throw std::invalid_argument("lojasiewicz_fit: need at least 8 samples");
    LojasiewiczFit r;
    double lo = *std::min_element(cs.begin(), cs.end()), hi = *std::max_element(cs.begin(), cs.end());
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(hi))) {
        r.status = "already converged";
        r.cs_inf = hi;
        return r;
    }
    const std::size_t n = t.size();
    // Aitken extrapolation from three equally spaced tail samples
    const std::size_t i2 = n - 1, i1 = n - 1 - (n - 1) / 8, i0 = n - 1 - 2 * ((n - 1) / 8);
    const double d1 = cs[i1] - cs[i0], d2 = cs[i2] - cs[i1];
    if (!(d1 > 0.0 && d2 >= 0.0 && d2 < d1)) {
        r.status = "non-converged";
        return r;
    }
    r.cs_inf = cs[i2] + d2 * d2 / (d1 - d2);

    // fit over the samples whose gap is well resolved
    std::vector<double> tt, lg;
    const double gap0 = r.cs_inf - cs[0];
    for (std::size_t i = 0; i < n; ++i) {
        double gap = r.cs_inf - cs[i];
        if (t[i] <= 0.0 || gap <= 1e-9 * gap0) continue;
        if (i < n / 4) continue;  // skip the transient
        tt.push_back(t[i]);
        lg.push_back(std::log(gap));
    }
    if (tt.size() < 4) {
        r.status = "non-converged";
        return r;
    }
    auto fit = [&](const std::vector<double>& x, double& slope, double& rms) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double m = static_cast<double>(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            sx += x[i];
            sy += lg[i];
            sxx += x[i] * x[i];
            sxy += x[i] * lg[i];
        }
        slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        double c = (sy - slope * sx) / m, e = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) e += std::pow(lg[i] - c - slope * x[i], 2);
        rms = std::sqrt(e / m);
    };
    double se, sp;
    fit(tt, se, r.rms_exp);
    std::vector<double> logt(tt.size());
    std::transform(tt.begin(), tt.end(), logt.begin(), [](double v) { return std::log(v); });
    fit(logt, sp, r.rms_pow);
    r.rate = -se;
    r.power = -sp;
    r.status = "ok";
    if (r.rms_exp <= r.rms_pow) {
        r.model = "exponential";
        r.mu = 0.5;
    } else {
        r.model = "power";
        // cs_inf - cs ~ t^{-1/(1 - 2 mu)}
        r.mu = r.power > 0 ? 0.5 * (1.0 - 1.0 / r.power) : 0.0;
    }
    return r;
}

}  // namespace kw
