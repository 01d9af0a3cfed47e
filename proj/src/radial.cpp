#include "kwlab/spectral.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kw {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 2>;

struct Rhs {
    double lambda, k;
    void operator()(const State& s, State& d, double x) const
    {
        d[0] = ((lambda - 2.0) / x) * s[0] + k * s[1];
        d[1] = -(lambda / x) * s[1] + k * s[0];
    }
};

constexpr double kOverflow = 1e280;

// values at the (monotone) list of abscissae, starting from `init` at x0 = xs.front()
std::vector<State> integrate_to(const Rhs& rhs, State init, const std::vector<double>& xs, bool* overflow)
{
    std::vector<State> out;
    out.reserve(xs.size());
    auto stepper = ode::make_controlled(1e-15, 1e-14, ode::runge_kutta_dopri5<State>());
    const double dx0 = 1e-4 * std::abs(xs.back() - xs.front()) * (xs.back() > xs.front() ? 1.0 : -1.0);
    auto obs = [&](const State& s, double) {
        out.push_back(s);
        if (std::abs(s[0]) + std::abs(s[1]) > kOverflow) throw std::overflow_error("radial growth");
    };
    try {
        ode::integrate_times(stepper, rhs, init, xs.begin(), xs.end(), dx0 == 0.0 ? 1e-6 : dx0, obs);
    } catch (const std::overflow_error&) {
        if (overflow) *overflow = true;
    }
    return out;
}

// solution values at arbitrary points, integrating away from x_init on each side
std::vector<State> evaluate(const Rhs& rhs, double x_init, State init, const std::vector<double>& pts, bool* overflow)
{
    std::vector<State> out(pts.size(), State{NAN, NAN});
    for (int side : {-1, 1}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i] == x_init)
                out[i] = init;
            else if ((side < 0) == (pts[i] < x_init))
                idx.push_back(i);
        }
        std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return side * pts[i] < side * pts[j]; });
        std::vector<double> xs{x_init};
        for (std::size_t i : idx) xs.push_back(pts[i]);
        if (xs.size() < 2) continue;
        std::vector<State> v = integrate_to(rhs, init, xs, overflow);
        for (std::size_t j = 1; j < v.size(); ++j) out[idx[j - 1]] = v[j];
    }
    return out;
}

}  // namespace

RadialODEState radial_ode_solve(double lambda, double k, double x_init, std::array<double, 2> init,
                                const std::vector<double>& grid)
{
    if (k == 0.0) throw std::invalid_argument("radial_ode_solve: k must be nonzero");
    if (!(x_init > 0.0)) throw std::invalid_argument("radial_ode_solve: x_init must be positive");
    std::vector<double> g = grid;
    std::sort(g.begin(), g.end());
    if (g.empty() || g.front() <= 0.0) throw std::invalid_argument("radial_ode_solve: grid must lie in (0, inf)");

    // each grid point with a 7-point stencil for the residual derivative; the
    // step resolves both the 1/x and the e^{kx} scales
    auto step_at = [&](double x) { return 1e-2 * x / (1.0 + std::abs(k) * x); };
    std::vector<double> pts;
    for (double x : g)
        for (int j = -3; j <= 3; ++j) pts.push_back(x + step_at(x) * j);
    const Rhs rhs{lambda, k};
    RadialODEState st;
    st.lambda = lambda;
    st.k = k;
    std::vector<State> v = evaluate(rhs, x_init, init, pts, &st.overflow);

    for (std::size_t i = 0; i < g.size(); ++i) {
        const State* s = &v[7 * i + 3];
        const double x = g[i], d = step_at(x);
        if (std::isnan(s[0][0])) break;
        st.x.push_back(x);
        st.a.push_back(s[0][0]);
        st.b.push_back(s[0][1]);
        State der, f;
        for (int c = 0; c < 2; ++c)
            der[c] = (45.0 * (s[1][c] - s[-1][c]) - 9.0 * (s[2][c] - s[-2][c]) + (s[3][c] - s[-3][c])) / (60.0 * d);
        rhs(s[0], f, x);
        const double scale = std::abs(f[0]) + std::abs(f[1]) + std::abs(k) * (std::abs(s[0][0]) + std::abs(s[0][1]));
        const double res = (std::abs(der[0] - f[0]) + std::abs(der[1] - f[1])) / scale;
        st.max_residual = std::max(st.max_residual, res);

        // (1/2) x^3 (b^2 - a^2)' + x^2 ((lambda - 2) a^2 + lambda b^2)
        const double a = s[0][0], b = s[0][1];
        const double dq = 2.0 * b * der[1] - 2.0 * a * der[0];
        const double id = 0.5 * x * x * x * dq + x * x * ((lambda - 2.0) * a * a + lambda * b * b);
        const double id_scale = x * x * (std::abs(lambda - 2.0) * a * a + std::abs(lambda) * b * b) + x * x * x * std::abs(k * a * b);
        st.max_identity = std::max(st.max_identity, std::abs(id) / id_scale);
    }
    return st;
}

Admissibility radial_admissible(double lambda, double k)
{
    if (k == 0.0) throw std::invalid_argument("radial_admissible: k must be nonzero");
    const Rhs rhs{lambda, k};
    const double x_far = 30.0 / std::abs(k);
    // decaying branch at infinity: (a, b) ~ e^{-|k| x} (1, -sign k)
    State init{1e-8, k > 0 ? -1e-8 : 1e-8};

    std::vector<double> xs{x_far};
    const int per_decade = 40;
    const double x_min = 1e-5;
    for (double lx = std::log10(x_far); lx > std::log10(x_min); lx -= 1.0 / per_decade) xs.push_back(std::pow(10.0, lx));
    xs.push_back(x_min);
    bool overflow = false;
    std::vector<State> v = integrate_to(rhs, init, xs, &overflow);
    if (overflow || v.size() != xs.size()) throw std::runtime_error("radial_admissible: inward integration overflowed");

    Admissibility r;
    r.expected_exponent = -2.0 * std::abs(lambda - 1.0);

    // least squares of log(x^2 (a^2 + b^2)) against log x over [1e-4, 1e-2]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 1e-4 * (1 - 1e-12) || xs[i] > 1e-2 * (1 + 1e-12)) continue;
        double y = std::log(xs[i] * xs[i] * (v[i][0] * v[i][0] + v[i][1] * v[i][1]));
        double lx = std::log(xs[i]);
        pts.emplace_back(lx, y);
        sx += lx;
        sy += y;
        sxx += lx * lx;
        sxy += lx * y;
        ++n;
    }
    const double den = n * sxx - sx * sx;
    if (n < 10 || std::abs(den) < 1e-12) throw std::runtime_error("radial_admissible: ambiguous exponent fit");
    r.exponent = (n * sxy - sx * sy) / den;
    const double icpt = (sy - r.exponent * sx) / n;
    double rms = 0.0;
    for (auto [lx, y] : pts) rms += std::pow(y - icpt - r.exponent * lx, 2);
    r.fit_rms = std::sqrt(rms / n);

    // trapezoid in log x of x^3 (a^2 + b^2), with and without the last decade
    auto integral_down_to = [&](double xmin) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (xs[i + 1] < xmin * (1 - 1e-12)) break;
            auto fv = [&](std::size_t j) { return xs[j] * xs[j] * xs[j] * (v[j][0] * v[j][0] + v[j][1] * v[j][1]); };
            s += 0.5 * (fv(i) + fv(i + 1)) * std::log(xs[i] / xs[i + 1]);
        }
        return s;
    };
    const double i4 = integral_down_to(1e-4);
    r.integral = integral_down_to(x_min);
    r.extension_change = std::abs(r.integral - i4) / r.integral;
    r.admissible = r.exponent > -1.0;
    return r;
}

}  // namespace kw
