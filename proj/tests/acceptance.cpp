// One line per acceptance criterion. Exit status is nonzero iff some criterion fails;
// flagged lines are known discrepancies of the printed source formulas and do not fail.

#include "kwlab/clifford.hpp"
#include "kwlab/flow.hpp"
#include "kwlab/model.hpp"
#include "kwlab/operator.hpp"
#include "kwlab/spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace kw;

namespace {

enum class Verdict { Pass, Fail, Flagged };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

Outcome verdict(bool ok, const std::ostringstream& os) { return {ok ? Verdict::Pass : Verdict::Fail, os.str()}; }

Outcome c1_clifford()
{
    long bad = 0;
    std::size_t n = 0;
    for (const auto& r : clifford_relations(load_clifford())) {
        bad += r.mismatches;
        ++n;
    }
    std::ostringstream os;
    os << n << " integer relation checks, " << bad << " mismatching entries";
    return verdict(bad == 0, os);
}

Outcome c2_pole()
{
    const auto s = symmetric_spectrum(nahm_pole_endo(1.0));
    const double want[4] = {-2, -1, 1, 2};
    double err = s.size() == 4 ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < s.size() && i < 4; ++i) err = std::max(err, std::abs(s[i].value - want[i]));
    std::ostringstream os;
    os << s.size() << " distinct eigenvalues, max deviation from {-2,-1,1,2} " << err;
    return verdict(err <= 1e-10, os);
}

Outcome c3_endos()
{
    const DerivedEndos d = derived_endos();
    const auto q = antisymmetric_spectrum(d.Q);
    const double want[4] = {-3, -1, 1, 3};
    double err = q.size() == 4 ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < q.size() && i < 4; ++i) err = std::max(err, std::abs(q[i].value - want[i]));
    const double l2 = (d.L * d.L - Endo24::Identity()).cwiseAbs().maxCoeff();
    const double y2 = (d.Y * d.Y + Endo24::Identity()).cwiseAbs().maxCoeff();
    std::ostringstream os;
    os << "Q spectrum deviation " << err << ", |L^2 - 1| = " << l2 << ", |Y^2 + 1| = " << y2;
    return verdict(err <= 1e-10 && l2 == 0.0 && y2 == 0.0, os);
}

Outcome c4_model_residuals()
{
    const auto pts = sample_points(2024, 200, 0.2, 0.35);
    bool ok = true;
    std::ostringstream os;
    for (int m = 0; m < 4; ++m) {
        const ModelSolution ms(m);
        double worst = 0.0, ratio = 0.0;
        for (const auto& p : pts) {
            const auto a = verify_reduced_eqs(ms, p, 1e-4), b = verify_reduced_eqs(ms, p, 5e-5);
            if (a.max() > worst) {
                worst = a.max();
                ratio = a.max() / b.max();
            }
        }
        ok = ok && worst < 1e-6 && std::abs(ratio - 4.0) <= 0.5;
        os << (m ? "; " : "") << "m=" << m << " max " << worst << " ratio " << ratio;
    }
    return verdict(ok, os);
}

Outcome c5_model_properties()
{
    const auto pts = sample_points(7, 500);
    bool ok = true;
    std::ostringstream os;
    for (int m = 0; m < 4; ++m) {
        int failed = 0;
        double phi = 0.0, scale = 0.0;
        for (const auto& pr : verify_properties(ModelSolution(m), pts)) {
            if (!pr.pass) ++failed, os << "[" << pr.name << " failed at " << pr.location << "] ";
            if (pr.name == "phi_bound") phi = pr.worst;
            if (pr.name == "scaling_equivariance") scale = pr.worst;
        }
        ok = ok && failed == 0;
        os << (m ? "; " : "") << "m=" << m << " max |phi| sqrt(2) t = " << phi << " scaling " << scale;
    }
    return verdict(ok, os);
}

Outcome c6_depictions()
{
    const char* names[] = {"trivial", "nahm", "model:1", "model:2", "model:3", "torus"};
    std::uint64_t st = 66;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto bg = parse_background(names[i % 6], i + 1);
        const double r = 0.2 + 2.8 * unit_uniform(st), ang = 2.0 * M_PI * unit_uniform(st);
        const Point4 p{0.3 + 2.7 * unit_uniform(st), r * std::cos(ang), r * std::sin(ang), 2.0 * M_PI * unit_uniform(st)};
        const auto psi = trig_section(3000 + i, 2, true);
        const Spinor8 c = apply_D(*bg, *psi, p, Depiction::Clifford);
        worst = std::max({worst, (c - apply_D(*bg, *psi, p, Depiction::Components)).norm() / c.norm(),
                          (c - apply_D(*bg, *psi, p, Depiction::Matrix)).norm() / c.norm()});
    }
    std::ostringstream os;
    os << "1000 evaluations over six backgrounds, max relative disagreement " << worst;
    return verdict(worst <= 1e-9, os);
}

Outcome c7_bochner()
{
    const Point4 p{0.9, 0.4, -0.3, 0.2};
    bool ok = true;
    double printed_mismatch = 0.0;
    std::ostringstream os;
    for (const char* name : {"nahm", "model:1"}) {
        const auto bg = parse_background(name);
        const auto psi = trig_section(21, 1, true);
        const auto a = bochner_check(bg, psi, p, 1e-2), b = bochner_check(bg, psi, p, 5e-3);
        const double ratio = a.residual_closed / b.residual_closed;
        double mis = 0.0;
        for (const auto& row : b.block_mismatch)
            for (double v : row) mis = std::max(mis, v);
        printed_mismatch = std::max(printed_mismatch, mis);
        ok = ok && std::abs(ratio - 4.0) <= 0.5 && b.zero_rows_cols == 0.0 && b.zero_rows_cols_closed < 1e-10;
        os << name << ": remainder residual " << b.residual_closed << " (h ratio " << ratio << "), rows/cols b3,ct "
           << b.zero_rows_cols << " printed, " << b.zero_rows_cols_closed << " closed, printed-table block mismatch " << mis << "; ";
    }
    if (!ok) return {Verdict::Fail, os.str()};
    if (printed_mismatch > 1e-9) {
        os << "the printed block table is off by a factor 2 in its commutator blocks on the m=1 background";
        return {Verdict::Flagged, os.str()};
    }
    return {Verdict::Pass, os.str()};
}

Outcome c8_intertwine()
{
    const char* names[] = {"trivial", "nahm", "model:1", "model:2", "torus"};
    std::uint64_t st = 88;
    double y = 0.0, sid = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto bg = parse_background(names[i % 5], i + 1);
        const double r = 0.2 + 2.8 * unit_uniform(st), ang = 2.0 * M_PI * unit_uniform(st);
        const Point4 p{0.3 + 2.7 * unit_uniform(st), r * std::cos(ang), r * std::sin(ang), 2.0 * M_PI * unit_uniform(st)};
        const auto psi = gauss_section(4000 + i, p, 0.7);
        y = std::max(y, y_intertwine(bg, psi, p) / std::max(1.0, apply_D(*bg, *psi, p, Depiction::Clifford).norm()));
        sid = std::max(sid, spatial_identification(*trivial_background(), *trig_section(5000 + i, 2, false), p));
    }
    std::ostringstream os;
    os << "|D Y + Y D^dagger| relative " << y << ", spatial identification residual " << sid;
    return verdict(y <= 1e-8 && sid < 1e-9, os);
}

Outcome c9_hemisphere()
{
    const auto h = hemisphere_eig0(2000);
    std::ostringstream os;
    os << "eigenvalue " << h.eig0 << ", distance to cos(theta) " << h.cos_distance;
    return verdict(std::abs(h.eig0 - 2.0) <= 1e-3 && h.cos_distance < 1e-2, os);
}

Outcome c10_hardy()
{
    const auto H = hardy_suite();
    std::ostringstream os;
    os << "sup 1D " << H.sup_half_line << " (<= 4), near-extremal sup " << H.sup_near_extremal << " (>= 3.5), half-space "
       << H.sup_three_d << " (<= 4/9)";
    return verdict(H.sup_half_line <= 4.0 && H.sup_near_extremal >= 3.5 && H.sup_three_d <= 4.0 / 9.0, os);
}

Outcome c11_exclusion()
{
    SLProblem p;
    const double mu0 = rayleigh_min(p).mu;
    bool ok = std::abs(mu0 - 2.0) <= 5e-3;
    std::ostringstream os;
    os << "zero potential mu " << mu0;
    for (auto c : {ExclusionCase::B3ct, ExclusionCase::Case2, ExclusionCase::Case3}) {
        const auto r = exclusion_report(c, 1);
        ok = ok && r.covers_0_to_3half;
        if (c == ExclusionCase::Case3) ok = ok && r.mu_min >= 6.0 - 5e-3;
        os << "; " << r.name << " mu " << r.mu_min << " excludes [" << r.lo << ", " << r.hi << "]";
    }
    return verdict(ok, os);
}

Outcome c12_radial()
{
    // printed forms at k: (1/x) e^{-kx} (1, 1) and (1/x) e^{kx} (1, -1); the system as
    // written carries the opposite sign of k, so it is integrated at -k
    const double k = 1.0;
    std::vector<double> g;
    for (int i = 0; i <= 40; ++i) g.push_back(0.1 * std::pow(100.0, i / 40.0));
    double err = 0.0;
    for (int branch : {1, -1}) {
        const double e0 = std::exp(-branch * k);
        const auto s = radial_ode_solve(1.0, -k, 1.0, {e0, branch * e0}, g);
        if (s.x.size() != g.size()) err = INFINITY;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double ex = std::exp(-branch * k * s.x[i]) / s.x[i];
            err = std::max({err, std::abs(s.a[i] - ex) / ex, std::abs(s.b[i] - branch * ex) / ex});
        }
    }
    const bool a1 = radial_admissible(1.0, 1.0).admissible, a0 = radial_admissible(0.0, 1.0).admissible,
               a2 = radial_admissible(2.0, 1.0).admissible;
    std::ostringstream os;
    os << "closed forms max relative error " << err << " on [0.1, 10]; admissible at lambda 0/1/2: " << a0 << "/" << a1
       << "/" << a2;
    return verdict(err <= 1e-8 && a1 && !a0 && !a2, os);
}

Outcome c13_flow()
{
    const auto F = random_field(16, 13, 1e-100);
    const auto tr = run_flow(F, FlowConfig{0.05 * F.h(), 2000});
    std::ostringstream os;
    os << "2000 steps: monotone " << tr.monotone << " (worst excess " << tr.monotone_worst << "), energy identity "
       << tr.energy_identity_max << ", two rate forms " << tr.forms_max;
    return verdict(tr.monotone && tr.energy_identity_max < 1e-3 && tr.forms_max < 1e-3, os);
}

Outcome c14_gradient()
{
    const auto F = random_field(16, 14, 0.3);
    double worst = 0.0, order_lo = INFINITY, order_hi = 0.0;
    for (int d = 0; d < 10; ++d) {
        const auto gc = gradient_check(F, random_field(16, 1400 + d, 1.0), {0.2, 0.1, 0.05, 1e-4});
        worst = std::max(worst, gc.rel_err.back());
        order_lo = std::min(order_lo, gc.observed_order);
        order_hi = std::max(order_hi, gc.observed_order);
    }
    std::ostringstream os;
    os << "10 directions, max relative error " << worst << " at s = 1e-4, observed order in [" << order_lo << ", "
       << order_hi << "]";
    return verdict(worst < 1e-6 && std::abs(order_lo - 2.0) < 0.2 && std::abs(order_hi - 2.0) < 0.2, os);
}

Outcome c15_linear_decay()
{
    const auto d = linearized_decay(seeded_modes(1, 15, "plus-unit"), 6.0, 0.25);
    double err = 0.0;
    for (std::size_t i = 0; i < d.t.size(); ++i)
        err = std::max(err, std::abs(d.f_plus[i] - d.f_plus[0] * std::exp(-d.t[i])) / d.f_plus[0]);

    double lambda1 = INFINITY;
    for (const auto& m : lattice_L_spectrum(2))
        for (const auto& e : m.eig)
            if (std::abs(e.value) > 1e-9) lambda1 = std::min(lambda1, std::abs(e.value));
    const auto mx = linearized_decay(seeded_modes(2, 15, "mixed"), 6.0, 0.25);
    double rate = INFINITY;
    for (std::size_t i = 1; i < mx.t.size(); ++i)
        rate = std::min(rate, std::log(mx.f_plus[i - 1] / mx.f_plus[i]) / (mx.t[i] - mx.t[i - 1]));
    std::ostringstream os;
    os << "single mode deviation from e^{-t} " << err << "; mixed data slowest rate " << rate << " vs lambda_1 = "
       << lambda1;
    return verdict(err <= 1e-8 && rate >= lambda1 - 1e-9 && std::abs(lambda1 - 1.0) < 1e-12, os);
}

Outcome c16_kuranishi()
{
    std::array<double, 18> bc;
    std::uint64_t st = 16;
    for (auto& v : bc) v = 0.6 * unit_uniform(st) - 0.3;
    const auto phi = constant_phi(bc, 3);
    const double lip = kuranishi_contraction(phi, 16, 0.1);
    const auto sw = kuranishi_sweep(phi, 6);
    std::ostringstream os;
    os << "contraction ratio " << lip << "; |w| over the sweep:";
    for (std::size_t i = 0; i < sw.w_norm.size(); ++i) os << " " << sw.w_norm[i];
    if (sw.slope_defined) {
        os << "; slope " << sw.slope;
        return verdict(lip < 1.0 && std::abs(sw.slope - 2.0) <= 0.1, os);
    }
    os << "; slope undefined: w(phi) vanishes identically for constant phi, every point is at the rounding floor";
    return {Verdict::Fail, os.str()};
}

}  // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"clifford relations exact", c1_clifford},
        {"pole endomorphism spectrum", c2_pole},
        {"Q spectrum, L^2 = 1, Y^2 = -1", c3_endos},
        {"model residuals and Richardson ratio", c4_model_residuals},
        {"model property suite", c5_model_properties},
        {"three depictions of D agree", c6_depictions},
        {"Weitzenbock remainder", c7_bochner},
        {"Y intertwining and spatial identification", c8_intertwine},
        {"hemisphere ground state", c9_hemisphere},
        {"Hardy ratios", c10_hardy},
        {"exclusion intervals", c11_exclusion},
        {"radial ODE closed forms and admissibility", c12_radial},
        {"flow monotonicity and energy identity", c13_flow},
        {"gradient check", c14_gradient},
        {"linearized decay", c15_linear_decay},
        {"Kuranishi contraction and quadratic growth", c16_kuranishi},
    };
    const double budget[] = {1, 1, 1, 30, 30, 30, 60, 30, 10, 10, 60, 10, 300, 30, 30, 60};

    int failures = 0, n = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {Verdict::Fail, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > budget[n] && o.verdict != Verdict::Fail) {
            o.verdict = Verdict::Fail;
            o.detail += "; over the runtime budget";
        }
        const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "FLAGGED";
        if (o.verdict == Verdict::Fail) ++failures;
        std::printf("[%-7s] %2d %s (%.2f s, budget %.0f s): %s\n", tag, n + 1, name, secs, budget[n], o.detail.c_str());
        std::fflush(stdout);
        ++n;
    }
    std::printf("%d of %d criteria failed\n", failures, n);
    return failures == 0 ? 0 : 1;
}
