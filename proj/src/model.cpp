#include "kwlab/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kw {

namespace {

const cplx I{0.0, 1.0};

using CVec3 = Eigen::Vector3cd;

// Eigen's cross() conjugates complex results, so spell the bilinear product out
CVec3 clie(const CVec3& x, const CVec3& y)
{
    return -2.0 * CVec3(x(1) * y(2) - x(2) * y(1), x(2) * y(0) - x(0) * y(2), x(0) * y(1) - x(1) * y(0));
}

struct Hyp {
    double s;      // M sinh / sinh(M .)
    double ratio;  // cosh(M .) / cosh
    double f;      // connection profile
    double tcoth;  // tanh * coth(M .)
};

Hyp hyp(int m, double Th)
{
    const double M = m + 1;
    Hyp h{};
    if (m == 0) {
        h.s = 1.0;
        h.ratio = 1.0;
        h.f = 0.0;
        h.tcoth = 1.0;
        return h;
    }
    h.s = M * std::sinh(Th) / std::sinh(M * Th);
    h.ratio = std::cosh(M * Th) / std::cosh(Th);
    h.tcoth = std::tanh(Th) / std::tanh(M * Th);
    h.f = 0.5 * M * (1.0 - h.tcoth);
    return h;
}

CVec3 phi_coords(const ModelEval& e) { return e.a[0].cast<cplx>() - I * e.a[1].cast<cplx>(); }

double cnorm(const CVec3& v) { return v.norm(); }

}  // namespace

ModelSolution::ModelSolution(int m_, double ell_) : m(m_), ell(ell_)
{
    if (m_ < 0) throw std::invalid_argument("ModelSolution: m must be non-negative");
}

ThetaValue theta(cplx z, double t)
{
    double r = std::abs(z);
    double x = std::sqrt(t * t + r * r);
    if (r == 0.0) return {std::numeric_limits<double>::infinity(), x, true};
    return {std::asinh(t / r), x, false};
}

ModelEval evaluate(const ModelSolution& ms, const FieldPoint& p)
{
    if (!(p.t > 0.0)) throw std::domain_error("evaluate: t must be positive");
    const int m = ms.m;
    const double M = m + 1;
    const double t = p.t;
    const double r = std::abs(p.z);
    ModelEval e;
    for (int i = 0; i < 3; ++i) e.A[i] = e.B[i] = e.E[i] = Vec3::Zero();
    if (m == 0) {
        for (int i = 0; i < 3; ++i) e.a[i] = -Vec3::Unit(i) / (2.0 * t);
        e.alpha = -1.0 / (2.0 * t);
        e.phi = from_ccoords(phi_coords(e));
        return e;
    }
    if (r < 1e-8) throw std::domain_error("evaluate: point too close to the axis z = 0");
    ThetaValue tv = theta(p.z, t);
    const double Th = tv.Theta, x = tv.x;
    Hyp h = hyp(m, Th);

    e.alpha = -(1.0 / (2.0 * t)) * h.s * h.ratio;
    cplx u = -(1.0 / (2.0 * t)) * h.s * std::pow(p.z / r, m);
    e.a[0] = Vec3(u.real(), u.imag(), 0.0);
    e.a[1] = Vec3(-u.imag(), u.real(), 0.0);
    e.a[2] = Vec3(0.0, 0.0, e.alpha);
    e.phi = from_ccoords(phi_coords(e));

    const double z1 = p.z.real(), z2 = p.z.imag();
    e.Aphi = h.f;
    e.A[0] = Vec3(0.0, 0.0, -h.f * z2 / (r * r));
    e.A[1] = Vec3(0.0, 0.0, h.f * z1 / (r * r));

    const double cothM = 1.0 / std::tanh(M * Th);
    const double bracket_factor =
        1.0 - M * std::sinh(Th) * std::cosh(Th) / (std::sinh(M * Th) * std::cosh(M * Th));
    const double b3 = M / (2.0 * x * x) * std::tanh(Th) * cothM * bracket_factor;
    const double ec = -M / (2.0 * x * x) * cothM * bracket_factor / x;
    e.B[2] = Vec3(0.0, 0.0, b3);
    // E = ec sigma3 (z1 dz2 - z2 dz1)
    e.E[0] = Vec3(0.0, 0.0, -ec * z2);
    e.E[1] = Vec3(0.0, 0.0, ec * z1);
    return e;
}

const char* const reduced_residual_names[5] = {"phi_t", "phi_holomorphic", "E1", "E2", "B3"};

double ReducedResiduals::max() const
{
    double mx = 0.0;
    for (double v : r) mx = std::max(mx, v);
    return mx;
}

double default_step(const FieldPoint& p)
{
    const double r = std::abs(p.z);
    return 1e-4 * (r > 0.0 ? std::min(p.t, r) : p.t);
}

ReducedResiduals verify_reduced_eqs(const ModelSolution& ms, const FieldPoint& p, double h, bool drop_phi_sq)
{
    if (h <= 0.0) h = default_step(p);
    if (std::abs(p.z) < 10.0 * h && ms.m > 0)
        throw std::domain_error("verify_reduced_eqs: step too large relative to distance from the axis");
    if (!(p.t > h)) throw std::domain_error("verify_reduced_eqs: step too large relative to t");
    auto at = [&](double dt, double d1, double d2) {
        FieldPoint q = p;
        q.t += dt;
        q.z += cplx(d1, d2);
        return evaluate(ms, q);
    };
    ModelEval e0 = evaluate(ms, p);
    ModelEval tp = at(h, 0, 0), tm = at(-h, 0, 0);
    ModelEval xp = at(0, h, 0), xm = at(0, -h, 0);
    ModelEval yp = at(0, 0, h), ym = at(0, 0, -h);

    CVec3 phi = phi_coords(e0);
    CVec3 dphi_t = (phi_coords(tp) - phi_coords(tm)) / (2.0 * h);
    CVec3 dphi_1 = (phi_coords(xp) - phi_coords(xm)) / (2.0 * h) + clie(e0.A[0].cast<cplx>(), phi);
    CVec3 dphi_2 = (phi_coords(yp) - phi_coords(ym)) / (2.0 * h) + clie(e0.A[1].cast<cplx>(), phi);

    double da_t = (tp.alpha - tm.alpha) / (2.0 * h);
    double da_1 = (xp.alpha - xm.alpha) / (2.0 * h);
    double da_2 = (yp.alpha - ym.alpha) / (2.0 * h);
    double phi_sq = drop_phi_sq ? 0.0 : e0.a[0].squaredNorm() + e0.a[1].squaredNorm();

    ReducedResiduals rr;
    rr.r[0] = cnorm(dphi_t - 2.0 * e0.alpha * phi);
    rr.r[1] = cnorm(dphi_1 + I * dphi_2);
    rr.r[2] = (e0.E[0] - Vec3(0, 0, da_2)).norm();
    rr.r[3] = (e0.E[1] - Vec3(0, 0, -da_1)).norm();
    rr.r[4] = (e0.B[2] - Vec3(0, 0, da_t - phi_sq)).norm();
    return rr;
}

double unit_uniform(std::uint64_t& state)
{
    // splitmix64
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::vector<FieldPoint> sample_points(std::uint64_t seed, int n, double axis_exclusion, double t_min)
{
    std::uint64_t st = seed;
    std::vector<FieldPoint> pts;
    pts.reserve(n);
    while (static_cast<int>(pts.size()) < n) {
        double t = std::exp(std::log(t_min) + unit_uniform(st) * std::log(3.0 / t_min));
        double r = std::exp(std::log(0.05) + unit_uniform(st) * std::log(100.0));
        double ang = 2.0 * M_PI * unit_uniform(st);
        double x3 = 2.0 * M_PI * unit_uniform(st);
        if (r < axis_exclusion) continue;
        pts.push_back({t, std::polar(r, ang), x3});
    }
    return pts;
}

std::string describe(const FieldPoint& p)
{
    std::ostringstream os;
    os.precision(6);
    os << "t=" << p.t << " z=" << p.z.real() << (p.z.imag() < 0 ? "" : "+") << p.z.imag() << "i";
    return os.str();
}

std::vector<PropertyResult> verify_properties(const ModelSolution& ms, const std::vector<FieldPoint>& samples)
{
    const double M = ms.m + 1;
    auto named = [](const char* n) {
        PropertyResult r;
        r.name = n;
        return r;
    };
    PropertyResult range = named("alpha_range"), dadt = named("dalpha_dt_positive"), phib = named("phi_bound"),
                   phieq = named("phi_equality_only_m0"), grad = named("phi_in_L_plus"), zeros = named("B1_B2_E3_zero"),
                   decay = named("curvature_decay_constant"), scale = named("scaling_equivariance"),
                   cov = named("sigma3_covariantly_constant");
    double min_dadt_t2 = std::numeric_limits<double>::infinity();
    double max_phi = 0.0, min_phi = std::numeric_limits<double>::infinity();
    std::string max_phi_loc, min_phi_loc;
    auto worse = [](PropertyResult& pr, double v, const FieldPoint& p) {
        if (v > pr.worst) {
            pr.worst = v;
            pr.location = describe(p);
        }
    };
    for (const FieldPoint& p : samples) {
        ModelEval e = evaluate(ms, p);
        double a2t = 2.0 * p.t * e.alpha;
        // distance outside [-M, -1]
        double out = std::max({0.0, a2t + 1.0, -M - a2t});
        worse(range, out, p);
        if (out > 1e-12) range.pass = false;

        double h = 1e-5 * p.t;
        FieldPoint a = p, b = p;
        a.t += h;
        b.t -= h;
        double d = (evaluate(ms, a).alpha - evaluate(ms, b).alpha) / (2.0 * h);
        if (!(d > 0.0)) {
            dadt.pass = false;
            worse(dadt, -d, p);
        }
        if (d * p.t * p.t < min_dadt_t2) {
            min_dadt_t2 = d * p.t * p.t;
            dadt.location = describe(p);
        }

        double v = std::sqrt(hnorm2(e.phi)) * std::sqrt(2.0) * p.t;
        if (v > max_phi) {
            max_phi = v;
            max_phi_loc = describe(p);
        }
        if (v < min_phi) {
            min_phi = v;
            min_phi_loc = describe(p);
        }
        worse(grad, (grading(e.phi).m - e.phi.m).cwiseAbs().maxCoeff() / std::max(1e-300, std::sqrt(hnorm2(e.phi))), p);
        worse(grad, std::abs((e.phi.m * e.phi.m).trace()), p);

        double z = e.B[0].norm() + e.B[1].norm() + e.E[2].norm() + e.A[2].norm();
        worse(zeros, z, p);

        double x = std::sqrt(p.t * p.t + std::norm(p.z));
        double c = std::max({e.B[2].norm(), e.E[0].norm(), e.E[1].norm()}) * x * x * x / p.t;
        worse(decay, c, p);

        for (double lam : {2.0, 1.0 / 3.0}) {
            FieldPoint q{lam * p.t, lam * p.z, p.x3};
            ModelEval s = evaluate(ms, q);
            double num = 0.0, den = 0.0;
            for (int i = 0; i < 3; ++i) {
                num = std::max(num, (lam * s.a[i] - e.a[i]).norm());
                num = std::max(num, (lam * s.A[i] - e.A[i]).norm());
                den = std::max({den, e.a[i].norm(), e.A[i].norm()});
            }
            worse(scale, num / den, p);
        }

        // [A_i, sigma3] has no sigma3 component, and vanishes here since A is along sigma3
        for (int i = 0; i < 3; ++i) worse(cov, lie(e.A[i], Vec3(0, 0, 1)).norm(), p);
    }
    phib.worst = max_phi;
    phib.location = max_phi_loc;
    phib.pass = max_phi <= 1.0 + 1e-12;
    if (ms.m == 0) {
        phieq.worst = std::max(std::abs(1.0 - max_phi), std::abs(1.0 - min_phi));
        phieq.location = min_phi_loc;
        phieq.pass = phieq.worst <= 1e-10;
    } else {
        phieq.worst = max_phi;
        phieq.location = max_phi_loc;
        phieq.pass = max_phi < 1.0 - 1e-10;
    }
    dadt.worst = dadt.pass ? min_dadt_t2 : dadt.worst;
    grad.pass = grad.worst <= 1e-12;
    zeros.pass = zeros.worst == 0.0;
    decay.pass = std::isfinite(decay.worst);
    scale.pass = scale.worst <= 1e-12;
    cov.pass = cov.worst <= 1e-14;
    return {range, dadt, phib, phieq, grad, zeros, decay, scale, cov};
}

Case4Result case4_solution(const ModelSolution& ms, int p_degree, const FieldPoint& p, double h)
{
    if (ms.m < 1) throw std::invalid_argument("case4_solution: requires m >= 1");
    if (p_degree < ms.m)
        throw std::invalid_argument("case4_solution: degree below m gives a pole on the axis");
    if (std::abs(p.z) < 10.0 * h) throw std::domain_error("case4_solution: point too close to the axis");

    auto sminus = [&](const FieldPoint& q) {
        ModelEval e = evaluate(ms, q);
        LieElem s = star(e.phi) * (std::pow(q.z, p_degree) / hnorm2(e.phi));
        return ccoords(s).eval();
    };
    auto at = [&](double dt, double d1, double d2) {
        FieldPoint q = p;
        q.t += dt;
        q.z += cplx(d1, d2);
        return q;
    };
    ModelEval e0 = evaluate(ms, p);
    CVec3 s0 = sminus(p);
    CVec3 dt = (sminus(at(h, 0, 0)) - sminus(at(-h, 0, 0))) / (2.0 * h);
    CVec3 d1 = (sminus(at(0, h, 0)) - sminus(at(0, -h, 0))) / (2.0 * h) + clie(e0.A[0].cast<cplx>(), s0);
    CVec3 d2 = (sminus(at(0, 0, h)) - sminus(at(0, 0, -h))) / (2.0 * h) + clie(e0.A[1].cast<cplx>(), s0);

    Case4Result r;
    r.res_t = (dt + 2.0 * e0.alpha * s0).norm();
    r.res_holo = (d1 + I * d2).norm();
    r.pairing_err = std::abs(inner(e0.phi, from_ccoords(s0)) - std::pow(p.z, p_degree));

    // least squares slope of log|s| against log x along the ray through p
    const int n = 9;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < n; ++k) {
        double lam = std::exp(std::log(0.5) + k * std::log(8.0) / (n - 1));
        FieldPoint q{lam * p.t, lam * p.z, p.x3};
        double lx = std::log(lam * std::sqrt(p.t * p.t + std::norm(p.z)));
        double ly = 0.5 * std::log(hnorm2(from_ccoords(sminus(q))));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    r.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return r;
}

}  // namespace kw
