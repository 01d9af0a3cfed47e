#include "kwlab/report.hpp"

#include "kwlab/clifford.hpp"
#include "kwlab/flow.hpp"
#include "kwlab/model.hpp"
#include "kwlab/operator.hpp"
#include "kwlab/spectral.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace kw {

namespace {

std::string fmt_point(const Point4& p)
{
    std::ostringstream os;
    os.precision(6);
    os << "(t,x1,x2,x3)=(" << p[0] << "," << p[1] << "," << p[2] << "," << p[3] << ")";
    return os.str();
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// running maximum with the place it was attained
struct Worst {
    double value = 0.0;
    std::string where;
    void see(double v, const std::string& w)
    {
        if (!(v <= value)) {
            value = v;
            where = w;
        }
    }
};

double uniform(std::uint64_t& st, double lo, double hi) { return lo + (hi - lo) * unit_uniform(st); }

// point off the axis and away from t = 0, valid for every background
Point4 random_point(std::uint64_t& st)
{
    const double t = uniform(st, 0.3, 3.0), r = uniform(st, 0.2, 3.0), ang = uniform(st, 0.0, 2.0 * M_PI);
    return {t, r * std::cos(ang), r * std::sin(ang), uniform(st, 0.0, 2.0 * M_PI)};
}

// smooth, x3-independent and invariant under (t, z) -> s (t, z)
SectionPtr homogeneous_section(std::uint64_t seed)
{
    std::uint64_t st = seed;
    std::array<Spinor8, 7> c;
    for (auto& v : c)
        for (int i = 0; i < 24; ++i) v[i] = uniform(st, -1.0, 1.0);
    return fn_section([c](const Point4& p) {
        const double x = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        const double u0 = p[0] / x, u1 = p[1] / x, u2 = p[2] / x;
        return Spinor8(c[0] + u0 * c[1] + u1 * c[2] + u2 * c[3] + u0 * u1 * c[4] + u1 * u2 * c[5] + u0 * u0 * c[6]);
    }, 1e-4, 4);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

SuiteReport suite_algebra(const SuiteOptions& opt)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "algebra";
    r.seed = opt.seed;
    r.expect_le("product_table", "sigma product table sigma_i^2 = -1, sigma1 sigma2 = -sigma3", product_table_defect(), 0.0);

    const cplx I(0.0, 1.0);
    const LieElem phi = sigma(1) - I * sigma(2);
    r.expect_le("phi_square_trace_free", "phi = a1 - i a2 squares to a trace-free element",
                std::abs(inner(phi, phi)), 1e-15 * ts);
    r.expect_le("grading_on_phi", "[i/2 sigma3, phi] = phi", (grading(phi) - phi).m.norm(), 1e-15 * ts);

    std::uint64_t st = opt.seed;
    Worst orth, jac, lie_match, star_swap, lplus_abelian, recon;
    for (int n = 0; n < 200; ++n) {
        Vec3 x, y, w;
        for (int i = 0; i < 3; ++i) {
            x[i] = uniform(st, -1, 1);
            y[i] = uniform(st, -1, 1);
            w[i] = uniform(st, -1, 1);
        }
        const LieElem X = from_coords(x), Y = from_coords(y), W = from_coords(w);
        const std::string where = "sample " + std::to_string(n);
        orth.see(std::abs(inner(X, Y) - x.dot(y)), where);
        jac.see((bracket(X, bracket(Y, W)) + bracket(Y, bracket(W, X)) + bracket(W, bracket(X, Y))).m.norm(), where);
        lie_match.see((coords(bracket(X, Y)) - lie(x, y)).norm() + (ad(x) * y - lie(x, y)).norm(), where);
        const LieElem Z = X + I * Y;
        const LDecomp d = l_decompose(Z);
        recon.see((d.plus + d.zero * sigma(3) + d.minus - Z).m.norm(), where);
        star_swap.see((l_decompose(star(d.plus)).plus).m.norm() + (star(star(Z)) - Z).m.norm(), where);
        const LDecomp d2 = l_decompose(from_coords(y) + I * from_coords(w));
        lplus_abelian.see(bracket(d.plus, d2.plus).m.norm(), where);
    }
    r.expect_le("coordinates_orthonormal", "-1/2 tr pairing in the sigma basis", orth.value, 1e-14 * ts, orth.where);
    r.expect_le("jacobi", "plumbing", jac.value, 1e-13 * ts, jac.where);
    r.expect_le("bracket_coordinates", "plumbing", lie_match.value, 1e-14 * ts, lie_match.where);
    r.expect_le("l_decompose_reconstructs", "eigenspace split of [i/2 sigma3, .]", recon.value, 1e-14 * ts, recon.where);
    r.expect_le("conjugation_swaps_L", "hermitian conjugation exchanges L+ and L-", star_swap.value, 1e-14 * ts,
                star_swap.where);
    r.expect_le("L_plus_abelian", "commutator of two elements of L+ vanishes", lplus_abelian.value, 1e-14 * ts,
                lplus_abelian.where);
    return r;
}

SuiteReport suite_clifford(const SuiteOptions& opt)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "clifford";
    r.seed = opt.seed;
    long total = 0;
    for (const auto& rc : clifford_relations(load_clifford())) {
        total += rc.mismatches;
        r.expect(rc.name, "clifford relations of the 8x8 generators", rc.mismatches == 0,
                 static_cast<double>(rc.mismatches), 0.0);
    }
    r.extra["relation_mismatches"] = total;

    const DerivedEndos d = derived_endos();
    auto spectrum_defect = [](const std::vector<EigenCount>& got, const std::vector<double>& want) {
        if (got.size() != want.size()) return 1.0;
        double e = 0.0;
        for (std::size_t i = 0; i < want.size(); ++i) e = std::max(e, std::abs(got[i].value - want[i]));
        return e;
    };
    auto multiplicities = [](const std::vector<EigenCount>& s) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& e : s) j.push_back({e.value, e.multiplicity});
        return j;
    };
    const auto q = antisymmetric_spectrum(d.Q);
    r.expect_le("Q_spectrum", "eigenvalues of Q are +-3i and +-i", spectrum_defect(q, {-3, -1, 1, 3}), 1e-10 * ts);
    r.extra["Q_spectrum_imag"] = multiplicities(q);
    r.expect_le("L_squared", "L has square 1", (d.L * d.L - Endo24::Identity()).cwiseAbs().maxCoeff(), 0.0);
    r.expect_le("Y_squared", "Y squares to -1", (d.Y * d.Y + Endo24::Identity()).cwiseAbs().maxCoeff(), 0.0);

    // (b, bt, c, ct) -> (-c, ct, b, -bt)
    Mat8i ymap = Mat8i::Zero();
    for (int i = 0; i < 3; ++i) {
        ymap(B1 + i, C1 + i) = -1;
        ymap(C1 + i, B1 + i) = 1;
    }
    ymap(BT, CT) = 1;
    ymap(CT, BT) = -1;
    r.expect_le("Y_componentwise", "Y as the componentwise swap of the b and c blocks",
                static_cast<double>((d.Y8 - ymap).cwiseAbs().sum()), 0.0);
    r.expect_le("U_on_axis", "U(1,0,0) is the identity", (U_endo(1, 0, 0) - Mat8::Identity()).cwiseAbs().maxCoeff(), 0.0);

    for (double t : {1.0, 2.0}) {
        const auto n = nahm_pole_endo(t);
        const auto s = symmetric_spectrum(n);
        int mult = 0;
        for (const auto& e : s) mult += e.multiplicity;
        r.expect_le("nahm_pole_spectrum_t" + fmt(t), "pole endomorphism eigenvalues {-2,-1,1,2}/t",
                    spectrum_defect(s, {-2 / t, -1 / t, 1 / t, 2 / t}) + (mult == 24 ? 0.0 : 1.0), 1e-10 * ts,
                    "t=" + fmt(t));
        r.extra["nahm_pole_t" + fmt(t)] = multiplicities(s);
    }
    return r;
}

SuiteReport suite_model(const SuiteOptions& opt)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "model";
    r.seed = opt.seed;

    const auto th = theta(cplx(1.0, 0.0), 1.0);
    r.expect_le("theta_unit_modulus", "sinh Theta = t/|z| at t = |z| = 1", std::abs(th.Theta - std::asinh(1.0)), 1e-15 * ts);
    r.expect_le("theta_radius", "plumbing", std::abs(theta(cplx(0.0, 4.0), 3.0).x - 5.0), 1e-14 * ts);

    std::vector<int> ms;
    if (opt.model_m >= 0)
        ms.push_back(opt.model_m);
    else
        ms = {0, 1, 2, 3};
    // truncation error of the differences is about 7e-9 t^-4 at h = 1e-4, more near the
    // axis for larger m, and crosses 1e-6 around t = 0.3; the bound is applied from t = 0.35
    // and the maximum down to t = 0.2 is reported alongside
    const auto residual_pts = sample_points(opt.seed, 200, 0.2, 0.35);
    const auto boundary_pts = sample_points(opt.seed + 1, 200, 0.05, 0.2);
    const auto prop_pts = sample_points(opt.seed ^ 0x9e3779b97f4a7c15ULL, opt.samples);

    for (int m : ms) {
        const ModelSolution sol(m);
        const std::string tag = "m" + std::to_string(m) + ".";
        Worst res, res_half;
        std::size_t worst_i = 0;
        double worst_h = 0.0, worst_h2 = 0.0;
        for (std::size_t i = 0; i < residual_pts.size(); ++i) {
            const auto a = verify_reduced_eqs(sol, residual_pts[i], 1e-4).max();
            const auto b = verify_reduced_eqs(sol, residual_pts[i], 5e-5).max();
            if (!(a <= res.value)) worst_i = i, worst_h = a, worst_h2 = b;
            res.see(a, describe(residual_pts[i]));
        }
        r.expect_le(tag + "reduced_residual", "reduced model equations", res.value, 1e-6 * ts, res.where);
        Worst wide;
        for (const auto& p : boundary_pts) wide.see(verify_reduced_eqs(sol, p, 1e-4).max(), describe(p));
        r.extra[tag + "reduced_residual_to_t_0.2"] = {{"max", wide.value}, {"at", wide.where}};
        // halving h divides an O(h^2) truncation error by 4; below 1e-11 the residual is rounding
        if (worst_h > 1e-11) {
            const double ratio = worst_h / worst_h2;
            r.expect(tag + "richardson_ratio", "reduced model equations, second-order differences",
                     std::abs(ratio - 4.0) <= 0.5 * ts, ratio, 0.5 * ts, describe(residual_pts[worst_i]));
        } else {
            r.expect_le(tag + "richardson_ratio", "fields exact under differencing", worst_h, 1e-11 * ts, res.where);
        }
        // without |phi|^2 the B3 equation must fail somewhere; |phi| is tiny near the axis for large m
        Worst neg;
        for (const auto& p : residual_pts) neg.see(verify_reduced_eqs(sol, p, 1e-4, true).r[4], describe(p));
        r.expect(tag + "negative_control", "plumbing", neg.value > 1e-3, neg.value, 1e-3, neg.where);

        nlohmann::ordered_json props = nlohmann::ordered_json::object();
        // thresholds applied inside verify_properties; lower-bound properties report 0
        const std::map<std::string, double> limit{{"alpha_range", 1e-12},
                                                  {"phi_bound", 1.0 + 1e-12},
                                                  {"phi_equality_only_m0", m == 0 ? 1e-10 : 1.0 - 1e-10},
                                                  {"phi_in_L_plus", 1e-12},
                                                  {"scaling_equivariance", 1e-12},
                                                  {"sigma3_covariantly_constant", 1e-14}};
        for (const auto& p : verify_properties(sol, prop_pts)) {
            const auto it = limit.find(p.name);
            r.expect(tag + p.name, "model solution properties", p.pass, p.worst, it == limit.end() ? 0.0 : it->second,
                     p.location);
            props[p.name] = {{"pass", p.pass}, {"worst_violation", p.worst}, {"location", p.location}};
        }
        r.extra["m" + std::to_string(m)] = props;

        if (m >= 1) {
            const FieldPoint fp{1.0, {0.7, 0.2}, 0.0};
            const auto c = case4_solution(sol, m, fp, 1e-4);
            r.expect_le(tag + "case4_residual", "section built from a degree-p polynomial",
                        std::max(c.res_t, c.res_holo), 1e-6 * ts, describe(fp));
            r.expect_le(tag + "case4_exponent", "|s| grows as x^(p+1)", std::abs(c.exponent - (m + 1.0)), 1e-3 * ts,
                        describe(fp));
        }
    }
    return r;
}

SuiteReport suite_operator(const SuiteOptions& opt)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "operator";
    r.seed = opt.seed;
    std::vector<std::string> bgs;
    if (!opt.background.empty())
        bgs.push_back(opt.background);
    else
        bgs = {"trivial", "nahm", "model:1", "model:2", "torus"};

    for (const auto& name : bgs) {
        const BackgroundPtr bg = parse_background(name, opt.seed);
        std::uint64_t st = opt.seed * 0x2545F4914F6CDD1DULL + 17;
        Worst dep, dd, yi, sid;
        const int n = std::max(1, opt.points);
        for (int i = 0; i < n; ++i) {
            const Point4 p = random_point(st);
            const auto psi = trig_section(opt.seed + 1000 + i, 1, true);
            const Spinor8 a = apply_D(*bg, *psi, p, Depiction::Components);
            const Spinor8 b = apply_D(*bg, *psi, p, Depiction::Matrix);
            const Spinor8 c = apply_D(*bg, *psi, p, Depiction::Clifford);
            const double scale = std::max(c.norm(), 1e-300);
            dep.see(std::max((a - c).norm(), (b - c).norm()) / scale, fmt_point(p));
            const Spinor8 sum = c + apply_D_dagger(*bg, *psi, p) - 2.0 * apply_spatial(*bg, *psi, p);
            dd.see(sum.norm() / scale, fmt_point(p));
            if (i < 50) {
                yi.see(y_intertwine(bg, psi, p) / scale, fmt_point(p));
                if (name == "trivial" || name == "torus") sid.see(spatial_identification(*bg, *psi, p), fmt_point(p));
            }
        }
        const std::string tag = name + ".";
        r.expect_le(tag + "depictions_agree", "component, matrix and Clifford forms of D", dep.value, 1e-9 * ts, dep.where);
        r.expect_le(tag + "time_parts_cancel", "D + D^dagger has no time derivative", dd.value, 1e-12 * ts, dd.where);
        r.expect_le(tag + "Y_intertwines", "D Y = -Y D^dagger", yi.value, 1e-8 * ts, yi.where);
        if (name == "trivial" || name == "torus")
            r.expect_le(tag + "spatial_identification", "spatial operator as complexified d, d^dagger",
                        sid.value, 1e-9 * ts, sid.where);

        // integration by parts against concentrated sections well inside the domain
        const Point4 centre{2.0, 1.5, 1.0, 0.3};
        // the grid sum converges spectrally once the spacing (2.4 / 23) is well under w
        const double w = 0.25;
        double scale = 0.0;
        const double dual = duality_defect(*bg, *gauss_section(opt.seed + 7, centre, w), *gauss_section(opt.seed + 8, centre, w),
                                           centre, 1.2, 24, &scale);
        r.expect_le(tag + "adjoint_duality", "D^dagger is the formal adjoint", dual / scale, 1e-6 * ts, fmt_point(centre));
    }

    // Weitzenbock-type identity on the periodic box: |D psi|^2 = |dt psi|^2 + |L psi|^2 for t-independent data
    {
        const auto bg = torus_background(opt.seed);
        const auto I = periodic_integrals(*bg, *trig_section(opt.seed + 11, 1, true), *trig_section(opt.seed + 12, 1, true), 10);
        r.expect_le("torus.energy_split", "cross term of D^dagger D integrates to zero",
                    rel(I.D_sq, I.dt_sq + I.L_sq), 1e-10 * ts);
        r.expect_le("torus.periodic_duality", "D^dagger is the formal adjoint", I.duality / std::abs(I.scale), 1e-10 * ts);
    }

    // remainder of D^dagger D against nested differences
    {
        const Point4 p{0.9, 0.4, -0.3, 0.2};
        for (const char* name : {"nahm", "model:1"}) {
            const auto bg = parse_background(name, opt.seed);
            const auto psi = trig_section(opt.seed + 21, 1, true);
            const auto a = bochner_check(bg, psi, p, 1e-2), b = bochner_check(bg, psi, p, 5e-3);
            const double order = std::log2(a.residual_closed / b.residual_closed);
            const std::string tag = std::string(name) + ".";
            r.expect(tag + "remainder_second_order", "zeroth-order remainder of D^dagger D", std::abs(order - 2.0) <= 0.25 * ts,
                     order, 0.25 * ts, fmt_point(p));
            r.expect_le(tag + "remainder_residual", "zeroth-order remainder of D^dagger D",
                        b.residual_closed / b.remainder_norm, 1e-4 * ts, fmt_point(p));
            r.expect_le(tag + "printed_table_zero_rows", "remainder ignores b3 and ct", b.zero_rows_cols, 0.0, fmt_point(p));
            r.expect_le(tag + "closed_form_zero_rows", "remainder ignores b3 and ct", b.zero_rows_cols_closed,
                        1e-10 * ts, fmt_point(p));
            double mis = 0.0;
            for (const auto& row : b.block_mismatch)
                for (double v : row) mis = std::max(mis, v);
            if (mis <= 1e-9 * ts)
                r.expect_le(tag + "printed_table", "printed block table of the remainder", mis, 1e-9 * ts, fmt_point(p));
            else
                r.flag(tag + "printed_table", "printed block table of the remainder; differs from the closed form",
                       mis, 1e-9 * ts, fmt_point(p));
            const Endo24 X = remainder_closed(background_derivs(*bg, p));
            const double blind = std::max({X.middleCols<3>(3 * B3).cwiseAbs().maxCoeff(), X.middleCols<3>(3 * CT).cwiseAbs().maxCoeff(),
                                           X.middleRows<3>(3 * B3).cwiseAbs().maxCoeff(), X.middleRows<3>(3 * CT).cwiseAbs().maxCoeff()});
            // exact on-shell; the differenced background leaves eps / h rounding
            r.expect_le(tag + "remainder_blind_to_b3_ct", "remainder ignores b3 and ct", blind,
                        1e-10 * ts * (1.0 + X.cwiseAbs().maxCoeff()), fmt_point(p));
        }
    }

    // hemisphere operator on the m = 1 background
    {
        const auto bg = model_background(1);
        std::uint64_t st = opt.seed + 31;
        Worst scale_inv, q_comm, xi_cov;
        const Endo24 Q = derived_endos().Q;
        for (int i = 0; i < 20; ++i) {
            const Point4 p = random_point(st);
            const auto xi = homogeneous_section(opt.seed + 40 + i);
            const Point4 p2{2 * p[0], 2 * p[1], 2 * p[2], p[3]};
            const Spinor8 o = omega_apply(bg, xi, p);
            const double s = std::max(o.norm(), 1e-300);
            scale_inv.see((omega_apply(bg, xi, p2) - o).norm() / s, fmt_point(p));
            q_comm.see((Q * o - omega_apply(bg, mapped_section(Q, xi), p)).norm() / s, fmt_point(p));

            const double lam = 2.0;
            const auto psi = gauss_section(opt.seed + 60 + i, Point4{p[0], p[1], p[2], p[3]}, 1.0);
            const auto pulled = fn_section([psi, lam](const Point4& q) {
                return psi->value(Point4{q[0] / lam, q[1] / lam, q[2] / lam, q[3] / lam});
            }, 1e-4, 4);
            const Point4 pl{lam * p[0], lam * p[1], lam * p[2], lam * p[3]};
            const Spinor8 lhs = apply_Xi(*bg, *pulled, pl), rhs = apply_Xi(*bg, *psi, p) / lam;
            xi_cov.see((lhs - rhs).norm() / std::max(rhs.norm(), 1e-300), fmt_point(p));
        }
        r.expect_le("model:1.omega_scale_invariant", "Omega commutes with dilations", scale_inv.value, 1e-8 * ts, scale_inv.where);
        r.expect_le("model:1.omega_commutes_Q", "Q commutes with Omega", q_comm.value, 1e-8 * ts, q_comm.where);
        r.expect_le("model:1.xi_dilation_covariant", "Xi intertwines pullback by dilations", xi_cov.value, 1e-8 * ts,
                    xi_cov.where);
    }

    // symbol spectrum on the side-2pi torus
    {
        const auto spec = lattice_L_spectrum(1);
        double e = 0.0;
        for (const auto& ms : spec) {
            const double k = std::sqrt(double(ms.k[0] * ms.k[0] + ms.k[1] * ms.k[1] + ms.k[2] * ms.k[2]));
            if (k == 0.0) {
                e = std::max(e, (ms.eig.size() == 1 && ms.eig[0].multiplicity == 24) ? std::abs(ms.eig[0].value) : 1.0);
            } else if (ms.eig.size() != 2 || ms.eig[0].multiplicity != 12 || ms.eig[1].multiplicity != 12) {
                e = 1.0;
            } else {
                e = std::max({e, std::abs(ms.eig[0].value + k), std::abs(ms.eig[1].value - k)});
            }
        }
        r.expect_le("lattice_symbol_spectrum", "symbol eigenvalues +-|k| with multiplicity 12", e, 1e-12 * ts);
    }
    return r;
}

SuiteReport spectral_hemisphere(const SuiteOptions& opt, int mesh, HemisphereResult* keep)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "hemisphere";
    r.seed = opt.seed;
    const auto hemi = hemisphere_eig0(mesh);
    const std::string where = "mesh " + std::to_string(mesh);
    r.expect_le("eig0", "lowest Dirichlet eigenvalue 2 on the half-sphere", std::abs(hemi.eig0 - 2.0), 1e-3 * ts, where);
    r.expect_le("cos_distance", "eigenfunction cos(theta)", hemi.cos_distance, 1e-2 * ts, where);
    r.extra = {{"mesh", mesh}, {"eig0", hemi.eig0}, {"eig1", hemi.eig1}, {"cos_distance", hemi.cos_distance}};

    SLProblem p0;
    const auto s0 = rayleigh_min(p0);
    r.expect_le("zero_potential_mu", "conformal reduction of the hemisphere bound", std::abs(s0.mu - 2.0), 5e-3 * ts,
                "mesh " + std::to_string(s0.n_mesh));
    p0.angular_mode = 1;
    const auto s1 = rayleigh_min(p0);
    r.expect("zero_potential_n1_larger", "plumbing", s1.mu > s0.mu, s1.mu, s0.mu);
    r.extra["zero_potential"] = {{"n0", s0.mu}, {"n1", s1.mu}, {"mesh", s0.n_mesh}};
    if (keep) *keep = hemi;
    return r;
}

SuiteReport spectral_exclusion(const SuiteOptions& opt, const std::vector<std::pair<ExclusionCase, int>>& cases)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "exclusion";
    r.seed = opt.seed;
    nlohmann::ordered_json ex = nlohmann::ordered_json::array();
    for (const auto& [c, m] : cases) {
        const auto e = exclusion_report(c, m);
        const std::string tag = e.name + ".m" + std::to_string(m) + ".";
        r.expect_le(tag + "mu_bound", "lower bound on the reduced Rayleigh quotient", e.claimed_bound - e.mu_min, 5e-3 * ts,
                    "mesh " + std::to_string(e.mesh));
        r.expect(tag + "excludes_0_to_3half", "no admissible exponent in [0, 3/2]", e.covers_0_to_3half, e.lo, e.hi);
        ex.push_back({{"case", e.name}, {"m", m}, {"mu_min", e.mu_min}, {"bound", e.claimed_bound}, {"mesh", e.mesh},
                      {"excluded", {e.lo, e.hi}}, {"inequality", e.inequality}, {"covers_0_to_3half", e.covers_0_to_3half}});
    }
    r.extra["cases"] = ex;
    return r;
}

SuiteReport spectral_hardy(const SuiteOptions& opt)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "hardy";
    r.seed = opt.seed;
    const auto H = hardy_suite();
    double homog = 0.0;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& e : H.entries) {
        homog = std::max(homog, rel(e.scaled_ratio, e.ratio));
        list.push_back({{"family", e.family}, {"param", e.param}, {"ratio", e.ratio}, {"bound", e.bound}});
    }
    r.expect_le("half_line", "Hardy inequality with constant 4", H.sup_half_line, 4.0);
    r.expect("near_extremal", "constant 4 is approached", H.sup_near_extremal >= 3.5, H.sup_near_extremal, 3.5);
    r.expect_le("three_d", "half-space Hardy inequality with constant 4/9", H.sup_three_d, 4.0 / 9.0);
    r.expect_le("hyperbolic", "Hardy inequality in the hyperbolic variable", H.sup_hyperbolic, 4.0);
    r.expect_le("homogeneous", "ratios are invariant under f -> c f", homog, 1e-10 * ts);
    r.extra["entries"] = list;
    return r;
}

SuiteReport spectral_radial(const SuiteOptions& opt)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "radial";
    r.seed = opt.seed;
    // lambda = 1: (a, b) = e^{kx}(1, 1)/x and e^{-kx}(1, -1)/x
    {
        const double k = 1.0;
        std::vector<double> g;
        for (int i = 0; i <= 40; ++i) g.push_back(0.1 * std::pow(100.0, i / 40.0));
        double err = 0.0, resid = 0.0, ident = 0.0;
        for (int branch : {1, -1}) {
            const double x0 = 1.0, e0 = std::exp(branch * k * x0) / x0;
            const auto st = radial_ode_solve(1.0, k, x0, {e0, branch * e0}, g);
            if (st.x.size() != g.size()) err = INFINITY;
            for (std::size_t i = 0; i < st.x.size(); ++i) {
                const double ex = std::exp(branch * k * st.x[i]) / st.x[i];
                err = std::max({err, rel(st.a[i], ex), rel(st.b[i], branch * ex)});
            }
            resid = std::max(resid, st.max_residual);
            ident = std::max(ident, st.max_identity);
        }
        r.expect_le("closed_forms", "explicit solutions at lambda = 1", err, 1e-8 * ts, "x in [0.1, 10], k=1");
        r.expect_le("residual", "plumbing", resid, 1e-8 * ts);
        r.expect_le("identity", "weighted norm identity for the radial system", ident, 1e-8 * ts);
    }
    nlohmann::ordered_json adm = nlohmann::ordered_json::array();
    for (double lam : {0.0, 0.4, 0.6, 1.0, 1.4, 1.6, 2.0}) {
        const auto a = radial_admissible(lam, 1.0);
        const bool want = lam > 0.5 && lam < 1.5;
        r.expect("admissible_lambda" + fmt(lam), "admissible exactly for 1/2 < lambda < 3/2", a.admissible == want,
                 a.exponent, a.expected_exponent, "k=1");
        adm.push_back({{"lambda", lam}, {"admissible", a.admissible}, {"exponent", a.exponent},
                       {"expected_exponent", a.expected_exponent}});
    }
    r.extra["admissibility"] = adm;
    return r;
}

SuiteReport suite_spectral(const SuiteOptions& opt)
{
    SuiteReport r;
    r.suite = "spectral";
    r.seed = opt.seed;
    r.merge(spectral_hemisphere(opt, 2000));
    r.merge(spectral_exclusion(opt, {{ExclusionCase::B3ct, 1},
                                     {ExclusionCase::Case2, 1},
                                     {ExclusionCase::Case2, 2},
                                     {ExclusionCase::Case3, 1},
                                     {ExclusionCase::Case3, 2}}));
    r.merge(spectral_hardy(opt));
    r.merge(spectral_radial(opt));
    return r;
}

SuiteReport suite_flow_smoke(const SuiteOptions& opt)
{
    const double ts = opt.tolerance_scale;
    SuiteReport r;
    r.suite = "flow-smoke";
    r.seed = opt.seed;

    r.expect_le("cs_zero", "plumbing", std::abs(cs_functional(zero_field(8))), 0.0);
    {
        const auto F = abelian_field(32, 0.5);
        const auto G = gradient(F);
        double e = std::abs(cs_functional(F));
        for (std::size_t p = 0; p < F.size(); ++p) {
            const auto x = F.position(p);
            e = std::max({e, (G.A[2][p] - Vec3(0, 0, 0.5 * std::cos(x[0]))).norm(), (G.A[0][p]).norm(), G.A[1][p].norm(),
                          G.a[0][p].norm(), G.a[1][p].norm(), G.a[2][p].norm()});
        }
        // fourth-order stencil, 32 points per period: truncation about 0.5 h^4 / 30
        r.expect_le("abelian_closed_form", "abelian data: cs = 0 and gradient *da", e, 1e-4 * ts);
    }

    const auto F = random_field(12, opt.seed, 0.3);
    {
        Worst g;
        double order = 0.0;
        for (int d = 0; d < 3; ++d) {
            const auto gc = gradient_check(F, random_field(12, opt.seed + 100 + d, 1.0), {0.2, 0.1, 0.05, 1e-4});
            g.see(gc.rel_err.back(), "direction " + std::to_string(d));
            order = d == 0 ? gc.observed_order : std::min(order, gc.observed_order);
        }
        r.expect_le("gradient_check", "first variation of cs is the gradient", g.value, 1e-6 * ts, g.where);
        r.expect("gradient_check_order", "first variation of cs is the gradient", std::abs(order - 2.0) <= 0.2 * ts, order,
                 0.2 * ts);
    }
    {
        // cs is gauge invariant in the continuum; on the grid the defect is a discretization
        // error whose size depends on the data (3e-6 to 4e-5 at N = 32), so only its order is asserted
        double defect[2];
        for (int i = 0; i < 2; ++i) {
            const auto G = random_field(i == 0 ? 16 : 32, opt.seed, 0.3, 1);
            defect[i] = rel(cs_functional(gauge_transform(G, opt.seed + 5, 0.05)), cs_functional(G));
        }
        r.extra["gauge_defect"] = {{"N16", defect[0]}, {"N32", defect[1]}};
        const double order = std::log2(defect[0] / defect[1]);
        r.expect("gauge_invariance_order", "cs is gauge invariant", std::abs(order - 4.0) <= 0.5 * ts, order, 0.5 * ts,
                 "N=16 vs 32");
    }
    {
        const auto Z = zero_field(8);
        const auto tr = run_flow(Z, FlowConfig{0.05 * Z.h(), 20});
        double m = 0.0;
        for (std::size_t i = 0; i < tr.cs.size(); ++i) m = std::max({m, std::abs(tr.cs[i]), tr.grad_norm_sq[i], tr.sup_a[i]});
        r.expect_le("zero_stationary", "trivial pair is a fixed point", m, 0.0);

        const auto S = random_field(12, opt.seed, 1e-100);
        const auto t2 = run_flow(S, FlowConfig{0.05 * S.h(), 100});
        r.expect("monotone", "cs increases along the flow", t2.monotone, t2.monotone_worst, 0.0);
        r.expect_le("energy_identity", "d cs/dt equals the squared velocity", t2.energy_identity_max, 1e-3 * ts);
        r.expect_le("two_forms_of_rate", "the two expressions of d cs/dt agree", t2.forms_max, 1e-3 * ts);

        bool rejected = false;
        try {
            run_flow(S, FlowConfig{S.h(), 1});
        } catch (const CflError&) {
            rejected = true;
        }
        r.expect("cfl_rejection", "plumbing", rejected, rejected ? 0.0 : 1.0, 0.0, "dt = h");
    }
    {
        std::vector<double> t, c;
        for (int i = 0; i <= 200; ++i) {
            t.push_back(0.02 * i);
            c.push_back(1.0 - std::exp(-3.0 * t.back()));
        }
        const auto L = lojasiewicz_fit(t, c);
        r.expect("lojasiewicz_synthetic", "plumbing", L.model == "exponential" && rel(L.rate, 3.0) <= 1e-2 * ts, L.rate,
                 1e-2 * ts, "1 - exp(-3t)");
    }
    {
        const auto p = seeded_modes(1, opt.seed, "plus-unit");
        const auto d = linearized_decay(p, 5.0, 0.5);
        double e = 0.0, fm = 0.0;
        for (std::size_t i = 0; i < d.t.size(); ++i) {
            e = std::max(e, std::abs(d.f_plus[i] - d.f_plus[0] * std::exp(-d.t[i])) / d.f_plus[0]);
            fm = std::max(fm, d.f_minus[i]);
        }
        r.expect_le("linear_decay_unit_mode", "positive modes decay at their eigenvalue", e + fm, 1e-8 * ts);

        const auto mx = linearized_decay(seeded_modes(2, opt.seed, "mixed"), 5.0, 0.5);
        double rate = INFINITY;
        for (std::size_t i = 1; i < mx.t.size(); ++i) rate = std::min(rate, std::log(mx.f_plus[i - 1] / mx.f_plus[i]) / (mx.t[i] - mx.t[i - 1]));
        r.expect("linear_decay_mixed_rate", "decay rate at least the first eigenvalue 1", rate >= 1.0 - 1e-9 * ts, rate, 1.0);

        const auto mn = linearized_decay(seeded_modes(1, opt.seed, "minus-unit"), 2.0, 0.5);
        const double growth = std::log(mn.f_minus.back() / mn.f_minus.front()) / mn.t.back();
        r.expect_le("linear_growth_minus", "negative modes grow", std::abs(growth - 1.0), 1e-8 * ts);
    }
    {
        std::array<double, 18> bc;
        std::uint64_t st = opt.seed;
        for (auto& v : bc) v = uniform(st, -0.3, 0.3);
        const auto phi = constant_phi(bc, 3);
        const auto zero = kuranishi_w(constant_phi({}, 3));
        r.expect_le("kuranishi_phi_zero", "G_0(0) = 0", zero.w.h_norm(), 0.0);
        const auto K = kuranishi_w(phi);
        r.expect_le("kuranishi_residual", "the nonlinear equation holds off the kernel at phi + w", K.residual, 1e-12 * ts);
        const double lip = kuranishi_contraction(phi, opt.seed, 0.1);
        r.expect("kuranishi_contraction", "G_phi is a contraction", lip < 1.0, lip, 1.0);
        r.expect_le("kuranishi_quadratic_bound", "|w| <= kappa |phi|^2", K.kappa, 1.0);
        const auto sw = kuranishi_sweep(phi, 6);
        if (sw.slope_defined)
            r.expect("kuranishi_slope", "|w| grows quadratically in |phi|", std::abs(sw.slope - 2.0) <= 0.1, sw.slope, 0.1);
        else
            r.expect("kuranishi_slope", "|w| grows quadratically in |phi|; w vanishes identically on constant phi", false,
                     sw.slope, 0.1, "slope undefined, all sweep points at the rounding floor");
    }
    return r;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"algebra", "clifford", "model", "operator", "spectral", "flow-smoke", "all"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt)
{
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport r;
    if (name == "algebra")
        r = suite_algebra(opt);
    else if (name == "clifford")
        r = suite_clifford(opt);
    else if (name == "model")
        r = suite_model(opt);
    else if (name == "operator")
        r = suite_operator(opt);
    else if (name == "spectral")
        r = suite_spectral(opt);
    else if (name == "flow-smoke")
        r = suite_flow_smoke(opt);
    else if (name == "all") {
        r.suite = "all";
        r.seed = opt.seed;
        for (const auto& n : suite_names())
            if (n != "all") r.merge(run_suite(n, SuiteOptions{opt.seed, opt.tolerance_scale, opt.model_m, opt.samples,
                                                           opt.background, opt.points, false}));
    } else
        throw UnknownSuite("unknown suite '" + name + "'");
    if (opt.timing) r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace kw
