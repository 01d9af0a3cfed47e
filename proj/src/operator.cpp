#include "kwlab/operator.hpp"

#include "kwlab/model.hpp"
#include "kwlab/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace kw {

namespace {

struct Gens {
    std::array<Endo24, 3> g, r;
    Endo24 Y;
};

const Gens& gens()
{
    static const Gens G = [] {
        Gens x;
        for (int i = 0; i < 3; ++i) {
            x.g[i] = kron(gamma(i + 1), Mat3::Identity());
            x.r[i] = kron(rho(i + 1), Mat3::Identity());
        }
        x.Y = derived_endos().Y;
        return x;
    }();
    return G;
}

Spinor8 ad_all(const Vec3& x, const Spinor8& v)
{
    Mat3 m = ad(x);
    Spinor8 out;
    for (int k = 0; k < 8; ++k) out.segment<3>(3 * k) = m * v.segment<3>(3 * k);
    return out;
}

int eps(int i, int j, int k)
{
    return (i - j) * (j - k) * (k - i) / 2;
}

// psi, its covariant derivatives (index 0 is d/dt) and the background at p
struct Local {
    Spinor8 v;
    std::array<Spinor8, 4> cov;
    BgSample bg;
};

Local local(const Background& bg, const Section& psi, const Point4& p)
{
    if (!bg.in_domain(p)) throw std::domain_error("point outside the background domain");
    Local L;
    L.bg = bg.at(p);
    L.v = psi.value(p);
    L.cov[0] = psi.deriv(p, 0);
    for (int i = 0; i < 3; ++i) L.cov[i + 1] = psi.deriv(p, i + 1) + ad_all(L.bg.A[i], L.v);
    return L;
}

Spinor8 spatial_clifford(const Local& L)
{
    const Gens& G = gens();
    Spinor8 out = Spinor8::Zero();
    for (int i = 0; i < 3; ++i) out += G.g[i] * L.cov[i + 1] + G.r[i] * ad_all(L.bg.a[i], L.v);
    return out;
}

// a 1-form as three Lie elements, a 2-form as an antisymmetric table
using Form1 = std::array<Vec3, 3>;
using Form2 = std::array<std::array<Vec3, 3>, 3>;

Form1 form_slots(const Spinor8& s, int first)
{
    return {slot(s, first), slot(s, first + 1), slot(s, first + 2)};
}

// b ^ a + a ^ b for Lie-valued 1-forms, written with brackets
Form2 wedge_sym(const Form1& b, const Form1& a)
{
    Form2 w;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i][j] = lie(b[i], a[j]) - lie(b[j], a[i]);
    return w;
}

Form1 hodge(const Form2& w)
{
    Form1 out;
    for (int k = 0; k < 3; ++k) {
        out[k] = Vec3::Zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (int e = eps(k, i, j)) out[k] += 0.5 * e * w[i][j];
    }
    return out;
}

// covariant exterior derivative of the 1-form in slots first..first+2
Form2 dA1(const Local& L, int first)
{
    Form2 w;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i][j] = slot(L.cov[i + 1], first + j) - slot(L.cov[j + 1], first + i);
    return w;
}

Form1 dA0(const Local& L, int s)
{
    return {slot(L.cov[1], s), slot(L.cov[2], s), slot(L.cov[3], s)};
}

Form1 add(const Form1& x, const Form1& y, double sy = 1.0)
{
    return {x[0] + sy * y[0], x[1] + sy * y[1], x[2] + sy * y[2]};
}

Spinor8 components(const Local& L)
{
    const Form1& a = L.bg.a;
    Form1 b = form_slots(L.v, B1), c = form_slots(L.v, C1);
    Vec3 bt = slot(L.v, BT), ct = slot(L.v, CT);
    Form1 s_dc = hodge(dA1(L, C1)), s_db = hodge(dA1(L, B1));
    Form1 s_ba = hodge(wedge_sym(b, a)), s_ca = hodge(wedge_sym(c, a));
    Form1 d_bt = dA0(L, BT), d_ct = dA0(L, CT);
    Spinor8 out;
    Vec3 pt = slot(L.cov[0], BT), qt = slot(L.cov[0], CT);
    for (int k = 0; k < 3; ++k) {
        Vec3 p = slot(L.cov[0], B1 + k) - d_bt[k] - s_dc[k] - s_ba[k] + lie(a[k], ct);
        Vec3 q = slot(L.cov[0], C1 + k) - d_ct[k] - s_db[k] + s_ca[k] - lie(a[k], bt);
        set_slot(out, B1 + k, p);
        set_slot(out, C1 + k, q);
        pt += slot(L.cov[k + 1], B1 + k) + lie(a[k], c[k]);
        qt += slot(L.cov[k + 1], C1 + k) - lie(a[k], b[k]);
    }
    set_slot(out, BT, pt);
    set_slot(out, CT, qt);
    return out;
}

const std::array<std::array<const char*, 8>, 8> kMatrix = {{
    {"dt", "a3", "-a2", "-n1", "0", "n3", "-n2", "a1"},
    {"-a3", "dt", "a1", "-n2", "-n3", "0", "n1", "a2"},
    {"a2", "-a1", "dt", "-n3", "n2", "-n1", "0", "a3"},
    {"n1", "n2", "n3", "dt", "a1", "a2", "a3", "0"},
    {"0", "n3", "-n2", "-a1", "dt", "-a3", "a2", "-n1"},
    {"-n3", "0", "n1", "-a2", "a3", "dt", "-a1", "-n2"},
    {"n2", "-n1", "0", "-a3", "-a2", "a1", "dt", "-n3"},
    {"-a1", "-a2", "-a3", "0", "n1", "n2", "n3", "dt"},
}};

Spinor8 matrix_apply(const Local& L)
{
    Spinor8 out = Spinor8::Zero();
    for (int r = 0; r < 8; ++r) {
        Vec3 acc = Vec3::Zero();
        for (int c = 0; c < 8; ++c) {
            std::string e = kMatrix[r][c];
            if (e == "0") continue;
            double sgn = 1.0;
            if (e[0] == '-') {
                sgn = -1.0;
                e = e.substr(1);
            }
            if (e == "dt") {
                acc += sgn * slot(L.cov[0], c);
            } else if (e[0] == 'n') {
                acc += sgn * slot(L.cov[e[1] - '0'], c);
            } else {
                acc += sgn * lie(L.bg.a[e[1] - '1'], slot(L.v, c));
            }
        }
        set_slot(out, r, acc);
    }
    return out;
}

class FnSection : public Section {
public:
    explicit FnSection(std::function<Spinor8(const Point4&)> f) : f_(std::move(f)) {}
    Spinor8 value(const Point4& p) const override { return f_(p); }

private:
    std::function<Spinor8(const Point4&)> f_;
};

class TrigSection : public Section {
public:
    TrigSection(std::uint64_t seed, int kmax, bool t_dep)
    {
        std::uint64_t st = seed;
        const int nmodes = 6;
        for (int m = 0; m < nmodes; ++m) {
            std::array<int, 4> n{};
            for (int mu = 0; mu < 4; ++mu)
                n[mu] = static_cast<int>(std::floor(unit_uniform(st) * (2 * kmax + 1))) - kmax;
            if (!t_dep) n[0] = 0;
            Spinor8 c, s;
            for (int i = 0; i < 24; ++i) {
                c(i) = 2.0 * unit_uniform(st) - 1.0;
                s(i) = 2.0 * unit_uniform(st) - 1.0;
            }
            modes_.push_back({n, c, s});
        }
    }
    Spinor8 value(const Point4& p) const override
    {
        Spinor8 out = Spinor8::Zero();
        for (const auto& m : modes_) {
            double ph = phase(m.n, p);
            out += std::cos(ph) * m.c + std::sin(ph) * m.s;
        }
        return out;
    }
    Spinor8 deriv(const Point4& p, int mu) const override
    {
        Spinor8 out = Spinor8::Zero();
        for (const auto& m : modes_) {
            double ph = phase(m.n, p);
            out += m.n[mu] * (-std::sin(ph) * m.c + std::cos(ph) * m.s);
        }
        return out;
    }

private:
    struct Mode {
        std::array<int, 4> n;
        Spinor8 c, s;
    };
    static double phase(const std::array<int, 4>& n, const Point4& p)
    {
        return n[0] * p[0] + n[1] * p[1] + n[2] * p[2] + n[3] * p[3];
    }
    std::vector<Mode> modes_;
};

class GaussSection : public Section {
public:
    GaussSection(std::uint64_t seed, const Point4& c, double w) : c_(c), w_(w)
    {
        std::uint64_t st = seed;
        for (auto& C : coef_)
            for (int i = 0; i < 24; ++i) C(i) = 2.0 * unit_uniform(st) - 1.0;
    }
    Spinor8 value(const Point4& p) const override
    {
        double r2 = 0.0;
        Spinor8 out = coef_[0];
        for (int mu = 0; mu < 4; ++mu) {
            double d = (p[mu] - c_[mu]) / w_;
            r2 += d * d;
            out += d * coef_[mu + 1];
        }
        return std::exp(-r2) * out;
    }

private:
    Point4 c_;
    double w_;
    std::array<Spinor8, 5> coef_;
};

class MappedSection : public Section {
public:
    MappedSection(const Endo24& m, SectionPtr s) : m_(m), s_(std::move(s)) {}
    Spinor8 value(const Point4& p) const override { return m_ * s_->value(p); }
    Spinor8 deriv(const Point4& p, int mu) const override { return m_ * s_->deriv(p, mu); }

private:
    Endo24 m_;
    SectionPtr s_;
};

class TrivialBg : public Background {
public:
    BgSample at(const Point4&) const override
    {
        BgSample s;
        for (int i = 0; i < 3; ++i) s.A[i] = s.a[i] = Vec3::Zero();
        return s;
    }
    std::string name() const override { return "trivial"; }
};

class NahmBg : public Background {
public:
    BgSample at(const Point4& p) const override
    {
        BgSample s;
        for (int i = 0; i < 3; ++i) {
            s.A[i] = Vec3::Zero();
            s.a[i] = -Vec3::Unit(i) / (2.0 * p[0]);
        }
        return s;
    }
    bool in_domain(const Point4& p) const override { return p[0] > 0.0; }
    std::string name() const override { return "nahm"; }
};

class ModelBg : public Background {
public:
    explicit ModelBg(int m) : ms_(m) {}
    BgSample at(const Point4& p) const override
    {
        ModelEval e = evaluate(ms_, FieldPoint{p[0], cplx(p[1], p[2]), p[3]});
        return {e.A, e.a};
    }
    bool in_domain(const Point4& p) const override
    {
        return p[0] > 0.0 && (ms_.m == 0 || std::hypot(p[1], p[2]) >= 1e-6);
    }
    std::string name() const override { return "model:" + std::to_string(ms_.m); }

private:
    ModelSolution ms_;
};

class TorusBg : public Background {
public:
    TorusBg(std::uint64_t seed, double amp)
    {
        std::uint64_t st = seed ^ 0x5bd1e995ULL;
        for (int m = 0; m < 4; ++m) {
            Mode md;
            for (int mu = 0; mu < 3; ++mu)
                md.n[mu] = static_cast<int>(std::floor(unit_uniform(st) * 3.0)) - 1;
            for (int f = 0; f < 6; ++f)
                for (int q = 0; q < 2; ++q)
                    for (int c = 0; c < 3; ++c) md.coef[f][q](c) = amp * (2.0 * unit_uniform(st) - 1.0);
            modes_.push_back(md);
        }
    }
    BgSample at(const Point4& p) const override
    {
        BgSample s;
        for (int i = 0; i < 3; ++i) s.A[i] = s.a[i] = Vec3::Zero();
        for (const auto& md : modes_) {
            double ph = md.n[0] * p[1] + md.n[1] * p[2] + md.n[2] * p[3];
            double cs = std::cos(ph), sn = std::sin(ph);
            for (int i = 0; i < 3; ++i) {
                s.A[i] += cs * md.coef[i][0] + sn * md.coef[i][1];
                s.a[i] += cs * md.coef[3 + i][0] + sn * md.coef[3 + i][1];
            }
        }
        return s;
    }
    std::string name() const override { return "torus"; }

private:
    struct Mode {
        std::array<int, 3> n;
        std::array<std::array<Vec3, 2>, 6> coef;
    };
    std::vector<Mode> modes_;
};

class DSection : public Section {
public:
    DSection(BackgroundPtr bg, SectionPtr psi, bool dagger) : bg_(std::move(bg)), psi_(std::move(psi)), dag_(dagger) {}
    Spinor8 value(const Point4& p) const override
    {
        return dag_ ? apply_D_dagger(*bg_, *psi_, p) : apply_D(*bg_, *psi_, p, Depiction::Clifford);
    }

private:
    BackgroundPtr bg_;
    SectionPtr psi_;
    bool dag_;
};

class CovSection : public Section {
public:
    CovSection(BackgroundPtr bg, SectionPtr psi, int mu) : bg_(std::move(bg)), psi_(std::move(psi)), mu_(mu) {}
    Spinor8 value(const Point4& p) const override
    {
        Spinor8 d = psi_->deriv(p, mu_);
        if (mu_ > 0) d += ad_all(bg_->at(p).A[mu_ - 1], psi_->value(p));
        return d;
    }

private:
    BackgroundPtr bg_;
    SectionPtr psi_;
    int mu_;
};

}  // namespace

Spinor8 Section::deriv(const Point4& p, int mu) const
{
    auto shifted = [&](double s) {
        Point4 q = p;
        q[mu] += s;
        return value(q);
    };
    const double h = step;
    if (order == 2) return (shifted(h) - shifted(-h)) / (2.0 * h);
    return (8.0 * (shifted(h) - shifted(-h)) - (shifted(2 * h) - shifted(-2 * h))) / (12.0 * h);
}

SectionPtr fn_section(std::function<Spinor8(const Point4&)> f, double step, int order)
{
    auto s = std::make_shared<FnSection>(std::move(f));
    s->step = step;
    s->order = order;
    return s;
}

SectionPtr trig_section(std::uint64_t seed, int kmax, bool t_dependent)
{
    return std::make_shared<TrigSection>(seed, kmax, t_dependent);
}

SectionPtr gauss_section(std::uint64_t seed, const Point4& c, double w, double step)
{
    auto s = std::make_shared<GaussSection>(seed, c, w);
    s->step = step;
    return s;
}

SectionPtr mapped_section(const Endo24& m, SectionPtr s) { return std::make_shared<MappedSection>(m, std::move(s)); }

BackgroundPtr trivial_background() { return std::make_shared<TrivialBg>(); }
BackgroundPtr nahm_background() { return std::make_shared<NahmBg>(); }
BackgroundPtr model_background(int m) { return std::make_shared<ModelBg>(m); }
BackgroundPtr torus_background(std::uint64_t seed, double amplitude) { return std::make_shared<TorusBg>(seed, amplitude); }

BackgroundPtr parse_background(const std::string& spec, std::uint64_t seed)
{
    if (spec == "trivial") return trivial_background();
    if (spec == "nahm") return nahm_background();
    if (spec == "torus") return torus_background(seed);
    if (spec.rfind("model:", 0) == 0) {
        std::size_t used = 0;
        int m = std::stoi(spec.substr(6), &used);
        if (used != spec.size() - 6 || m < 0) throw std::invalid_argument("bad model index in '" + spec + "'");
        return model_background(m);
    }
    throw std::invalid_argument("unknown background '" + spec + "'");
}

Spinor8 apply_D(const Background& bg, const Section& psi, const Point4& p, Depiction d)
{
    Local L = local(bg, psi, p);
    switch (d) {
    case Depiction::Components: return components(L);
    case Depiction::Matrix: return matrix_apply(L);
    case Depiction::Clifford: break;
    }
    return L.cov[0] + spatial_clifford(L);
}

Spinor8 apply_D_dagger(const Background& bg, const Section& psi, const Point4& p)
{
    Local L = local(bg, psi, p);
    return -L.cov[0] + spatial_clifford(L);
}

Spinor8 apply_spatial(const Background& bg, const Section& psi, const Point4& p)
{
    return spatial_clifford(local(bg, psi, p));
}

Spinor8 apply_Xi(const Background& bg, const Section& psi, const Point4& p)
{
    Local L = local(bg, psi, p);
    const Gens& G = gens();
    Spinor8 out = L.cov[0] + G.g[0] * L.cov[1] + G.g[1] * L.cov[2];
    for (int i = 0; i < 3; ++i) out += G.r[i] * ad_all(L.bg.a[i], L.v);
    return out;
}

SectionPtr D_section(BackgroundPtr bg, SectionPtr psi, double step, int order)
{
    auto s = std::make_shared<DSection>(std::move(bg), std::move(psi), false);
    s->step = step;
    s->order = order;
    return s;
}

SectionPtr Ddag_section(BackgroundPtr bg, SectionPtr psi, double step, int order)
{
    auto s = std::make_shared<DSection>(std::move(bg), std::move(psi), true);
    s->step = step;
    s->order = order;
    return s;
}

SectionPtr cov_section(BackgroundPtr bg, SectionPtr psi, int mu, double step, int order)
{
    auto s = std::make_shared<CovSection>(std::move(bg), std::move(psi), mu);
    s->step = step;
    s->order = order;
    return s;
}

const std::array<std::array<const char*, 8>, 8>& matrix_depiction() { return kMatrix; }

double spatial_identification(const Background& bg, const Section& psi, const Point4& p)
{
    Local L = local(bg, psi, p);
    Spinor8 direct = spatial_clifford(L);

    const Form1& a = L.bg.a;
    Form1 b = form_slots(L.v, B1), c = form_slots(L.v, C1);
    Vec3 bt = slot(L.v, BT), ct = slot(L.v, CT);

    // eta = b + i c, v = ct + i bt; complex pieces kept as (real, imaginary)
    Form2 dAb = dA1(L, B1), dAc = dA1(L, C1);
    Form2 ca = wedge_sym(c, a), ba = wedge_sym(b, a);
    Form2 deta_re, deta_im;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            deta_re[i][j] = dAb[i][j] - ca[i][j];
            deta_im[i][j] = dAc[i][j] + ba[i][j];
        }
    Vec3 cod_re = Vec3::Zero(), cod_im = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        cod_re += -slot(L.cov[i + 1], B1 + i) - lie(a[i], c[i]);
        cod_im += -slot(L.cov[i + 1], C1 + i) + lie(a[i], b[i]);
    }
    Form1 dct = dA0(L, CT), dbt = dA0(L, BT);
    Form1 dv_re, dv_im;
    for (int i = 0; i < 3; ++i) {
        dv_re[i] = dct[i] + lie(a[i], bt);
        dv_im[i] = dbt[i] - lie(a[i], ct);
    }
    Form1 first_re = add(hodge(deta_re), dv_re), first_im = add(hodge(deta_im), dv_im);

    // -(first, cod): the real part of the 1-form lands in the c slots, the
    // imaginary part in the b slots; the function part fills bt then ct
    Spinor8 assembled;
    for (int k = 0; k < 3; ++k) {
        set_slot(assembled, C1 + k, -first_re[k]);
        set_slot(assembled, B1 + k, -first_im[k]);
    }
    set_slot(assembled, BT, -cod_re);
    set_slot(assembled, CT, -cod_im);
    return (direct - assembled).cwiseAbs().maxCoeff();
}

Spinor8 omega_apply(BackgroundPtr bg, SectionPtr xi, const Point4& p)
{
    const double t = p[0], z1 = p[1], z2 = p[2];
    const double x = std::sqrt(t * t + z1 * z1 + z2 * z2);
    auto uinv = fn_section(
        [xi](const Point4& q) {
            Mat8 U = U_endo(q[0], q[1], q[2]);
            Spinor8 v = xi->value(q), out;
            for (int r = 0; r < 8; ++r) {
                Vec3 acc = Vec3::Zero();
                for (int c = 0; c < 8; ++c)
                    if (U(c, r) != 0.0) acc += U(c, r) * slot(v, c);
                set_slot(out, r, acc);
            }
            return out;
        },
        1e-4 * x, 4);
    Spinor8 xi_part = x * apply_Xi(*bg, *uinv, p);
    Local L = local(*bg, *xi, p);
    return xi_part - (t * L.cov[0] + z1 * L.cov[1] + z2 * L.cov[2]);
}

double y_intertwine(BackgroundPtr bg, SectionPtr psi, const Point4& p)
{
    const Endo24& Y = gens().Y;
    auto ypsi = mapped_section(Y, psi);
    Spinor8 r = apply_D(*bg, *ypsi, p, Depiction::Clifford) + Y * apply_D_dagger(*bg, *psi, p);
    return r.norm();
}

std::vector<ModeSpectrum> lattice_L_spectrum(int k_max)
{
    if (k_max < 1) throw std::invalid_argument("lattice_L_spectrum: k_max must be >= 1");
    using CMat = Eigen::Matrix<cplx, 24, 24>;
    std::vector<ModeSpectrum> out;
    const Gens& G = gens();
    for (int k1 = -k_max; k1 <= k_max; ++k1)
        for (int k2 = -k_max; k2 <= k_max; ++k2)
            for (int k3 = -k_max; k3 <= k_max; ++k3) {
                Endo24 gk = k1 * G.g[0] + k2 * G.g[1] + k3 * G.g[2];
                CMat sym = cplx(0.0, 1.0) * gk.cast<cplx>();
                Eigen::SelfAdjointEigenSolver<CMat> es(sym, Eigen::EigenvaluesOnly);
                Endo24 ev_as_diag = Endo24::Zero();
                ev_as_diag.diagonal() = es.eigenvalues();
                out.push_back({{k1, k2, k3}, symmetric_spectrum(ev_as_diag)});
            }
    return out;
}

PeriodicIntegrals periodic_integrals(const Background& bg, const Section& psi, const Section& xi, int n)
{
    const double d = 2.0 * M_PI / n;
    const std::size_t total = static_cast<std::size_t>(n) * n * n * n;
    std::vector<std::array<double, 5>> part(total);
    parallel_for(total, [&](std::size_t idx) {
        std::size_t r = idx;
        Point4 p;
        for (int mu = 0; mu < 4; ++mu) {
            p[mu] = d * static_cast<double>(r % n);
            r /= n;
        }
        Local L = local(bg, psi, p);
        Spinor8 Dpsi = L.cov[0] + spatial_clifford(L);
        Spinor8 Ls = spatial_clifford(L);
        Spinor8 Dx = apply_D_dagger(bg, xi, p);
        Spinor8 xv = xi.value(p);
        part[idx] = {Dpsi.squaredNorm(), L.cov[0].squaredNorm(), Ls.squaredNorm(), Dpsi.dot(xv), L.v.dot(Dx)};
    });
    std::array<double, 5> s{};
    for (const auto& q : part)
        for (int k = 0; k < 5; ++k) s[k] += q[k];
    const double w = d * d * d * d;
    PeriodicIntegrals out;
    out.D_sq = w * s[0];
    out.dt_sq = w * s[1];
    out.L_sq = w * s[2];
    out.duality = std::abs(w * (s[3] - s[4]));
    out.scale = w * s[3];
    return out;
}

double duality_defect(const Background& bg, const Section& psi, const Section& xi, const Point4& c,
                      double half_width, int n, double* scale)
{
    const double d = 2.0 * half_width / (n - 1);
    const std::size_t total = static_cast<std::size_t>(n) * n * n * n;
    std::vector<std::array<double, 3>> part(total);
    parallel_for(total, [&](std::size_t idx) {
        std::size_t r = idx;
        Point4 p;
        for (int mu = 0; mu < 4; ++mu) {
            p[mu] = c[mu] - half_width + d * static_cast<double>(r % n);
            r /= n;
        }
        Spinor8 Dpsi = apply_D(bg, psi, p, Depiction::Clifford);
        Spinor8 Dx = apply_D_dagger(bg, xi, p);
        double lhs = Dpsi.dot(xi.value(p)), rhs = psi.value(p).dot(Dx);
        part[idx] = {lhs, rhs, std::abs(lhs)};
    });
    double s0 = 0, s1 = 0, s2 = 0;
    for (const auto& q : part) {
        s0 += q[0];
        s1 += q[1];
        s2 += q[2];
    }
    const double w = d * d * d * d;
    if (scale) *scale = w * s2;
    return std::abs(w * (s0 - s1));
}

}  // namespace kw
