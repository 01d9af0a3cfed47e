#include "kwlab/flow.hpp"

#include "kwlab/model.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kw {

namespace {

using CMat24 = Eigen::Matrix<std::complex<double>, 24, 24>;
constexpr double kVol = 8.0 * M_PI * M_PI * M_PI;  // (2 pi)^3

double k2(const std::array<int, 3>& k) { return double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]); }

// representative of the pair {k, -k}
bool positive_rep(const std::array<int, 3>& k)
{
    for (int v : k)
        if (v != 0) return v > 0;
    return false;
}

// real samples of a ModeVector on an Ng^3 grid (24 channels) and back, via FFTW
class Grid {
public:
    explicit Grid(int kmax) : kmax_(kmax), n_(std::max(8, 3 * kmax + 2))
    {
        const std::size_t sz = static_cast<std::size_t>(n_) * n_ * n_;
        buf_ = fftw_alloc_complex(sz);
        back_ = fftw_plan_dft_3d(n_, n_, n_, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
        fwd_ = fftw_plan_dft_3d(n_, n_, n_, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~Grid()
    {
        fftw_destroy_plan(back_);
        fftw_destroy_plan(fwd_);
        fftw_free(buf_);
    }
    Grid(const Grid&) = delete;
    Grid& operator=(const Grid&) = delete;

    std::size_t points() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    // values[p] is the Spinor8 at grid point p
    std::vector<Spinor8> to_grid(const ModeVector& m)
    {
        std::vector<Spinor8> out(points());
        for (int ch = 0; ch < 24; ++ch) {
            std::fill(reinterpret_cast<double*>(buf_), reinterpret_cast<double*>(buf_) + 2 * points(), 0.0);
            for (std::size_t q = 0; q < m.c.size(); ++q) {
                auto k = m.wavevector(q);
                std::size_t id = wrap(k);
                buf_[id][0] = m.c[q](ch).real();
                buf_[id][1] = m.c[q](ch).imag();
            }
            fftw_execute(back_);
            for (std::size_t p = 0; p < points(); ++p) out[p](ch) = buf_[p][0];
        }
        return out;
    }

    ModeVector from_grid(const std::vector<Spinor8>& v)
    {
        ModeVector m(kmax_);
        const double norm = 1.0 / static_cast<double>(points());
        for (int ch = 0; ch < 24; ++ch) {
            for (std::size_t p = 0; p < points(); ++p) {
                buf_[p][0] = v[p](ch);
                buf_[p][1] = 0.0;
            }
            fftw_execute(fwd_);
            for (std::size_t q = 0; q < m.c.size(); ++q) {
                std::size_t id = wrap(m.wavevector(q));
                m.c[q](ch) = norm * std::complex<double>(buf_[id][0], buf_[id][1]);
            }
        }
        return m;
    }

private:
    std::size_t wrap(const std::array<int, 3>& k) const
    {
        auto w = [this](int v) { return static_cast<std::size_t>((v % n_ + n_) % n_); };
        // FFTW arrays are row-major: the last index varies fastest
        return w(k[2]) + static_cast<std::size_t>(n_) * (w(k[1]) + static_cast<std::size_t>(n_) * w(k[0]));
    }

    int kmax_, n_;
    fftw_complex* buf_;
    fftw_plan back_, fwd_;
};

Spinor8 sharp_point(const Spinor8& s)
{
    std::array<Vec3, 3> b{slot(s, B1), slot(s, B2), slot(s, B3)}, c{slot(s, C1), slot(s, C2), slot(s, C3)};
    const Vec3 bt = slot(s, BT), ct = slot(s, CT);
    Spinor8 out = Spinor8::Zero();
    Vec3 qt = lie(bt, ct);
    for (int k = 0; k < 3; ++k) {
        const int u = (k + 1) % 3, v = (k + 2) % 3;
        // eps_kij X_i Y_j over the cyclic pair (u, v)
        Vec3 bc = lie(b[u], c[v]) - lie(b[v], c[u]);
        Vec3 bb = lie(b[u], b[v]), cc = lie(c[u], c[v]);
        set_slot(out, B1 + k, -lie(b[k], bt) - bc + lie(c[k], ct));
        set_slot(out, C1 + k, -lie(b[k], ct) - (bb - cc) - lie(c[k], bt));
        qt += lie(b[k], c[k]);
    }
    set_slot(out, CT, qt);
    return out;
}

ModeVector apply_symbol(const ModeVector& m, bool inverse)
{
    ModeVector out(m.kmax);
    for (std::size_t q = 0; q < m.c.size(); ++q) {
        auto k = m.wavevector(q);
        const double kk = k2(k);
        if (kk == 0.0) {
            out.c[q].setZero();
            continue;
        }
        out.c[q] = symbol(k) * m.c[q];
        if (inverse) out.c[q] /= kk;
    }
    return out;
}

ModeVector add(const ModeVector& x, const ModeVector& y, double s = 1.0)
{
    ModeVector out = x;
    for (std::size_t q = 0; q < x.c.size(); ++q) out.c[q] += s * y.c[q];
    return out;
}

ModeVector seeded_small(int kmax, std::uint64_t seed, double radius)
{
    ModeVector m(kmax);
    std::uint64_t st = seed * 0x94d049bb133111ebULL + 11;
    for (std::size_t q = 0; q < m.c.size(); ++q) {
        auto k = m.wavevector(q);
        if (k2(k) == 0.0 || !positive_rep(k)) continue;
        CSpinor v;
        for (int i = 0; i < 24; ++i) v(i) = {2.0 * unit_uniform(st) - 1.0, 2.0 * unit_uniform(st) - 1.0};
        m.c[q] = v;
        m.at(-k[0], -k[1], -k[2]) = v.conjugate();
    }
    const double n = m.h_norm();
    for (auto& v : m.c) v *= radius / n;
    return m;
}

}  // namespace

ModeVector::ModeVector(int k) : kmax(k)
{
    if (k < 0) throw std::invalid_argument("ModeVector: kmax must be non-negative");
    const std::size_t side = 2 * k + 1;
    c.assign(side * side * side, CSpinor::Zero());
}

std::size_t ModeVector::index(int k1, int k2, int k3) const
{
    if (std::abs(k1) > kmax || std::abs(k2) > kmax || std::abs(k3) > kmax) throw std::out_of_range("ModeVector: mode out of range");
    const std::size_t side = 2 * kmax + 1;
    return (k1 + kmax) + side * ((k2 + kmax) + side * (k3 + kmax));
}

std::array<int, 3> ModeVector::wavevector(std::size_t idx) const
{
    const int side = 2 * kmax + 1;
    const int i = static_cast<int>(idx);
    return {i % side - kmax, (i / side) % side - kmax, i / (side * side) - kmax};
}

double ModeVector::l2_norm() const
{
    double s = 0.0;
    for (const auto& v : c) s += v.squaredNorm();
    return std::sqrt(kVol * s);
}

double ModeVector::h_norm() const
{
    double s = 0.0;
    for (std::size_t q = 0; q < c.size(); ++q) s += (1.0 + k2(wavevector(q))) * c[q].squaredNorm();
    return std::sqrt(kVol * s);
}

double ModeVector::reality_defect() const
{
    double d = 0.0;
    for (std::size_t q = 0; q < c.size(); ++q) {
        auto k = wavevector(q);
        d = std::max(d, (c[q] - at(-k[0], -k[1], -k[2]).conjugate()).cwiseAbs().maxCoeff());
    }
    return d;
}

Eigen::Matrix<std::complex<double>, 24, 24> symbol(const std::array<int, 3>& k)
{
    Endo24 g = Endo24::Zero();
    for (int j = 0; j < 3; ++j) g += k[j] * kron(gamma(j + 1), Mat3::Identity());
    return std::complex<double>(0.0, 1.0) * g.cast<std::complex<double>>();
}

DecayTrace linearized_decay(const ModeVector& psi0, double T, double dt)
{
    if (!(dt > 0.0) || !(T >= 0.0)) throw std::invalid_argument("linearized_decay: bad time grid");
    const double total = psi0.l2_norm();
    if (psi0.at(0, 0, 0).norm() * std::sqrt(kVol) > 1e-12 * std::max(1.0, total))
        throw std::invalid_argument("linearized_decay: zero-mode contamination above 1e-12");

    struct Mode {
        Eigen::Matrix<double, 24, 1> lam;
        CMat24 V;
        CSpinor coef;  // V^* psi0_k
    };
    std::vector<Mode> modes;
    for (std::size_t q = 0; q < psi0.c.size(); ++q) {
        auto k = psi0.wavevector(q);
        if (k2(k) == 0.0) continue;
        Eigen::SelfAdjointEigenSolver<CMat24> es(symbol(k));
        modes.push_back({es.eigenvalues(), es.eigenvectors(), es.eigenvectors().adjoint() * psi0.c[q]});
    }
    DecayTrace tr;
    const int steps = static_cast<int>(std::floor(T / dt + 1e-9));
    for (int n = 0; n <= steps; ++n) {
        const double t = n * dt;
        double fp = 0.0, fm = 0.0;
        for (const auto& m : modes)
            for (int i = 0; i < 24; ++i) {
                double v = std::norm(m.coef(i)) * std::exp(-2.0 * m.lam(i) * t);
                (m.lam(i) > 0 ? fp : fm) += v;
            }
        tr.t.push_back(t);
        tr.f_plus.push_back(std::sqrt(kVol * fp));
        tr.f_minus.push_back(std::sqrt(kVol * fm));
    }
    return tr;
}

ModeVector seeded_modes(int kmax, std::uint64_t seed, const std::string& kind)
{
    if (kind != "plus" && kind != "minus" && kind != "mixed" && kind != "plus-unit" &&
        kind != "minus-unit")
        throw std::invalid_argument("seeded_modes: unknown kind '" + kind + "'");
    ModeVector m(kmax);
    std::uint64_t st = seed * 0xd6e8feb86659fd93ULL + 7;
    for (std::size_t q = 0; q < m.c.size(); ++q) {
        auto k = m.wavevector(q);
        if (k2(k) == 0.0 || !positive_rep(k)) continue;
        if ((kind == "plus-unit" || kind == "minus-unit") && k2(k) != 1.0) continue;
        CSpinor v;
        for (int i = 0; i < 24; ++i) v(i) = {2.0 * unit_uniform(st) - 1.0, 2.0 * unit_uniform(st) - 1.0};
        if (kind != "mixed") {
            Eigen::SelfAdjointEigenSolver<CMat24> es(symbol(k));
            CMat24 P = CMat24::Zero();
            const bool want_plus = kind == "plus" || kind == "plus-unit";
            for (int i = 0; i < 24; ++i)
                if ((es.eigenvalues()(i) > 0) == want_plus) P += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
            v = P * v;
        }
        m.c[q] = v;
        m.at(-k[0], -k[1], -k[2]) = v.conjugate();
    }
    return m;
}

ModeVector constant_phi(const std::array<double, 18>& bc, int kmax)
{
    ModeVector m(kmax);
    CSpinor& z = m.at(0, 0, 0);
    for (int s = 0; s < 3; ++s)
        for (int j = 0; j < 3; ++j) {
            z(3 * (B1 + s) + j) = bc[3 * s + j];
            z(3 * (C1 + s) + j) = bc[9 + 3 * s + j];
        }
    return m;
}

ModeVector quadratic_sharp(const ModeVector& psi)
{
    Grid g(psi.kmax);
    std::vector<Spinor8> v = g.to_grid(psi);
    for (auto& s : v) s = sharp_point(s);
    return g.from_grid(v);
}

ModeVector kuranishi_G(const ModeVector& phi, const ModeVector& w)
{
    ModeVector q = quadratic_sharp(add(phi, w));
    ModeVector out = apply_symbol(q, true);  // drops k = 0, i.e. applies 1 - Pi0
    for (auto& v : out.c) v = -v;
    return out;
}

KuranishiResult kuranishi_w(const ModeVector& phi, double tol, int max_iter)
{
    for (std::size_t q = 0; q < phi.c.size(); ++q) {
        auto k = phi.wavevector(q);
        if (k2(k) != 0.0 && phi.c[q].norm() > 0.0) throw std::invalid_argument("kuranishi_w: phi must be a constant field");
    }
    const CSpinor& z = phi.at(0, 0, 0);
    if (slot(z.real(), BT).norm() + slot(z.real(), CT).norm() + z.imag().norm() > 0.0)
        throw std::invalid_argument("kuranishi_w: phi must be real with only 1-form slots");

    KuranishiResult r;
    r.w = ModeVector(phi.kmax);
    double prev_step = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        ModeVector next = kuranishi_G(phi, r.w);
        r.last_step = add(next, r.w, -1.0).h_norm();
        r.w = next;
        r.iterations = it;
        if (r.last_step <= tol) {
            r.converged = true;
            break;
        }
        if (it > 3 && r.last_step > prev_step)
            throw std::runtime_error("kuranishi_w: contraction failure, observed Lipschitz ratio " +
                                     std::to_string(r.last_step / prev_step));
        prev_step = r.last_step;
    }
    // (1 - Pi0)(L (phi + w) + (phi + w)#(phi + w)); L phi = 0
    ModeVector Q = quadratic_sharp(add(phi, r.w));
    r.quad_scale = Q.h_norm();
    ModeVector F = add(apply_symbol(r.w, false), Q);
    F.at(0, 0, 0).setZero();
    r.residual = F.h_norm();
    const double pn = phi.h_norm();
    r.kappa = pn > 0.0 ? r.w.h_norm() / (pn * pn) : 0.0;
    r.at_roundoff_floor = r.w.h_norm() <= 1e3 * std::numeric_limits<double>::epsilon() * r.quad_scale;
    return r;
}

KuranishiSweep kuranishi_sweep(const ModeVector& phi, int points)
{
    if (points < 2) throw std::invalid_argument("kuranishi_sweep: need at least two points");
    KuranishiSweep sw;
    bool any_floor = false;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 1; j <= points; ++j) {
        ModeVector p = phi;
        for (auto& v : p.c) v *= std::ldexp(1.0, -j);
        KuranishiResult r = kuranishi_w(p);
        const double x = std::log(p.h_norm()), w = r.w.h_norm();
        sw.phi_norm.push_back(p.h_norm());
        sw.w_norm.push_back(w);
        sw.floor.push_back(r.at_roundoff_floor);
        any_floor = any_floor || r.at_roundoff_floor || w == 0.0;
        if (w > 0.0) {
            sx += x;
            sy += std::log(w);
            sxx += x * x;
            sxy += x * std::log(w);
        }
    }
    sw.slope_defined = !any_floor;
    const double n = points;
    sw.slope = sw.slope_defined ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();
    return sw;
}

double kuranishi_contraction(const ModeVector& phi, std::uint64_t seed, double radius)
{
    ModeVector w1 = seeded_small(phi.kmax, seed, radius), w2 = seeded_small(phi.kmax, seed + 1, radius);
    ModeVector d = add(kuranishi_G(phi, w1), kuranishi_G(phi, w2), -1.0);
    return d.h_norm() / add(w1, w2, -1.0).h_norm();
}

}  // namespace kw
