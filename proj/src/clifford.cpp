#include "kwlab/clifford.hpp"

#include <algorithm>
#include <stdexcept>

namespace kw {

namespace {

Mat8i build(std::initializer_list<int> v)
{
    Mat8i m;
    auto it = v.begin();
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) m(r, c) = *it++;
    return m;
}

CliffordSet make_set()
{
    CliffordSet s;
    s.gamma[0] = build({0, 0, 0, -1, 0, 0, 0, 0,
                        0, 0, 0, 0, 0, 0, 1, 0,
                        0, 0, 0, 0, 0, -1, 0, 0,
                        1, 0, 0, 0, 0, 0, 0, 0,
                        0, 0, 0, 0, 0, 0, 0, -1,
                        0, 0, 1, 0, 0, 0, 0, 0,
                        0, -1, 0, 0, 0, 0, 0, 0,
                        0, 0, 0, 0, 1, 0, 0, 0});
    s.gamma[1] = build({0, 0, 0, 0, 0, 0, -1, 0,
                        0, 0, 0, -1, 0, 0, 0, 0,
                        0, 0, 0, 0, 1, 0, 0, 0,
                        0, 1, 0, 0, 0, 0, 0, 0,
                        0, 0, -1, 0, 0, 0, 0, 0,
                        0, 0, 0, 0, 0, 0, 0, -1,
                        1, 0, 0, 0, 0, 0, 0, 0,
                        0, 0, 0, 0, 0, 1, 0, 0});
    s.gamma[2] = build({0, 0, 0, 0, 0, 1, 0, 0,
                        0, 0, 0, 0, -1, 0, 0, 0,
                        0, 0, 0, -1, 0, 0, 0, 0,
                        0, 0, 1, 0, 0, 0, 0, 0,
                        0, 1, 0, 0, 0, 0, 0, 0,
                        -1, 0, 0, 0, 0, 0, 0, 0,
                        0, 0, 0, 0, 0, 0, 0, -1,
                        0, 0, 0, 0, 0, 0, 1, 0});
    s.rho[0] = build({0, 0, 0, 0, 0, 0, 0, 1,
                      0, 0, 1, 0, 0, 0, 0, 0,
                      0, -1, 0, 0, 0, 0, 0, 0,
                      0, 0, 0, 0, 1, 0, 0, 0,
                      0, 0, 0, -1, 0, 0, 0, 0,
                      0, 0, 0, 0, 0, 0, -1, 0,
                      0, 0, 0, 0, 0, 1, 0, 0,
                      -1, 0, 0, 0, 0, 0, 0, 0});
    s.rho[1] = build({0, 0, -1, 0, 0, 0, 0, 0,
                      0, 0, 0, 0, 0, 0, 0, 1,
                      1, 0, 0, 0, 0, 0, 0, 0,
                      0, 0, 0, 0, 0, 1, 0, 0,
                      0, 0, 0, 0, 0, 0, 1, 0,
                      0, 0, 0, -1, 0, 0, 0, 0,
                      0, 0, 0, 0, -1, 0, 0, 0,
                      0, -1, 0, 0, 0, 0, 0, 0});
    s.rho[2] = build({0, 1, 0, 0, 0, 0, 0, 0,
                      -1, 0, 0, 0, 0, 0, 0, 0,
                      0, 0, 0, 0, 0, 0, 0, 1,
                      0, 0, 0, 0, 0, 0, 1, 0,
                      0, 0, 0, 0, 0, -1, 0, 0,
                      0, 0, 0, 0, 1, 0, 0, 0,
                      0, 0, 0, -1, 0, 0, 0, 0,
                      0, 0, -1, 0, 0, 0, 0, 0});
    return s;
}

long count_diff(const Mat8i& a, const Mat8i& b) { return (a.array() != b.array()).count(); }

}  // namespace

const CliffordSet& load_clifford()
{
    static const CliffordSet s = make_set();
    return s;
}

std::vector<RelationCheck> clifford_relations(const CliffordSet& c)
{
    std::vector<RelationCheck> out;
    const Mat8i id = Mat8i::Identity();
    const Mat8i zero = Mat8i::Zero();
    const char* gn[3] = {"g1", "g2", "g3"};
    const char* rn[3] = {"r1", "r2", "r3"};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Mat8i want = (i == j) ? Mat8i(-2 * id) : zero;
            Mat8i gg = c.gamma[i] * c.gamma[j] + c.gamma[j] * c.gamma[i];
            Mat8i rr = c.rho[i] * c.rho[j] + c.rho[j] * c.rho[i];
            Mat8i gr = c.gamma[i] * c.rho[j] + c.rho[j] * c.gamma[i];
            if (i <= j) {
                out.push_back({std::string("{") + gn[i] + "," + gn[j] + "}", count_diff(gg, want)});
                out.push_back({std::string("{") + rn[i] + "," + rn[j] + "}", count_diff(rr, want)});
            }
            out.push_back({std::string("{") + gn[i] + "," + rn[j] + "}", count_diff(gr, zero)});
        }
    }
    for (int s = 0; s < 2; ++s) {
        for (int i = 0; i < 3; ++i) {
            const Mat8i& m = s ? c.rho[i] : c.gamma[i];
            std::string n = s ? rn[i] : gn[i];
            out.push_back({n + " antisymmetric", count_diff(m.transpose(), Mat8i(-m))});
            out.push_back({n + " traceless", m.trace() != 0 ? 1L : 0L});
            long bad = 0;
            for (int r = 0; r < 8; ++r) {
                int nz = 0;
                for (int k = 0; k < 8; ++k) {
                    int v = m(r, k);
                    if (v != 0) ++nz;
                    if (v < -1 || v > 1) ++bad;
                }
                if (nz != 1) ++bad;
            }
            out.push_back({n + " signed permutation", bad});
        }
    }
    Mat8i r123 = c.rho[0] * c.rho[1] * c.rho[2];
    for (int i = 0; i < 3; ++i)
        out.push_back({std::string("{r1r2r3,") + gn[i] + "}",
                       count_diff(r123 * c.gamma[i], Mat8i(-c.gamma[i] * r123))});
    return out;
}

Mat8 to_real(const Mat8i& m) { return m.cast<double>(); }

Endo24 kron(const Mat8& m, const Mat3& a)
{
    Endo24 k;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) k.block<3, 3>(3 * i, 3 * j) = m(i, j) * a;
    return k;
}

Mat8 gamma(int i) { return to_real(load_clifford().gamma.at(i - 1)); }
Mat8 rho(int i) { return to_real(load_clifford().rho.at(i - 1)); }

DerivedEndos derived_endos()
{
    const CliffordSet& c = load_clifford();
    DerivedEndos d;
    const Mat3 id3 = Mat3::Identity();
    Mat8 r12 = to_real(c.rho[0] * c.rho[1]);
    d.Q = kron(r12, id3) - kron(Mat8::Identity(), ad(Vec3(0, 0, 1)));
    // flip the sigma3 component, then apply -rho1 rho2 gamma3
    Mat3 flip = Vec3(1, 1, -1).asDiagonal();
    d.L = -kron(to_real(c.rho[0] * c.rho[1] * c.gamma[2]), flip);
    d.Y8 = c.gamma[0] * c.gamma[1] * c.gamma[2] * c.rho[0] * c.rho[1] * c.rho[2];
    d.Y = kron(to_real(d.Y8), id3);
    return d;
}

Mat8 U_endo(double t, double z1, double z2)
{
    double x = std::sqrt(t * t + z1 * z1 + z2 * z2);
    if (x == 0.0) throw std::domain_error("U_endo: undefined at the origin");
    return (t * Mat8::Identity() + z1 * gamma(1) + z2 * gamma(2)) / x;
}

Endo24 nahm_pole_endo(double t)
{
    if (!(t > 0.0)) throw std::domain_error("nahm_pole_endo: t must be positive");
    Endo24 n = Endo24::Zero();
    for (int i = 1; i <= 3; ++i) n += kron(rho(i), ad(-Vec3::Unit(i - 1) / (2.0 * t)));
    return n;
}

namespace {

std::vector<EigenCount> group(std::vector<double> ev, double tol)
{
    std::sort(ev.begin(), ev.end());
    std::vector<EigenCount> out;
    for (double v : ev) {
        if (!out.empty() && std::abs(v - out.back().value) <= tol) {
            auto& g = out.back();
            g.value = (g.value * g.multiplicity + v) / (g.multiplicity + 1);
            ++g.multiplicity;
        } else {
            out.push_back({v, 1});
        }
    }
    return out;
}

}  // namespace

std::vector<EigenCount> symmetric_spectrum(const Endo24& m, double tol)
{
    Eigen::SelfAdjointEigenSolver<Endo24> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 24);
    return group(ev, tol);
}

std::vector<EigenCount> antisymmetric_spectrum(const Endo24& m, double tol)
{
    Eigen::RealSchur<Endo24> rs(m, false);
    const Endo24& T = rs.matrixT();
    std::vector<double> ev;
    for (int i = 0; i < 24;) {
        if (i + 1 < 24 && std::abs(T(i + 1, i)) > 0.0) {
            // 2x2 block [[a, b], [c, a]] with eigenvalues a +- sqrt(bc)
            double w = std::sqrt(std::abs(T(i, i + 1) * T(i + 1, i)));
            ev.push_back(w);
            ev.push_back(-w);
            i += 2;
        } else {
            ev.push_back(0.0);
            ++i;
        }
    }
    return group(ev, tol);
}

}  // namespace kw
