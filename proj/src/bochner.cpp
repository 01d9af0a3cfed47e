#include "kwlab/operator.hpp"

#include <cmath>

namespace kw {

namespace {

Spinor8 ad_all(const Vec3& x, const Spinor8& v)
{
    Mat3 m = ad(x);
    Spinor8 out;
    for (int k = 0; k < 8; ++k) out.segment<3>(3 * k) = m * v.segment<3>(3 * k);
    return out;
}

}  // namespace

BgDerivs background_derivs(const Background& bg, const Point4& p, double h)
{
    std::array<std::array<Vec3, 3>, 4> dA, da;
    for (int mu = 0; mu < 4; ++mu) {
        auto at = [&](double s) {
            Point4 q = p;
            q[mu] += s;
            return bg.at(q);
        };
        BgSample p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
        for (int i = 0; i < 3; ++i) {
            dA[mu][i] = (8.0 * (p1.A[i] - m1.A[i]) - (p2.A[i] - m2.A[i])) / (12.0 * h);
            da[mu][i] = (8.0 * (p1.a[i] - m1.a[i]) - (p2.a[i] - m2.a[i])) / (12.0 * h);
        }
    }
    BgDerivs d;
    d.s = bg.at(p);
    for (int i = 0; i < 3; ++i) {
        d.E[i] = dA[0][i];
        d.dta[i] = da[0][i];
        for (int j = 0; j < 3; ++j) {
            d.F[i][j] = dA[i + 1][j] - dA[j + 1][i] + lie(d.s.A[i], d.s.A[j]);
            d.Na[i][j] = da[i + 1][j] + lie(d.s.A[i], d.s.a[j]);
        }
    }
    return d;
}

Endo24 remainder_closed(const BgDerivs& d)
{
    Endo24 X = Endo24::Zero();
    const auto& a = d.s.a;
    for (int i = 0; i < 3; ++i) {
        Mat8 g = gamma(i + 1), r = rho(i + 1);
        X -= kron(g, ad(d.E[i])) + kron(r, ad(d.dta[i]));
        for (int j = 0; j < 3; ++j) {
            X += kron(g * rho(j + 1), ad(d.Na[i][j]));
            if (i < j) {
                X += kron(g * gamma(j + 1), ad(d.F[i][j]));
                X += kron(r * rho(j + 1), ad(lie(a[i], a[j])));
            }
        }
    }
    return X;
}

Endo24 remainder_printed(const BgDerivs& d)
{
    const auto& a = d.s.a;
    const Vec3 Z = Vec3::Zero();
    const Vec3 B3 = d.F[0][1], E1 = d.E[0], E2 = d.E[1];
    const auto& N = d.Na;
    auto br = [&](int i, int j) { return lie(a[i - 1], a[j - 1]); };
    const std::array<std::array<Vec3, 8>, 8> T = {{
        {Z, -2 * B3, Z, 2 * E1, -N[0][0], -N[0][1], 2 * E2, Z},
        {2 * B3, Z, Z, 2 * E2, -N[1][0], -N[1][1], -2 * E1, Z},
        {Z, Z, Z, Z, Z, Z, Z, Z},
        {-2 * E1, -2 * E2, Z, Z, 2 * br(2, 3), 2 * br(3, 1), 2 * br(1, 2) - 2 * B3, Z},
        {N[0][0], N[0][1], Z, 2 * br(3, 2), Z, 2 * br(2, 1), 2 * br(3, 1), Z},
        {N[1][0], N[1][1], Z, 2 * br(1, 3), 2 * br(1, 2), Z, 2 * br(3, 2), Z},
        {-2 * E2, 2 * E1, Z, 2 * br(2, 1) + 2 * B3, 2 * br(1, 3), 2 * br(2, 3), Z, Z},
        {Z, Z, Z, Z, Z, Z, Z, Z},
    }};
    Endo24 X;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) X.block<3, 3>(3 * i, 3 * j) = ad(T[i][j]);
    return X;
}

BochnerResult bochner_check(BackgroundPtr bg, SectionPtr psi, const Point4& p, double h)
{
    // D^dagger D psi + sum_mu grad_mu grad_mu psi + sum_i ad(a_i)^2 psi by nested differences
    auto Dpsi = D_section(bg, psi, h, 2);
    Spinor8 fd = apply_D_dagger(*bg, *Dpsi, p);
    for (int mu = 0; mu < 4; ++mu) {
        auto inner = cov_section(bg, psi, mu, h, 2);
        auto outer = cov_section(bg, inner, mu, h, 2);
        fd += outer->value(p);
    }
    BgSample s = bg->at(p);
    Spinor8 v = psi->value(p);
    for (int i = 0; i < 3; ++i) fd += ad_all(s.a[i], ad_all(s.a[i], v));

    BgDerivs d = background_derivs(*bg, p, 1e-3 * std::max(1e-3, p[0]));
    Endo24 Xc = remainder_closed(d), Xp = remainder_printed(d);

    BochnerResult r;
    r.remainder_norm = fd.norm();
    r.residual_closed = (fd - Xc * v).norm();
    r.residual_printed = (fd - Xp * v).norm();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            r.block_mismatch[i][j] = (Xp.block<3, 3>(3 * i, 3 * j) - Xc.block<3, 3>(3 * i, 3 * j)).cwiseAbs().maxCoeff();
    r.symmetry_defect = (Xp - Xp.transpose()).cwiseAbs().maxCoeff();
    auto zero_part = [](const Endo24& X) {
        double z = 0.0;
        for (int k : {2, 7}) {
            z = std::max(z, X.block<3, 24>(3 * k, 0).cwiseAbs().maxCoeff());
            z = std::max(z, X.block<24, 3>(0, 3 * k).cwiseAbs().maxCoeff());
        }
        return z;
    };
    r.zero_rows_cols = zero_part(Xp);
    r.zero_rows_cols_closed = zero_part(Xc);
    return r;
}

}  // namespace kw
