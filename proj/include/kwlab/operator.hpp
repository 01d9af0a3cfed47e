#pragma once

#include "kwlab/clifford.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace kw {

// (t, x1, x2, x3); on the model domain x1 + i x2 = z
using Point4 = std::array<double, 4>;
using Spinor8 = Eigen::Matrix<double, 24, 1>;

// slot order b1 b2 b3 bt c1 c2 c3 ct
enum Slot { B1 = 0, B2, B3, BT, C1, C2, C3, CT };

inline Vec3 slot(const Spinor8& s, int k) { return s.segment<3>(3 * k); }
inline void set_slot(Spinor8& s, int k, const Vec3& v) { s.segment<3>(3 * k) = v; }

struct BgSample {
    std::array<Vec3, 3> A;  // temporal gauge: no dt component
    std::array<Vec3, 3> a;
};

class Background {
public:
    virtual ~Background() = default;
    virtual BgSample at(const Point4& p) const = 0;
    virtual bool in_domain(const Point4&) const { return true; }
    virtual std::string name() const = 0;
};

using BackgroundPtr = std::shared_ptr<const Background>;

BackgroundPtr trivial_background();
BackgroundPtr nahm_background();
BackgroundPtr model_background(int m);
// t-independent band-limited pair (A, a) on the side-2pi torus, seeded
BackgroundPtr torus_background(std::uint64_t seed, double amplitude = 0.3);
// "trivial", "nahm", "model:<m>", "torus"
BackgroundPtr parse_background(const std::string& spec, std::uint64_t seed = 1);

class Section {
public:
    virtual ~Section() = default;
    virtual Spinor8 value(const Point4& p) const = 0;
    // partial derivative along coordinate mu; centered differences unless overridden
    virtual Spinor8 deriv(const Point4& p, int mu) const;

    double step = 1e-4;
    int order = 4;  // 2 or 4
};

using SectionPtr = std::shared_ptr<const Section>;

SectionPtr fn_section(std::function<Spinor8(const Point4&)> f, double step = 1e-4, int order = 4);

// trigonometric polynomial in all four coordinates with exact derivatives;
// periods 2pi in every coordinate, frequencies |n_mu| <= kmax
SectionPtr trig_section(std::uint64_t seed, int kmax = 1, bool t_dependent = true);

// random polynomial times Gaussian centred at c with width w; derivatives by differences
SectionPtr gauss_section(std::uint64_t seed, const Point4& c, double w, double step = 1e-4);

// constant matrix applied pointwise, derivatives forwarded exactly
SectionPtr mapped_section(const Endo24& m, SectionPtr s);

enum class Depiction { Components, Matrix, Clifford };

Spinor8 apply_D(const Background& bg, const Section& psi, const Point4& p, Depiction d);
Spinor8 apply_D_dagger(const Background& bg, const Section& psi, const Point4& p);
// gamma_i grad_i + rho_i [a_i, .]
Spinor8 apply_spatial(const Background& bg, const Section& psi, const Point4& p);

// sections whose value is D psi, D^dagger psi, or grad_mu psi (for nested differences)
SectionPtr D_section(BackgroundPtr bg, SectionPtr psi, double step, int order);
SectionPtr Ddag_section(BackgroundPtr bg, SectionPtr psi, double step, int order);
SectionPtr cov_section(BackgroundPtr bg, SectionPtr psi, int mu, double step, int order);

// symbolic entries of the 8x8 matrix depiction, e.g. "dt", "-n2", "a3", "0"
const std::array<std::array<const char*, 8>, 8>& matrix_depiction();

struct BgDerivs {
    std::array<Vec3, 3> E;                  // F_{t i}
    std::array<std::array<Vec3, 3>, 3> F;   // F_{ij}
    std::array<std::array<Vec3, 3>, 3> Na;  // grad_i a_j
    std::array<Vec3, 3> dta;                // d/dt a_i
    BgSample s;
};

BgDerivs background_derivs(const Background& bg, const Point4& p, double h = 1e-4);

// zeroth-order remainder of D^dagger D, closed form from the background derivatives
Endo24 remainder_closed(const BgDerivs& d);
// the printed 8x8 block table for S1-invariant backgrounds
Endo24 remainder_printed(const BgDerivs& d);

struct BochnerResult {
    double remainder_norm = 0.0;    // |nested-difference remainder|
    double residual_closed = 0.0;   // |fd - X_closed psi|
    double residual_printed = 0.0;  // |fd - X_printed psi|
    std::array<std::array<double, 8>, 8> block_mismatch{};  // max |X_printed - X_closed| per block
    double symmetry_defect = 0.0;   // of the printed table
    double zero_rows_cols = 0.0;    // max entry in rows/columns 3 and 8 of the printed table
    double zero_rows_cols_closed = 0.0;  // same for the closed form; zero only up to the derivative rounding
};

BochnerResult bochner_check(BackgroundPtr bg, SectionPtr psi, const Point4& p, double h);

// spatial part of D versus the complexified-derivative formulas
double spatial_identification(const Background& bg, const Section& psi, const Point4& p);

Spinor8 omega_apply(BackgroundPtr bg, SectionPtr xi, const Point4& p);
// restriction of D without the gamma3 grad_3 term
Spinor8 apply_Xi(const Background& bg, const Section& psi, const Point4& p);

double y_intertwine(BackgroundPtr bg, SectionPtr psi, const Point4& p);

struct ModeSpectrum {
    std::array<int, 3> k;
    std::vector<EigenCount> eig;
};

// eigenvalues of the symbol i gamma.k (x) id for |k|_inf <= k_max on the side-2pi torus
std::vector<ModeSpectrum> lattice_L_spectrum(int k_max);

struct PeriodicIntegrals {
    double D_sq = 0.0;       // int |D psi|^2
    double dt_sq = 0.0;      // int |d_t psi|^2
    double L_sq = 0.0;       // int |(gamma grad + rho [a,.]) psi|^2
    double duality = 0.0;    // |int <D psi, xi> - int <psi, D^dagger xi>|
    double scale = 0.0;      // int <D psi, xi> for reference
};

// trapezoid sums on the periodic box [0, 2pi]^4 with n points per side
PeriodicIntegrals periodic_integrals(const Background& bg, const Section& psi, const Section& xi, int n);

// duality defect on a box around c with compactly concentrated psi, xi
double duality_defect(const Background& bg, const Section& psi, const Section& xi, const Point4& c,
                      double half_width, int n, double* scale = nullptr);

}  // namespace kw
