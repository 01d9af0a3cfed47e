#include "kwlab/clifford.hpp"

#include <doctest.h>

using namespace kw;

TEST_CASE("generators satisfy the anticommutation relations exactly")
{
    const auto& c = load_clifford();
    const Mat8i id = Mat8i::Identity();
    CHECK(c.gamma[0] * c.gamma[0] == -id);
    CHECK(c.gamma[0] * c.rho[1] + c.rho[1] * c.gamma[0] == Mat8i::Zero());
    CHECK(c.rho[2].trace() == 0);
    for (const auto& r : clifford_relations(c)) {
        INFO(r.name);
        CHECK(r.mismatches == 0);
    }
}

TEST_CASE("product of the rho generators anticommutes with every gamma")
{
    const auto& c = load_clifford();
    const Mat8i r123 = c.rho[0] * c.rho[1] * c.rho[2];
    for (int i = 0; i < 3; ++i) CHECK(r123 * c.gamma[i] + c.gamma[i] * r123 == Mat8i::Zero());
}

TEST_CASE("derived endomorphisms")
{
    const DerivedEndos d = derived_endos();
    const auto q = antisymmetric_spectrum(d.Q);
    REQUIRE(q.size() == 4);
    const double want[4] = {-3, -1, 1, 3};
    int total = 0;
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(q[i].value - want[i]) < 1e-10);
        total += q[i].multiplicity;
    }
    CHECK(total == 24);
    CHECK((d.L * d.L - Endo24::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.Y * d.Y + Endo24::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((U_endo(1.0, 0.0, 0.0) - Mat8::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS(U_endo(0.0, 0.0, 0.0));
}

TEST_CASE("Y is the componentwise exchange of the b and c blocks")
{
    const Mat8i Y = derived_endos().Y8;
    for (int i = 0; i < 3; ++i) {
        CHECK(Y(i, 4 + i) == -1);
        CHECK(Y(4 + i, i) == 1);
    }
    CHECK(Y(3, 7) == 1);
    CHECK(Y(7, 3) == -1);
    CHECK(Y.cwiseAbs().sum() == 8);
}

TEST_CASE("pole endomorphism spectrum")
{
    for (double t : {1.0, 2.0}) {
        const auto s = symmetric_spectrum(nahm_pole_endo(t));
        REQUIRE(s.size() == 4);
        const double want[4] = {-2 / t, -1 / t, 1 / t, 2 / t};
        int mult = 0;
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(s[i].value - want[i]) < 1e-10);
            mult += s[i].multiplicity;
        }
        CHECK(mult == 24);
        CHECK(s[0].multiplicity == s[3].multiplicity);
        CHECK(s[1].multiplicity == s[2].multiplicity);
    }
    CHECK_THROWS(nahm_pole_endo(0.0));
}
