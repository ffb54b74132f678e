#include <doctest.h>

#include <cmath>

#include "impostoron/constants.hpp"
#include "impostoron/errors.hpp"
#include "impostoron/mixing.hpp"
#include "oracles.hpp"

using namespace impostoron;

namespace {

double rel(double got, oracle::ld want) {
    return std::abs(got - static_cast<double>(want)) / std::abs(static_cast<double>(want));
}

}  // namespace

TEST_CASE("concentration units") {
    const auto c = Concentration::from_micromolar(25.0);
    CHECK(c.mol_per_m3() == doctest::Approx(0.025));
    CHECK(c.micromolar() == doctest::Approx(25.0));
    CHECK(Concentration::from_mol_per_m3(1.0).micromolar() == doctest::Approx(1000.0));
    CHECK_THROWS_AS(Concentration::from_micromolar(-1.0), DomainError);
    CHECK_THROWS_AS(Concentration::from_micromolar(NAN), DomainError);
    CHECK_THROWS_AS(Concentration::from_mol_per_m3(INFINITY), DomainError);
}

TEST_CASE("electron polarizability at 0.7 THz") {
    const auto a = alpha_el(0.7);
    CHECK(a.imag() == 0.0);
    CHECK(rel(a.real(), oracle::alpha(0.7L)) < 1e-14);
    CHECK(a.real() == doctest::Approx(-1.645e-22).epsilon(1e-3));
    CHECK_THROWS_AS(alpha_el(0.0), DomainError);
    CHECK_THROWS_AS(alpha_el(-0.1), DomainError);
    CHECK_THROWS_AS(alpha_el(0.7, -1.0), DomainError);
}

TEST_CASE("damping makes the polarizability lossy") {
    // Same sign convention as the permittivity: absorption is a positive imaginary part.
    const auto a = alpha_el(0.7, 1e12);
    CHECK(a.imag() > 0.0);
    CHECK(std::abs(a) < std::abs(alpha_el(0.7)));
}

TEST_CASE("polarizability scales as 1/nu^2") {
    oracle::Gen gen(21);
    for (int i = 0; i < 50; ++i) {
        const double nu = gen.uniform(0.05, 5.0);
        CHECK(alpha_el(2.0 * nu).real() == doctest::Approx(alpha_el(nu).real() / 4.0).epsilon(1e-14));
    }
}

TEST_CASE("cm_mix with no electrons is the identity") {
    oracle::Gen gen(22);
    for (int i = 0; i < 50; ++i) {
        const ComplexPermittivity neat{gen.uniform(1.0, 80.0), gen.uniform(0.0, 40.0)};
        CHECK(cm_mix(neat, Concentration{}, gen.uniform(0.1, 3.0)) == neat);
    }
}

TEST_CASE("dispersionless 2.449 with 25 uM is near zero at 0.7 THz") {
    const auto eps = cm_mix({2.449, 0.0}, Concentration::from_micromolar(25.0), 0.7);
    CHECK(std::abs(eps.real()) < 1e-3);
    CHECK(eps.imag() == 0.0);
    const auto ref = oracle::cm_mix({2.449L, 0.0L}, 0.025L, 0.7L);
    CHECK(std::abs(eps.real() - static_cast<double>(ref.real())) < 1e-14);
}

TEST_CASE("cm_mix agrees with the long double oracle") {
    oracle::Gen gen(23);
    for (int i = 0; i < 500; ++i) {
        const ComplexPermittivity neat{gen.uniform(1.0, 80.0), gen.uniform(0.0, 40.0)};
        const double ce = gen.uniform(0.0, 0.2);
        const double nu = gen.uniform(0.1, 3.0);
        const auto got = cm_mix(neat, Concentration::from_mol_per_m3(ce), nu);
        const auto want = std::complex<double>(oracle::cm_mix(neat, ce, nu));
        CHECK(std::abs(got - want) <= 1e-11 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("cm_mix signals the local-field singularity") {
    // Neat eps = -5 gives L_neat = 2; electrons pull L down through 1.
    const double nu = 1.0;
    const double ce = (1.0 - 2.0) * 3.0 / (kConstants.avogadro * alpha_el(nu).real());
    REQUIRE(ce > 0.0);
    CHECK_THROWS_AS(cm_mix({-5.0, 0.0}, Concentration::from_mol_per_m3(ce), nu), SingularityError);
    CHECK_THROWS_AS(cm_mix({-2.0, 0.0}, Concentration::from_micromolar(1.0), nu), SingularityError);
}

TEST_CASE("inverse of the neat permittivity is zero concentration") {
    const auto c = cm_invert_concentration({3.0, 1.0}, {3.0, 1.0}, 0.7);
    CHECK(c.real == 0.0);
    CHECK(c.imag == 0.0);
}

TEST_CASE("inversion at eps = 0.1i in the 2.449 liquid") {
    const auto c = cm_invert_concentration({0.0, 0.1}, {2.449, 0.0}, 0.7);
    CHECK(c.real * 1e3 == doctest::Approx(24.9).epsilon(0.01));
    const auto ref = oracle::cm_invert({0.0L, 0.1L}, {2.449L, 0.0L}, 0.7L);
    CHECK(rel(c.real, ref.real()) < 1e-12);
    CHECK(rel(c.imag, ref.imag()) < 1e-12);
    CHECK(ce_real_part(0.1, {2.449, 0.0}, 0.7) == doctest::Approx(c.real).epsilon(1e-13));
}

TEST_CASE("lossless case of the expanded formulas reduces to the real inversion") {
    const double nu = 0.9;
    const ComplexPermittivity neat{5.0, 0.0};
    CHECK(ce_imag_part(0.0, neat, nu) == 0.0);
    const auto direct = oracle::cm_invert({0.0L, 0.0L}, {5.0L, 0.0L}, nu);
    CHECK(rel(ce_real_part(0.0, neat, nu), direct.real()) < 1e-13);
}

TEST_CASE("doped permittivity composes the neat model and mixing") {
    const DopedLiquid d{LiquidModel{DebyeModel("w", 2.0, {{79.0, 8.3}})}, Concentration::from_micromolar(40.0)};
    const double nu = 0.6;
    CHECK(doped_permittivity(d, nu) == cm_mix(eval_neat(d.liquid, nu), d.ce, nu));
}
