#include <doctest.h>

#include <cmath>

#include "impostoron/constants.hpp"
#include "impostoron/errors.hpp"
#include "impostoron/liquid_file.hpp"
#include "impostoron/matching.hpp"
#include "oracles.hpp"

using namespace impostoron;

namespace {

LiquidModel flat(double eps) { return LiquidModel{DebyeModel("flat", eps, {})}; }

LiquidModel alcohol_like(double delta_eps) { return LiquidModel{DebyeModel("alc", 2.0, {{delta_eps, 1.0}})}; }

LiquidModel reference(const char* file) {
    return load_liquid(std::filesystem::path(IMPOSTORON_TEST_DATA_DIR) / file);
}

}  // namespace

TEST_CASE("concentration for a dispersionless resonance") {
    const auto c = ce_for_nu0(flat(2.449), 0.7);
    CHECK(c.micromolar() == doctest::Approx(25.0).epsilon(1e-3));
    const auto c2 = ce_for_nu0(flat(2.449), 1.4);
    CHECK(c2.micromolar() == doctest::Approx(4.0 * c.micromolar()).epsilon(1e-13));
    // Round trip against the analytic resonance.
    CHECK(static_cast<double>(oracle::dispersionless_nu0(2.449L, c.mol_per_m3())) ==
          doctest::Approx(0.7).epsilon(1e-13));
}

TEST_CASE("vacuum-like neat liquid needs the local-field plasma density") {
    // With eps_neat = 1 the resonance sits where the bare plasma frequency is
    // sqrt(3/2) nu0, i.e. the density is 3/2 of the plasma density at nu0.
    for (double nu0 : {0.3, 0.7, 2.0}) {
        const auto c = ce_for_nu0(flat(1.0), nu0);
        const double plasma = static_cast<double>(oracle::plasma_concentration(nu0));
        CHECK(c.mol_per_m3() == doctest::Approx(1.5 * plasma).epsilon(1e-12));
        CHECK(c.mol_per_m3() > 0.0);
    }
}

TEST_CASE("unreachable target frequency") {
    // A liquid whose eps' is already negative at nu0 would need negative electrons.
    const LiquidModel neg{TabulatedModel("neg", {0.1, 3.0}, {{-1.0, 0.1}, {-1.0, 0.1}})};
    CHECK_THROWS_WITH_AS(ce_for_nu0(neg, 0.7), doctest::Contains("target frequency unreachable"), DomainError);
}

TEST_CASE("concentration difference") {
    CHECK(concentration_difference(flat(2.449), flat(2.449), 0.7) == 0.0);
    // The more polar liquid needs more electrons to pull eps' down to zero.
    const double d = concentration_difference(flat(2.449), flat(3.0), 0.7);
    CHECK(d < 0.0);
    const auto analytic = [](oracle::ld eps) {
        return (0.7L / oracle::dispersionless_nu0(eps, 1.0L)) * (0.7L / oracle::dispersionless_nu0(eps, 1.0L));
    };
    CHECK(d == doctest::Approx(static_cast<double>(analytic(2.449L) - analytic(3.0L))).epsilon(1e-12));
    CHECK(d == doctest::Approx(ce_for_nu0(flat(2.449), 0.7).mol_per_m3() - ce_for_nu0(flat(3.0), 0.7).mol_per_m3())
                   .epsilon(1e-12));
    const auto w = reference("water.liq");
    const auto i = reference("ipa.liq");
    CHECK(concentration_difference(w, i, 0.7) ==
          doctest::Approx(ce_for_nu0(w, 0.7).mol_per_m3() - ce_for_nu0(i, 0.7).mol_per_m3()).epsilon(1e-10));
}

TEST_CASE("matching a liquid with itself") {
    const auto ipa = reference("ipa.liq");
    const auto s = match_frequency(ipa, ipa, 0.7);
    CHECK(s.ce_1.mol_per_m3() == s.ce_2.mol_per_m3());
    CHECK(s.freq_residual < 1e-6);
    CHECK(s.profile_residual == 0.0);
    CHECK(s.profile_matched);
    CHECK_FALSE(s.degenerate);
}

TEST_CASE("reference liquids at 0.7 THz need about 25, 30 and 40 uM") {
    const std::pair<const char*, double> cases[] = {{"ipa.liq", 25.0}, {"eg.liq", 30.0}, {"water.liq", 40.0}};
    for (const auto& [file, ce] : cases) {
        CHECK(ce_for_nu0(reference(file), 0.7).micromolar() == doctest::Approx(ce).epsilon(0.2));
    }
    const auto s = match_frequency(reference("ipa.liq"), reference("water.liq"), 0.7);
    CHECK(s.ce_1.micromolar() == doctest::Approx(25.0).epsilon(0.2));
    CHECK(s.ce_2.micromolar() == doctest::Approx(40.0).epsilon(0.2));
    CHECK(s.freq_residual < 2e-6);
    CHECK_FALSE(s.profile_matched);
}

TEST_CASE("dispersionless pair matches in frequency") {
    const auto s = match_frequency(flat(2.449), flat(3.0), 0.7);
    CHECK(s.freq_residual < 2e-6);
    CHECK(s.nu0 == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(std::isnan(s.profile_residual));
}

TEST_CASE("profile mismatch is antisymmetric and zero on the diagonal") {
    const auto a = alcohol_like(10.0);
    const auto b = alcohol_like(20.0);
    oracle::Gen gen(31);
    for (int i = 0; i < 20; ++i) {
        const double nu = gen.uniform(0.2, 2.5);
        CHECK(profile_mismatch(a, a, nu) == 0.0);
        CHECK(profile_mismatch(a, b, nu) == doctest::Approx(-profile_mismatch(b, a, nu)).epsilon(1e-12));
    }
    CHECK(std::isnan(profile_mismatch(flat(2.0), flat(3.0), 0.7)));
}

TEST_CASE("identical liquids are degenerate under profile matching") {
    const auto ipa = reference("ipa.liq");
    const auto s = match_profiles(ipa, ipa);
    CHECK(s.degenerate);
    CHECK(s.nu0 == kDefaultBracket.lo);
}

TEST_CASE("alcohol-like pair has a single profile-matched root") {
    const auto a = alcohol_like(10.0);
    const auto b = alcohol_like(20.0);
    const auto s = match_profiles(a, b);
    CHECK(s.profile_matched);
    CHECK(std::abs(s.profile_residual) < 1e-8);
    CHECK(s.other_roots.empty());
    CHECK_FALSE(s.degenerate);

    const auto g = [&](oracle::ld nu) { return static_cast<oracle::ld>(profile_mismatch(a, b, static_cast<double>(nu))); };
    const auto roots = oracle::dense_sign_changes(g, 0.1L, 3.0L, 3000);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(s.nu0 - static_cast<double>(roots[0])) < 2e-3);
}

TEST_CASE("water and an alcohol cannot be profile matched") {
    const auto water = reference("water.liq");
    for (const char* alcohol : {"ipa.liq", "eg.liq"}) {
        CHECK_THROWS_WITH_AS(match_profiles(reference(alcohol), water),
                             doctest::Contains("no profile-matched impostoron in range"), NoRootError);
    }
}

TEST_CASE("match errors name the liquid") {
    const LiquidModel neg{TabulatedModel("negative_one", {0.1, 3.0}, {{-1.0, 0.1}, {-1.0, 0.1}})};
    CHECK_THROWS_WITH(match_frequency(flat(2.0), neg, 0.7), doctest::Contains("negative_one"));
}
