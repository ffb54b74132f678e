#include "impostoron/mixing.hpp"

#include <cmath>

#include <fmt/format.h>

#include "impostoron/constants.hpp"
#include "impostoron/errors.hpp"

namespace impostoron {

namespace {

constexpr double kSingularityThreshold = 1e-12;

void require_positive_frequency(double nu_thz) {
    if (!(nu_thz > 0.0) || !std::isfinite(nu_thz)) {
        throw DomainError(fmt::format("electron polarizability has a pole at nu = 0; got nu = {} THz", nu_thz));
    }
}

std::complex<double> lorentz_lorenz(std::complex<double> eps, const char* which) {
    const auto denom = eps + 2.0;
    if (std::abs(denom) < kSingularityThreshold) {
        throw SingularityError(fmt::format("{} permittivity is -2: (eps - 1)/(eps + 2) diverges", which));
    }
    return (eps - 1.0) / denom;
}

// 3 / (N_A alpha_el) in mol/m^3 at gamma = 0 (alpha real and negative).
double inverse_molar_polarizability(double nu_thz) {
    return 3.0 / (kConstants.avogadro * alpha_el(nu_thz).real());
}

}  // namespace

Concentration Concentration::from_mol_per_m3(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError(fmt::format("concentration must be finite and >= 0, got {} mol/m^3", value));
    }
    return Concentration(value);
}

Concentration Concentration::from_micromolar(double value_um) {
    if (!(value_um >= 0.0) || !std::isfinite(value_um)) {
        throw DomainError(fmt::format("concentration must be finite and >= 0, got {} uM", value_um));
    }
    return Concentration(value_um * kMolPerM3PerMicromolar);
}

double Concentration::micromolar() const { return value_ / kMolPerM3PerMicromolar; }

std::complex<double> alpha_el(double nu_thz, double gamma_per_s) {
    require_positive_frequency(nu_thz);
    if (!(gamma_per_s >= 0.0)) {
        throw DomainError(fmt::format("damping rate gamma must be >= 0, got {} 1/s", gamma_per_s));
    }
    const double omega = 2.0 * kPi * nu_thz * kHzPerTHz;
    const double e = kConstants.elementary_charge;
    const std::complex<double> denom =
        kConstants.vacuum_permittivity * kConstants.electron_mass * std::complex<double>{omega * omega, gamma_per_s * omega};
    return -(e * e) / denom;
}

ComplexPermittivity cm_mix(ComplexPermittivity neat, Concentration ce, double nu_thz) {
    if (!std::isfinite(neat.real()) || !std::isfinite(neat.imag())) {
        throw DomainError("neat permittivity must be finite");
    }
    const auto alpha = alpha_el(nu_thz);
    if (ce.mol_per_m3() == 0.0) return neat;
    const auto local = lorentz_lorenz(neat, "neat") + ce.mol_per_m3() * kConstants.avogadro * alpha / 3.0;
    const auto denom = 1.0 - local;
    if (std::abs(denom) < kSingularityThreshold) {
        throw SingularityError(fmt::format("Clausius-Mossotti divergence at nu = {} THz, c_e = {} uM", nu_thz,
                                           ce.micromolar()));
    }
    return (1.0 + 2.0 * local) / denom;
}

ComplexConcentration cm_invert_concentration(ComplexPermittivity eps, ComplexPermittivity neat, double nu_thz) {
    const double scale = inverse_molar_polarizability(nu_thz);
    const auto c = scale * (lorentz_lorenz(eps, "doped") - lorentz_lorenz(neat, "neat"));
    return {c.real(), c.imag()};
}

double ce_real_part(double eps_imag_at_nu0, ComplexPermittivity neat, double nu0_thz) {
    const double x = eps_imag_at_nu0;
    const double sigma = std::norm(neat);
    const double a = neat.real();
    return inverse_molar_polarizability(nu0_thz) *
           ((x * x - 2.0) / (x * x + 4.0) - (sigma + a - 2.0) / (sigma + 4.0 * a + 4.0));
}

double ce_imag_part(double eps_imag_at_nu0, ComplexPermittivity neat, double nu0_thz) {
    const double x = eps_imag_at_nu0;
    const double sigma = std::norm(neat);
    const double a = neat.real();
    return inverse_molar_polarizability(nu0_thz) *
           (3.0 * x / (x * x + 4.0) - 3.0 * neat.imag() / (sigma + 4.0 * a + 4.0));
}

ComplexPermittivity doped_permittivity(const DopedLiquid& doped, double nu_thz) {
    return cm_mix(eval_neat(doped.liquid, nu_thz), doped.ce, nu_thz);
}

}  // namespace impostoron
