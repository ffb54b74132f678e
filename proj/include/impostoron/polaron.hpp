#pragma once

/**
 * @file polaron.hpp
 * @brief Polaron resonance of a doped liquid: the frequency nu0 where
 * eps'(nu0, c_e) = 0, the loss eps''(nu0) fixed by the neat liquid alone, and
 * the loss-function line shape -Im[1/eps] with its Lorentzian approximation.
 */

#include <span>
#include <vector>

#include "impostoron/dielectric.hpp"
#include "impostoron/mixing.hpp"
#include "impostoron/spectrum.hpp"

namespace impostoron {

struct Bracket {
    double lo;  // THz
    double hi;  // THz
};

inline constexpr Bracket kDefaultBracket{0.1, 3.0};

struct RootSearchOptions {
    double tol = 1e-6;                           // THz, final bisection interval width
    int grid_points = 400;                       // sign-change pre-scan
    double derivative_step = kDefaultDerivativeStep;  // THz
};

struct PolaronResonance {
    double nu0 = 0.0;              // THz
    double eps_imag_at_nu0 = 0.0;  // from the neat liquid at nu0
    double slope_b = 0.0;          // d eps'/d nu at nu0, 1/THz
    Concentration ce;
    /// Further rising zero crossings found by the scan (THz), lowest excluded.
    std::vector<double> other_crossings;
};

/// Throws DomainError for a bracket that is not 0 < lo < hi and RangeError when
/// it leaves the model's range.
void validate_bracket(const Bracket& bracket, const LiquidModel& model);

/// Lowest rising zero of eps'(nu) in the bracket: uniform sign-change scan,
/// then bisection. Throws NoRootError("no polaron resonance in range") when
/// eps' never rises through zero.
PolaronResonance find_nu0(const DopedLiquid& doped, Bracket bracket = kDefaultBracket,
                          const RootSearchOptions& options = {});

/// Small root of x/(x^2 + 4) = R, R = eps''_neat / (Sigma_neat + 4 eps'_neat + 4).
/// Throws NoRootError for R > 1/4 and DomainError for R < 0.
double eps_imag_at_nu0(ComplexPermittivity neat_at_nu0);

/// -Im[1/eps] = eps'' / (eps'^2 + eps''^2) of the doped liquid.
/// Throws SingularityError if |eps| < 1e-12 at any frequency.
Spectrum lineshape(const DopedLiquid& doped, std::span<const double> frequencies_thz);

/// (1/eps'') [1 + (B (nu - nu0)/eps'')^2]^-1. Throws DegenerateError when eps''(nu0) = 0.
Spectrum lorentz_lineshape(const PolaronResonance& resonance, std::span<const double> frequencies_thz);

}  // namespace impostoron
