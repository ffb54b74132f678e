#pragma once

/**
 * @file matching.hpp
 * @brief Impostoron matching: electron concentrations that give two distinct
 * liquids the same polaron frequency, optionally with matched line profiles.
 */

#include <vector>

#include "impostoron/dielectric.hpp"
#include "impostoron/mixing.hpp"
#include "impostoron/polaron.hpp"

namespace impostoron {

struct ImpostoronSolution {
    Concentration ce_1;
    Concentration ce_2;
    double nu0 = 0.0;               // THz
    double freq_residual = 0.0;     // |nu0 found in liquid 1 - nu0 found in liquid 2|, THz
    /// (B1/eps''1 - B2/eps''2) divided by the mean of the two terms; NaN when a
    /// liquid is lossless at nu0 and the ratio is unbounded.
    double profile_residual = 0.0;
    bool profile_matched = false;
    /// Set when the profile mismatch vanishes across the whole bracket.
    bool degenerate = false;
    std::vector<double> other_roots;  // THz
};

struct MatchOptions {
    Bracket bracket = kDefaultBracket;
    RootSearchOptions root;
    double profile_tol = 1e-8;
};

/// Concentration whose resonance sits at nu0: Re(c_e) at eps = i eps''(nu0)
/// with eps''(nu0) from the neat liquid. Throws DomainError ("target frequency
/// unreachable") when that concentration is negative.
Concentration ce_for_nu0(const LiquidModel& liquid, double nu0_thz);

/// c_e(1) - c_e(2) in mol/m^3, evaluated from the expanded real-part formula.
double concentration_difference(const LiquidModel& liquid1, const LiquidModel& liquid2, double nu0_thz);

/// B/eps''(nu0) for the liquid doped to resonate at nu0, in 1/THz.
double profile_ratio(const LiquidModel& liquid, double nu0_thz, double derivative_step = kDefaultDerivativeStep);

/// (r1 - r2) / ((r1 + r2)/2) with r_i = profile_ratio(liquid_i, nu).
double profile_mismatch(const LiquidModel& liquid1, const LiquidModel& liquid2, double nu_thz,
                        double derivative_step = kDefaultDerivativeStep);

/// Same polaron frequency nu0 in both liquids; the profile is reported, not constrained.
ImpostoronSolution match_frequency(const LiquidModel& liquid1, const LiquidModel& liquid2, double nu0_thz,
                                   const MatchOptions& options = {});

/// Frequency in the bracket where the line profiles match as well. Throws
/// NoRootError("no profile-matched impostoron in range") when the mismatch
/// never changes sign.
ImpostoronSolution match_profiles(const LiquidModel& liquid1, const LiquidModel& liquid2,
                                  const MatchOptions& options = {});

}  // namespace impostoron
