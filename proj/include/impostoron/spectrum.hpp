#pragma once

#include <cstddef>
#include <vector>

namespace impostoron {

/// Values sampled on an increasing frequency grid (THz).
struct Spectrum {
    std::vector<double> frequencies;
    std::vector<double> values;

    std::size_t size() const { return frequencies.size(); }
};

/// Throws DomainError unless lengths match, frequencies increase and values are finite.
void validate(const Spectrum& spectrum);

/// Samples with lo <= nu <= hi.
Spectrum restrict_band(const Spectrum& spectrum, double lo_thz, double hi_thz);

/// Values scaled so the largest magnitude is 1; an all-zero spectrum is returned unchanged.
Spectrum normalized(Spectrum spectrum);

/// Evenly spaced points lo, lo + step, ... up to hi (inclusive within half a step).
std::vector<double> linspace_step(double lo, double hi, double step);
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace impostoron
