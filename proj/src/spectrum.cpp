#include "impostoron/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "impostoron/errors.hpp"

namespace impostoron {

void validate(const Spectrum& spectrum) {
    if (spectrum.frequencies.size() != spectrum.values.size()) {
        throw DomainError(fmt::format("spectrum has {} frequencies but {} values", spectrum.frequencies.size(),
                                      spectrum.values.size()));
    }
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (!std::isfinite(spectrum.values[i]) || !std::isfinite(spectrum.frequencies[i])) {
            throw DomainError(fmt::format("spectrum has a non-finite entry at index {}", i));
        }
        if (i > 0 && !(spectrum.frequencies[i] > spectrum.frequencies[i - 1])) {
            throw DomainError("spectrum frequencies must be strictly increasing");
        }
    }
}

Spectrum restrict_band(const Spectrum& spectrum, double lo_thz, double hi_thz) {
    Spectrum out;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const double nu = spectrum.frequencies[i];
        if (nu >= lo_thz && nu <= hi_thz) {
            out.frequencies.push_back(nu);
            out.values.push_back(spectrum.values[i]);
        }
    }
    return out;
}

Spectrum normalized(Spectrum spectrum) {
    double peak = 0.0;
    for (double v : spectrum.values) peak = std::max(peak, std::abs(v));
    if (peak > 0.0) {
        for (double& v : spectrum.values) v /= peak;
    }
    return spectrum;
}

std::vector<double> linspace_step(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw DomainError(fmt::format("invalid grid [{}, {}] with step {}", lo, hi, step));
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw DomainError("linspace needs at least 2 points");
    std::vector<double> out(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
    out.back() = hi;
    return out;
}

}  // namespace impostoron
