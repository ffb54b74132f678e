#include "impostoron/polaron.hpp"

#include <cmath>

#include <fmt/format.h>

#include "impostoron/errors.hpp"

namespace impostoron {

namespace {

constexpr double kSingularLineshape = 1e-12;

double real_permittivity(const DopedLiquid& doped, double nu) { return doped_permittivity(doped, nu).real(); }

}  // namespace

void validate_bracket(const Bracket& bracket, const LiquidModel& model) {
    if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo) || !std::isfinite(bracket.hi)) {
        throw DomainError(fmt::format("bracket must satisfy 0 < lo < hi, got [{}, {}] THz", bracket.lo, bracket.hi));
    }
    if (bracket.lo < model.min_frequency() || bracket.hi > model.max_frequency()) {
        throw RangeError(fmt::format("bracket [{}, {}] THz leaves the range [{}, {}] THz of '{}'", bracket.lo,
                                     bracket.hi, model.min_frequency(), model.max_frequency(), model.name()));
    }
}

PolaronResonance find_nu0(const DopedLiquid& doped, Bracket bracket, const RootSearchOptions& options) {
    validate_bracket(bracket, doped.liquid);
    if (!(options.tol > 0.0)) throw DomainError(fmt::format("tolerance must be positive, got {}", options.tol));
    if (options.grid_points < 2) throw DomainError("root scan needs at least 2 grid points");

    const auto grid = linspace(bracket.lo, bracket.hi, static_cast<std::size_t>(options.grid_points));
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = real_permittivity(doped, grid[i]);

    std::vector<std::size_t> rising;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (values[i] < 0.0 && values[i + 1] >= 0.0) rising.push_back(i);
    }
    if (rising.empty()) {
        throw NoRootError(fmt::format("no polaron resonance in range [{}, {}] THz for '{}' at c_e = {} uM",
                                      bracket.lo, bracket.hi, doped.liquid.name(), doped.ce.micromolar()));
    }

    // Invariant: eps'(below) < 0 <= eps'(above).
    auto bisect = [&](std::size_t cell) {
        double below = grid[cell];
        double above = grid[cell + 1];
        for (int iter = 0; iter < 200 && above - below > options.tol; ++iter) {
            const double mid = 0.5 * (below + above);
            if (real_permittivity(doped, mid) < 0.0) {
                below = mid;
            } else {
                above = mid;
            }
        }
        return 0.5 * (below + above);
    };

    PolaronResonance res;
    res.nu0 = bisect(rising.front());
    res.ce = doped.ce;
    const double h = options.derivative_step;
    res.slope_b = (real_permittivity(doped, res.nu0 + h) - real_permittivity(doped, res.nu0 - h)) / (2.0 * h);
    res.eps_imag_at_nu0 = eps_imag_at_nu0(eval_neat(doped.liquid, res.nu0));
    for (std::size_t k = 1; k < rising.size(); ++k) res.other_crossings.push_back(bisect(rising[k]));
    return res;
}

double eps_imag_at_nu0(ComplexPermittivity neat_at_nu0) {
    const double denom = std::norm(neat_at_nu0) + 4.0 * neat_at_nu0.real() + 4.0;  // |eps + 2|^2
    if (!(denom > 0.0)) throw SingularityError("neat permittivity is -2: no consistent eps''(nu0)");
    const double ratio = neat_at_nu0.imag() / denom;
    if (ratio < 0.0) {
        throw DomainError(fmt::format("neat loss must be non-negative, got eps''_neat = {}", neat_at_nu0.imag()));
    }
    if (ratio > 0.25) {
        throw NoRootError(fmt::format("no consistent eps''(nu0): loss ratio {} exceeds 1/4", ratio));
    }
    if (ratio == 0.0) return 0.0;
    // (1 - sqrt(1 - 16R^2)) / 2R, rewritten without cancellation for small R.
    return 8.0 * ratio / (1.0 + std::sqrt(1.0 - 16.0 * ratio * ratio));
}

Spectrum lineshape(const DopedLiquid& doped, std::span<const double> frequencies_thz) {
    Spectrum out;
    out.frequencies.assign(frequencies_thz.begin(), frequencies_thz.end());
    out.values.reserve(frequencies_thz.size());
    for (double nu : frequencies_thz) {
        const auto eps = doped_permittivity(doped, nu);
        const double magnitude2 = std::norm(eps);
        if (std::sqrt(magnitude2) < kSingularLineshape) {
            throw SingularityError(fmt::format("singular line shape: |eps| < 1e-12 at nu = {} THz", nu));
        }
        out.values.push_back(eps.imag() / magnitude2);
    }
    return out;
}

Spectrum lorentz_lineshape(const PolaronResonance& resonance, std::span<const double> frequencies_thz) {
    const double loss = resonance.eps_imag_at_nu0;
    if (!(loss > 0.0)) {
        throw DegenerateError(
            fmt::format("degenerate line shape: eps''(nu0) = {} gives a delta-like resonance at {} THz", loss,
                        resonance.nu0));
    }
    Spectrum out;
    out.frequencies.assign(frequencies_thz.begin(), frequencies_thz.end());
    out.values.reserve(frequencies_thz.size());
    for (double nu : frequencies_thz) {
        const double x = resonance.slope_b * (nu - resonance.nu0) / loss;
        out.values.push_back(1.0 / (loss * (1.0 + x * x)));
    }
    return out;
}

}  // namespace impostoron
