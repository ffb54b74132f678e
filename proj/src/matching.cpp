#include "impostoron/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "impostoron/constants.hpp"
#include "impostoron/errors.hpp"

namespace impostoron {

namespace {

template <typename Fn>
auto for_liquid(const LiquidModel& liquid, Fn&& fn) {
    try {
        return fn();
    } catch (const NoRootError& e) {
        throw NoRootError(fmt::format("liquid '{}': {}", liquid.name(), e.what()));
    } catch (const DomainError& e) {
        throw DomainError(fmt::format("liquid '{}': {}", liquid.name(), e.what()));
    }
}

// Default bracket widened so that it always contains the target.
Bracket search_bracket(const MatchOptions& options, const LiquidModel& liquid, double nu0) {
    Bracket b{std::min(options.bracket.lo, 0.5 * nu0), std::max(options.bracket.hi, 2.0 * nu0)};
    b.lo = std::max(b.lo, liquid.min_frequency());
    b.hi = std::min(b.hi, liquid.max_frequency());
    return b;
}

double relative_mismatch(double r1, double r2) {
    if (!std::isfinite(r1) || !std::isfinite(r2)) return std::numeric_limits<double>::quiet_NaN();
    if (r1 == r2) return 0.0;
    return (r1 - r2) / (0.5 * (r1 + r2));
}

}  // namespace

Concentration ce_for_nu0(const LiquidModel& liquid, double nu0_thz) {
    const auto neat = eval_neat(liquid, nu0_thz);
    const double loss = eps_imag_at_nu0(neat);
    const auto c = cm_invert_concentration({0.0, loss}, neat, nu0_thz);
    if (c.real < 0.0) {
        throw DomainError(fmt::format("target frequency unreachable: {} THz needs c_e = {} uM < 0 in '{}'", nu0_thz,
                                      c.real / kMolPerM3PerMicromolar, liquid.name()));
    }
    return Concentration::from_mol_per_m3(c.real);
}

double concentration_difference(const LiquidModel& liquid1, const LiquidModel& liquid2, double nu0_thz) {
    auto bracket_terms = [nu0_thz](const LiquidModel& liquid) {
        const auto neat = eval_neat(liquid, nu0_thz);
        const double x = eps_imag_at_nu0(neat);
        const double sigma = std::norm(neat);
        const double a = neat.real();
        return (x * x - 2.0) / (x * x + 4.0) - (sigma + a - 2.0) / (sigma + 4.0 * a + 4.0);
    };
    const double scale = 3.0 / (kConstants.avogadro * alpha_el(nu0_thz).real());
    return scale * (bracket_terms(liquid1) - bracket_terms(liquid2));
}

double profile_ratio(const LiquidModel& liquid, double nu0_thz, double derivative_step) {
    const DopedLiquid doped{liquid, ce_for_nu0(liquid, nu0_thz)};
    const double h = derivative_step;
    const double slope =
        (doped_permittivity(doped, nu0_thz + h).real() - doped_permittivity(doped, nu0_thz - h).real()) / (2.0 * h);
    const double loss = eps_imag_at_nu0(eval_neat(liquid, nu0_thz));
    if (loss == 0.0) return std::copysign(std::numeric_limits<double>::infinity(), slope);
    return slope / loss;
}

double profile_mismatch(const LiquidModel& liquid1, const LiquidModel& liquid2, double nu_thz,
                        double derivative_step) {
    const double r1 = for_liquid(liquid1, [&] { return profile_ratio(liquid1, nu_thz, derivative_step); });
    const double r2 = for_liquid(liquid2, [&] { return profile_ratio(liquid2, nu_thz, derivative_step); });
    return relative_mismatch(r1, r2);
}

ImpostoronSolution match_frequency(const LiquidModel& liquid1, const LiquidModel& liquid2, double nu0_thz,
                                   const MatchOptions& options) {
    ImpostoronSolution sol;
    sol.nu0 = nu0_thz;
    sol.ce_1 = for_liquid(liquid1, [&] { return ce_for_nu0(liquid1, nu0_thz); });
    sol.ce_2 = for_liquid(liquid2, [&] { return ce_for_nu0(liquid2, nu0_thz); });
    const auto found1 = for_liquid(liquid1, [&] {
        return find_nu0({liquid1, sol.ce_1}, search_bracket(options, liquid1, nu0_thz), options.root);
    });
    const auto found2 = for_liquid(liquid2, [&] {
        return find_nu0({liquid2, sol.ce_2}, search_bracket(options, liquid2, nu0_thz), options.root);
    });
    sol.freq_residual = std::abs(found1.nu0 - found2.nu0);
    sol.profile_residual = profile_mismatch(liquid1, liquid2, nu0_thz, options.root.derivative_step);
    sol.profile_matched = std::abs(sol.profile_residual) <= options.profile_tol;
    return sol;
}

ImpostoronSolution match_profiles(const LiquidModel& liquid1, const LiquidModel& liquid2,
                                  const MatchOptions& options) {
    validate_bracket(options.bracket, liquid1);
    validate_bracket(options.bracket, liquid2);
    const double h = options.root.derivative_step;
    auto g = [&](double nu) { return profile_mismatch(liquid1, liquid2, nu, h); };

    const auto grid = linspace(options.bracket.lo, options.bracket.hi,
                               static_cast<std::size_t>(std::max(options.root.grid_points, 2)));
    std::vector<double> values(grid.size());
    bool all_zero = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = g(grid[i]);
        if (!(std::abs(values[i]) <= options.profile_tol)) all_zero = false;
    }

    auto finish = [&](double nu0, std::vector<double> others) {
        auto sol = match_frequency(liquid1, liquid2, nu0, options);
        sol.profile_matched = true;
        sol.other_roots = std::move(others);
        return sol;
    };

    if (all_zero) {
        auto sol = finish(options.bracket.lo, {});
        sol.degenerate = true;
        return sol;
    }

    // Bisection keeps g(a) and g(b) of opposite sign; a sign flip across a pole
    // leaves |g| large and is discarded.
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double ga = values[i];
        double gb = values[i + 1];
        if (!std::isfinite(ga) || !std::isfinite(gb)) continue;
        if (ga == 0.0) {
            if (roots.empty() || roots.back() != grid[i]) roots.push_back(grid[i]);
            continue;
        }
        if (!(ga * gb < 0.0)) continue;
        double a = grid[i];
        double b = grid[i + 1];
        double mid = 0.5 * (a + b);
        double gm = g(mid);
        for (int iter = 0; iter < 200 && b - a > 1e-13 * b && gm != 0.0; ++iter) {
            if ((gm < 0.0) == (ga < 0.0)) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
            }
            mid = 0.5 * (a + b);
            gm = g(mid);
        }
        if (std::abs(gm) <= options.profile_tol) roots.push_back(mid);
    }
    if (values.back() == 0.0 && (roots.empty() || roots.back() != grid.back())) roots.push_back(grid.back());

    if (roots.empty()) {
        throw NoRootError(fmt::format("no profile-matched impostoron in range [{}, {}] THz for '{}' and '{}'",
                                      options.bracket.lo, options.bracket.hi, liquid1.name(), liquid2.name()));
    }
    return finish(roots.front(), std::vector<double>(roots.begin() + 1, roots.end()));
}

}  // namespace impostoron
