#include "impostoron/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "impostoron/constants.hpp"
#include "impostoron/errors.hpp"

namespace impostoron {

namespace {

void require_positive_frequency(double nu_thz) {
    if (!(nu_thz > 0.0) || !std::isfinite(nu_thz)) {
        throw DomainError(fmt::format("frequency must be positive and finite, got {} THz", nu_thz));
    }
}

}  // namespace

DebyeModel::DebyeModel(std::string name, double eps_inf, std::vector<DebyeTerm> terms,
                       std::optional<double> eps_static)
    : name_(std::move(name)), eps_inf_(eps_inf), terms_(std::move(terms)) {
    if (!(eps_inf_ >= 1.0) || !std::isfinite(eps_inf_)) {
        throw DomainError(fmt::format("Debye model '{}': eps_inf must be >= 1, got {}", name_, eps_inf_));
    }
    for (const auto& term : terms_) {
        if (!(term.delta_eps > 0.0) || !(term.tau_ps > 0.0) || !std::isfinite(term.delta_eps) ||
            !std::isfinite(term.tau_ps)) {
            throw DomainError(fmt::format(
                "Debye model '{}': relaxation terms need delta_eps > 0 and tau > 0, got ({}, {} ps)",
                name_, term.delta_eps, term.tau_ps));
        }
    }
    if (eps_static) {
        const double computed = static_permittivity();
        if (std::abs(computed - *eps_static) > 1e-9 * std::max(1.0, std::abs(*eps_static))) {
            throw DomainError(fmt::format(
                "Debye model '{}': eps_inf + sum(delta_eps) = {} does not match eps_static = {}", name_,
                computed, *eps_static));
        }
    }
}

double DebyeModel::static_permittivity() const {
    double total = eps_inf_;
    for (const auto& term : terms_) total += term.delta_eps;
    return total;
}

ComplexPermittivity DebyeModel::operator()(double nu_thz) const {
    require_positive_frequency(nu_thz);
    ComplexPermittivity eps{eps_inf_, 0.0};
    for (const auto& term : terms_) {
        const double x = 2.0 * kPi * nu_thz * term.tau_ps;
        // delta / (1 - i x) = delta (1 + i x) / (1 + x^2)
        const double scale = term.delta_eps / (1.0 + x * x);
        eps += ComplexPermittivity{scale, scale * x};
    }
    return eps;
}

TabulatedModel::TabulatedModel(std::string name, std::vector<double> frequencies_thz,
                               std::vector<ComplexPermittivity> values)
    : name_(std::move(name)), frequencies_(std::move(frequencies_thz)), values_(std::move(values)) {
    if (frequencies_.size() != values_.size()) {
        throw DomainError(fmt::format("table '{}': {} frequencies but {} values", name_,
                                      frequencies_.size(), values_.size()));
    }
    if (frequencies_.size() < 2) {
        throw DomainError(fmt::format("table '{}': at least 2 samples required", name_));
    }
    for (std::size_t i = 0; i < frequencies_.size(); ++i) {
        if (!std::isfinite(frequencies_[i]) || !(frequencies_[i] > 0.0)) {
            throw DomainError(fmt::format("table '{}': frequency {} must be positive", name_, frequencies_[i]));
        }
        if (i > 0 && !(frequencies_[i] > frequencies_[i - 1])) {
            throw DomainError(fmt::format("table '{}': frequency grid must be strictly increasing at {} THz",
                                          name_, frequencies_[i]));
        }
        const auto& v = values_[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DomainError(fmt::format("table '{}': non-finite permittivity at {} THz", name_, frequencies_[i]));
        }
        if (v.imag() < 0.0) {
            throw DomainError(fmt::format("table '{}': eps'' = {} < 0 at {} THz (passive media only)", name_,
                                          v.imag(), frequencies_[i]));
        }
    }
}

ComplexPermittivity TabulatedModel::operator()(double nu_thz) const {
    require_positive_frequency(nu_thz);
    if (nu_thz < frequencies_.front() || nu_thz > frequencies_.back()) {
        throw RangeError(fmt::format("frequency {} THz outside table '{}' range [{}, {}] THz", nu_thz, name_,
                                     frequencies_.front(), frequencies_.back()));
    }
    const auto upper = std::upper_bound(frequencies_.begin(), frequencies_.end(), nu_thz);
    if (upper == frequencies_.end()) return values_.back();
    const auto hi = static_cast<std::size_t>(upper - frequencies_.begin());
    const std::size_t lo = hi - 1;
    if (nu_thz == frequencies_[lo]) return values_[lo];
    const double w = (nu_thz - frequencies_[lo]) / (frequencies_[hi] - frequencies_[lo]);
    return values_[lo] * (1.0 - w) + values_[hi] * w;
}

const std::string& LiquidModel::name() const {
    return std::visit([](const auto& m) -> const std::string& { return m.name(); }, model_);
}

double LiquidModel::min_frequency() const {
    if (const auto* table = std::get_if<TabulatedModel>(&model_)) return table->min_frequency();
    return 0.0;
}

double LiquidModel::max_frequency() const {
    if (const auto* table = std::get_if<TabulatedModel>(&model_)) return table->max_frequency();
    return std::numeric_limits<double>::infinity();
}

ComplexPermittivity eval_neat(const LiquidModel& model, double nu_thz) {
    return std::visit([nu_thz](const auto& m) { return m(nu_thz); }, model.variant());
}

std::complex<double> eval_neat_derivative(const LiquidModel& model, double nu_thz, double h_thz) {
    if (!(h_thz > 0.0)) {
        throw DomainError(fmt::format("derivative step must be positive, got {} THz", h_thz));
    }
    return (eval_neat(model, nu_thz + h_thz) - eval_neat(model, nu_thz - h_thz)) / (2.0 * h_thz);
}

}  // namespace impostoron
