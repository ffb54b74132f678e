#pragma once

/**
 * @file dielectric.hpp
 * @brief Dielectric function of a neat polar liquid.
 *
 * Convention: eps = eps' + i eps'' with eps'' >= 0 for a lossy (passive)
 * medium. A Debye relaxation term therefore reads
 *
 *     delta_eps / (1 - i 2 pi nu tau)
 *
 * Frequencies are in THz and relaxation times in ps, so 2 pi nu tau is
 * dimensionless without conversion.
 */

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace impostoron {

using ComplexPermittivity = std::complex<double>;

struct DebyeTerm {
    double delta_eps;
    double tau_ps;
};

/// Multi-Debye relaxation model eps(nu) = eps_inf + sum_k delta_k / (1 - i 2 pi nu tau_k).
class DebyeModel {
public:
    /// Throws DomainError when eps_inf < 1, any delta_eps or tau is not
    /// strictly positive, or the static limit disagrees with eps_static.
    DebyeModel(std::string name, double eps_inf, std::vector<DebyeTerm> terms,
               std::optional<double> eps_static = std::nullopt);

    const std::string& name() const { return name_; }
    double eps_inf() const { return eps_inf_; }
    const std::vector<DebyeTerm>& terms() const { return terms_; }

    /// eps(0) = eps_inf + sum delta_eps.
    double static_permittivity() const;

    ComplexPermittivity operator()(double nu_thz) const;

private:
    std::string name_;
    double eps_inf_;
    std::vector<DebyeTerm> terms_;
};

/// Sampled dielectric function, linearly interpolated in eps' and eps''.
class TabulatedModel {
public:
    TabulatedModel(std::string name, std::vector<double> frequencies_thz,
                   std::vector<ComplexPermittivity> values);

    const std::string& name() const { return name_; }
    const std::vector<double>& frequencies() const { return frequencies_; }
    const std::vector<ComplexPermittivity>& values() const { return values_; }
    double min_frequency() const { return frequencies_.front(); }
    double max_frequency() const { return frequencies_.back(); }

    ComplexPermittivity operator()(double nu_thz) const;

private:
    std::string name_;
    std::vector<double> frequencies_;
    std::vector<ComplexPermittivity> values_;
};

class LiquidModel {
public:
    LiquidModel(DebyeModel model) : model_(std::move(model)) {}
    LiquidModel(TabulatedModel model) : model_(std::move(model)) {}

    const std::string& name() const;
    const std::variant<DebyeModel, TabulatedModel>& variant() const { return model_; }

    /// Closed validity interval; Debye models are valid on (0, inf).
    double min_frequency() const;
    double max_frequency() const;

private:
    std::variant<DebyeModel, TabulatedModel> model_;
};

inline constexpr double kDefaultDerivativeStep = 1.0e-3;  // THz

/// eps_neat(nu). Throws DomainError for nu <= 0 and RangeError outside a table.
ComplexPermittivity eval_neat(const LiquidModel& model, double nu_thz);

/// Central difference (eps(nu + h) - eps(nu - h)) / 2h, in 1/THz.
std::complex<double> eval_neat_derivative(const LiquidModel& model, double nu_thz,
                                          double h_thz = kDefaultDerivativeStep);

}  // namespace impostoron
