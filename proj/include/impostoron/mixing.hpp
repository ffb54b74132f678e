#pragma once

/**
 * @file mixing.hpp
 * @brief Clausius-Mossotti mixing of solvated electrons into a polar liquid.
 *
 * The local-field relation
 *
 *     3 (eps - 1)/(eps + 2) = 3 (eps_neat - 1)/(eps_neat + 2) + c_e N_A alpha_el(nu)
 *
 * is evaluated forward (cm_mix) and inverted for the concentration
 * (cm_invert_concentration). Inside the formulas everything is SI: Hz,
 * mol/m^3 and m^3 polarizability. The public signatures take THz and a
 * Concentration whose micromolar view is what users see.
 */

#include <complex>

#include "impostoron/dielectric.hpp"

namespace impostoron {

/// Physical (real, non-negative) molar concentration.
class Concentration {
public:
    constexpr Concentration() = default;

    static Concentration from_mol_per_m3(double value);
    static Concentration from_micromolar(double value_um);

    constexpr double mol_per_m3() const { return value_; }
    double micromolar() const;

private:
    explicit constexpr Concentration(double value) : value_(value) {}
    double value_ = 0.0;
};

/// Raw output of the inverted relation; the imaginary part is a consistency
/// residual and is never silently dropped.
struct ComplexConcentration {
    double real = 0.0;  // mol/m^3
    double imag = 0.0;  // mol/m^3
};

struct DopedLiquid {
    LiquidModel liquid;
    Concentration ce;
};

/// Electron polarizability -e^2 / (eps0 m [w^2 + i gamma w]), w = 2 pi nu, in m^3.
std::complex<double> alpha_el(double nu_thz, double gamma_per_s = 0.0);

/// Permittivity of the liquid with electrons: L = (eps_neat-1)/(eps_neat+2) + c N_A alpha/3,
/// eps = (1 + 2L)/(1 - L). Throws SingularityError when |1 - L| < 1e-12.
ComplexPermittivity cm_mix(ComplexPermittivity neat, Concentration ce, double nu_thz);

/// c_e = 3/(N_A alpha) [ (eps-1)/(eps+2) - (eps_neat-1)/(eps_neat+2) ].
ComplexConcentration cm_invert_concentration(ComplexPermittivity eps, ComplexPermittivity neat, double nu_thz);

/// Real and imaginary parts of c_e at a zero of eps', written out with
/// Sigma_neat = |eps_neat|^2. They mirror cm_invert_concentration(i eps'', neat, nu0)
/// term by term and exist to cross-check the complex-arithmetic route.
double ce_real_part(double eps_imag_at_nu0, ComplexPermittivity neat, double nu0_thz);
double ce_imag_part(double eps_imag_at_nu0, ComplexPermittivity neat, double nu0_thz);

/// cm_mix(eval_neat(liquid, nu), ce, nu).
ComplexPermittivity doped_permittivity(const DopedLiquid& doped, double nu_thz);

}  // namespace impostoron
