#pragma once

namespace impostoron {

struct PhysicalConstants {
    double elementary_charge;    // C
    double electron_mass;        // kg
    double vacuum_permittivity;  // F/m
    double avogadro;             // 1/mol
};

// CODATA 2018 recommended values.
inline constexpr PhysicalConstants kConstants{
    1.602176634e-19,
    9.1093837015e-31,
    8.8541878128e-12,
    6.02214076e23,
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Unit conversions applied once at the interface boundary.
inline constexpr double kHzPerTHz = 1.0e12;
inline constexpr double kMolPerM3PerMicromolar = 1.0e-3;

}  // namespace impostoron
