#pragma once

// Plain-text liquid model files:
//
//   # comment
//   name = water
//   type = debye            # or: table
//   eps_inf = 4.5           # debye only
//   eps_static = 81         # debye only, optional consistency check
//   term = 73.5, 8.3        # delta_eps, tau_ps; repeatable
//
//   columns = nu_THz, eps_real, eps_imag   # table only, then one row per line
//   0.10, 2.61, 0.95
//
// eps'' is the loss (>= 0) in the eps = eps' + i eps'' convention.

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "impostoron/dielectric.hpp"

namespace impostoron {

LiquidModel parse_liquid(std::istream& in, std::string_view source = "<stream>");
LiquidModel parse_liquid_string(std::string_view text);
LiquidModel load_liquid(const std::filesystem::path& path);

/// Resolves a liquid file argument: the path itself if it exists, otherwise
/// the same relative name under $IMPOSTORON_DATA_DIR. Throws ParseError when
/// neither exists.
std::filesystem::path resolve_liquid_path(const std::filesystem::path& path);

std::string format_liquid(const LiquidModel& model);

}  // namespace impostoron
