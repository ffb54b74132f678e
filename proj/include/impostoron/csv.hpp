#pragma once

// CSV file formats for signal data. Lines starting with '#' are metadata or
// comments and are skipped by the readers. Numbers are written in the shortest
// form that parses back to the identical double.
//
//   TimeTrace:  header "tau_ps,value", then "<tau>,<value>" rows
//   Spectrum:   header "nu_THz,value", then "<nu>,<value>" rows
//   FieldMap2D: header "tau_ps\t_ps,<t_0>,<t_1>,...", then "<tau_i>,<E(t_0,tau_i)>,..."
//   KeyValues:  header "key,value", then "<name>,<number>" rows (names may repeat)

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "impostoron/signal.hpp"
#include "impostoron/spectrum.hpp"

namespace impostoron {

inline constexpr std::string_view kMapCorner = "tau_ps\\t_ps";

void write_trace(std::ostream& out, const TimeTrace& trace, std::string_view value_label = "value");
void write_spectrum(std::ostream& out, const Spectrum& spectrum, std::string_view value_label = "value");
void write_map(std::ostream& out, const FieldMap2D& map);

TimeTrace read_trace(std::istream& in);
Spectrum read_spectrum(std::istream& in);
FieldMap2D read_map(std::istream& in);

/// Generic reader: header fields and numeric rows, comments skipped. Throws
/// ParseError on ragged rows or non-numeric fields.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
CsvTable read_csv(std::istream& in);

using KeyValues = std::vector<std::pair<std::string, double>>;
void write_key_values(std::ostream& out, const KeyValues& rows);
KeyValues read_key_values(std::istream& in);

std::string format_number(double value);

}  // namespace impostoron
