#include "impostoron/csv.hpp"

#include <fmt/format.h>

#include "impostoron/errors.hpp"
#include "text_util.hpp"

namespace impostoron {

std::string format_number(double value) { return detail::format_double(value); }

namespace {

void write_columns(std::ostream& out, std::string_view x_label, std::string_view value_label,
                   const std::vector<double>& x, const std::vector<double>& y) {
    out << x_label << ',' << value_label << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) out << format_number(x[i]) << ',' << format_number(y[i]) << '\n';
}

std::pair<std::vector<double>, std::vector<double>> two_columns(std::istream& in, const char* what) {
    const auto table = read_csv(in);
    if (table.header.size() != 2) throw ParseError(fmt::format("{} CSV needs exactly 2 columns", what));
    std::pair<std::vector<double>, std::vector<double>> cols;
    for (const auto& row : table.rows) {
        cols.first.push_back(row[0]);
        cols.second.push_back(row[1]);
    }
    return cols;
}

}  // namespace

void write_trace(std::ostream& out, const TimeTrace& trace, std::string_view value_label) {
    write_columns(out, "tau_ps", value_label, trace.times, trace.values);
}

void write_spectrum(std::ostream& out, const Spectrum& spectrum, std::string_view value_label) {
    write_columns(out, "nu_THz", value_label, spectrum.frequencies, spectrum.values);
}

void write_map(std::ostream& out, const FieldMap2D& map) {
    out << kMapCorner;
    for (double t : map.t_grid) out << ',' << format_number(t);
    out << '\n';
    for (std::size_t i = 0; i < map.tau_grid.size(); ++i) {
        out << format_number(map.tau_grid[i]);
        for (std::size_t j = 0; j < map.t_grid.size(); ++j) out << ',' << format_number(map.at(i, j));
        out << '\n';
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string raw;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = detail::split(line, ',');
        if (!have_header) {
            for (auto f : fields) table.header.emplace_back(f);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ParseError(fmt::format("line {}: expected {} fields, got {}", line_no, table.header.size(), fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto f : fields) {
            const auto v = detail::parse_double(f);
            if (!v) throw ParseError(fmt::format("line {}: '{}' is not a number", line_no, f));
            row.push_back(*v);
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("CSV input has no header line");
    return table;
}

TimeTrace read_trace(std::istream& in) {
    auto [t, v] = two_columns(in, "trace");
    TimeTrace trace{std::move(t), std::move(v)};
    try {
        validate(trace);
    } catch (const Error& e) {
        throw ParseError(fmt::format("trace CSV: {}", e.what()));
    }
    return trace;
}

Spectrum read_spectrum(std::istream& in) {
    auto [f, v] = two_columns(in, "spectrum");
    Spectrum spectrum{std::move(f), std::move(v)};
    try {
        validate(spectrum);
    } catch (const Error& e) {
        throw ParseError(fmt::format("spectrum CSV: {}", e.what()));
    }
    return spectrum;
}

void write_key_values(std::ostream& out, const KeyValues& rows) {
    out << "key,value\n";
    for (const auto& [key, value] : rows) out << key << ',' << format_number(value) << '\n';
}

KeyValues read_key_values(std::istream& in) {
    KeyValues rows;
    std::string raw;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = detail::split(line, ',');
        if (fields.size() != 2) throw ParseError(fmt::format("line {}: expected 'key,value'", line_no));
        if (!have_header) {
            if (fields[0] != "key" || fields[1] != "value") throw ParseError("key/value CSV needs a 'key,value' header");
            have_header = true;
            continue;
        }
        const auto v = detail::parse_double(fields[1]);
        if (!v) throw ParseError(fmt::format("line {}: '{}' is not a number", line_no, fields[1]));
        rows.emplace_back(std::string(fields[0]), *v);
    }
    if (!have_header) throw ParseError("key/value CSV has no header line");
    return rows;
}

FieldMap2D read_map(std::istream& in) {
    std::string raw;
    int line_no = 0;
    FieldMap2D map;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = detail::split(line, ',');
        if (!have_header) {
            if (fields.size() < 2) throw ParseError("map header needs a corner label and t values");
            for (std::size_t j = 1; j < fields.size(); ++j) {
                const auto v = detail::parse_double(fields[j]);
                if (!v) throw ParseError(fmt::format("line {}: t value '{}' is not a number", line_no, fields[j]));
                map.t_grid.push_back(*v);
            }
            have_header = true;
            continue;
        }
        if (fields.size() != map.t_grid.size() + 1) {
            throw ParseError(fmt::format("line {}: expected {} fields, got {}", line_no, map.t_grid.size() + 1,
                                         fields.size()));
        }
        for (std::size_t j = 0; j < fields.size(); ++j) {
            const auto v = detail::parse_double(fields[j]);
            if (!v) throw ParseError(fmt::format("line {}: '{}' is not a number", line_no, fields[j]));
            if (j == 0) {
                map.tau_grid.push_back(*v);
            } else {
                map.values.push_back(*v);
            }
        }
    }
    if (!have_header) throw ParseError("map CSV has no header line");
    try {
        validate(map);
    } catch (const Error& e) {
        throw ParseError(fmt::format("map CSV: {}", e.what()));
    }
    return map;
}

}  // namespace impostoron
