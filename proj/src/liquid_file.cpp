#include "impostoron/liquid_file.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "impostoron/errors.hpp"
#include "text_util.hpp"

namespace impostoron {

namespace {

[[noreturn]] void fail(std::string_view source, int line, const std::string& what) {
    throw ParseError(fmt::format("{}:{}: {}", source, line, what));
}

double number_or_fail(std::string_view field, std::string_view source, int line) {
    const auto value = detail::parse_double(field);
    if (!value) fail(source, line, fmt::format("expected a number, got '{}'", field));
    return *value;
}

}  // namespace

LiquidModel parse_liquid(std::istream& in, std::string_view source) {
    std::optional<std::string> name;
    std::optional<std::string> type;
    std::optional<double> eps_inf;
    std::optional<double> eps_static;
    std::vector<DebyeTerm> terms;
    bool in_table = false;
    std::vector<double> freqs;
    std::vector<ComplexPermittivity> values;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            if (!in_table) fail(source, line_no, fmt::format("expected 'key = value', got '{}'", line));
            const auto fields = detail::split(line, ',');
            if (fields.size() != 3) fail(source, line_no, "table rows need 3 columns: nu_THz, eps_real, eps_imag");
            freqs.push_back(number_or_fail(fields[0], source, line_no));
            values.emplace_back(number_or_fail(fields[1], source, line_no),
                                number_or_fail(fields[2], source, line_no));
            continue;
        }
        if (in_table) fail(source, line_no, "keys are not allowed after the 'columns' line");

        const std::string key{detail::trim(line.substr(0, eq))};
        const auto value = detail::trim(line.substr(eq + 1));
        if (key == "name") {
            name = std::string(value);
        } else if (key == "type") {
            if (value != "debye" && value != "table") {
                fail(source, line_no, fmt::format("type must be 'debye' or 'table', got '{}'", value));
            }
            type = std::string(value);
        } else if (key == "eps_inf") {
            eps_inf = number_or_fail(value, source, line_no);
        } else if (key == "eps_static") {
            eps_static = number_or_fail(value, source, line_no);
        } else if (key == "term") {
            const auto fields = detail::split(value, ',');
            if (fields.size() != 2) fail(source, line_no, "term needs '<delta_eps>, <tau_ps>'");
            terms.push_back({number_or_fail(fields[0], source, line_no), number_or_fail(fields[1], source, line_no)});
        } else if (key == "columns") {
            const auto cols = detail::split(value, ',');
            if (cols.size() != 3 || cols[0] != "nu_THz" || cols[1] != "eps_real" || cols[2] != "eps_imag") {
                fail(source, line_no, "columns must be 'nu_THz, eps_real, eps_imag'");
            }
            in_table = true;
        } else {
            fail(source, line_no, fmt::format("unknown key '{}'", key));
        }
    }

    if (!name) fail(source, line_no, "missing 'name'");
    if (!type) fail(source, line_no, "missing 'type'");
    try {
        if (*type == "debye") {
            if (in_table) fail(source, line_no, "'columns' given for a debye model");
            if (!eps_inf) fail(source, line_no, "debye model needs 'eps_inf'");
            return DebyeModel(*name, *eps_inf, std::move(terms), eps_static);
        }
        if (eps_inf || eps_static || !terms.empty()) {
            fail(source, line_no, "eps_inf/eps_static/term are debye-only keys");
        }
        if (!in_table) fail(source, line_no, "table model needs a 'columns' line followed by rows");
        return TabulatedModel(*name, std::move(freqs), std::move(values));
    } catch (const DomainError& e) {
        throw ParseError(fmt::format("{}: {}", source, e.what()));
    }
}

LiquidModel parse_liquid_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_liquid(in, "<string>");
}

std::filesystem::path resolve_liquid_path(const std::filesystem::path& path) {
    if (std::filesystem::exists(path)) return path;
    if (path.is_relative()) {
        if (const char* dir = std::getenv("IMPOSTORON_DATA_DIR"); dir != nullptr && *dir != '\0') {
            auto candidate = std::filesystem::path(dir) / path;
            if (std::filesystem::exists(candidate)) return candidate;
        }
    }
    throw ParseError(fmt::format("liquid file '{}' not found (also searched $IMPOSTORON_DATA_DIR)", path.string()));
}

LiquidModel load_liquid(const std::filesystem::path& path) {
    const auto resolved = resolve_liquid_path(path);
    std::ifstream in(resolved);
    if (!in) throw ParseError(fmt::format("cannot open liquid file '{}'", resolved.string()));
    return parse_liquid(in, resolved.string());
}

std::string format_liquid(const LiquidModel& model) {
    std::string out = fmt::format("name = {}\n", model.name());
    if (const auto* debye = std::get_if<DebyeModel>(&model.variant())) {
        out += "type = debye\n";
        out += fmt::format("eps_inf = {}\n", detail::format_double(debye->eps_inf()));
        for (const auto& t : debye->terms()) {
            out += fmt::format("term = {}, {}\n", detail::format_double(t.delta_eps), detail::format_double(t.tau_ps));
        }
    } else {
        const auto& table = std::get<TabulatedModel>(model.variant());
        out += "type = table\ncolumns = nu_THz, eps_real, eps_imag\n";
        for (std::size_t i = 0; i < table.frequencies().size(); ++i) {
            out += fmt::format("{}, {}, {}\n", detail::format_double(table.frequencies()[i]),
                               detail::format_double(table.values()[i].real()),
                               detail::format_double(table.values()[i].imag()));
        }
    }
    return out;
}

}  // namespace impostoron
