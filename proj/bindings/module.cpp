#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "impostoron/constants.hpp"
#include "impostoron/csv.hpp"
#include "impostoron/errors.hpp"
#include "impostoron/liquid_file.hpp"
#include "impostoron/matching.hpp"
#include "impostoron/polaron.hpp"
#include "impostoron/signal.hpp"

namespace py = pybind11;
using namespace impostoron;

namespace {

Bracket bracket_from(std::pair<double, double> b) { return {b.first, b.second}; }

DopedLiquid doped(const LiquidModel& liquid, double ce_um) {
    return {liquid, Concentration::from_micromolar(ce_um)};
}

py::dict solution_dict(const ImpostoronSolution& s) {
    py::dict d;
    d["ce_1_uM"] = s.ce_1.micromolar();
    d["ce_2_uM"] = s.ce_2.micromolar();
    d["nu0"] = s.nu0;
    d["freq_residual"] = s.freq_residual;
    d["profile_residual"] = s.profile_residual;
    d["profile_matched"] = s.profile_matched;
    d["degenerate"] = s.degenerate;
    d["other_roots"] = s.other_roots;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Polaron resonances of solvated electrons and impostoron matching";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<RangeError>(m, "RangeError", base.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
    py::register_exception<NoRootError>(m, "NoRootError", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
    py::register_exception<GridError>(m, "GridError", base.ptr());
    py::register_exception<FitError>(m, "FitError", base.ptr());
    py::register_exception<PeakError>(m, "PeakError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    py::class_<LiquidModel>(m, "LiquidModel")
        .def_property_readonly("name", &LiquidModel::name)
        .def("__call__", [](const LiquidModel& l, double nu) { return eval_neat(l, nu); }, py::arg("nu_thz"))
        .def("__repr__", [](const LiquidModel& l) { return "<LiquidModel " + l.name() + ">"; });

    m.def("debye", [](const std::string& name, double eps_inf, const std::vector<std::pair<double, double>>& terms) {
            std::vector<DebyeTerm> t;
            for (const auto& [d, tau] : terms) t.push_back({d, tau});
            return LiquidModel(DebyeModel(name, eps_inf, std::move(t)));
        }, py::arg("name"), py::arg("eps_inf"), py::arg("terms") = std::vector<std::pair<double, double>>{},
        "Multi-Debye model from (delta_eps, tau_ps) pairs.");
    m.def("tabulated", [](const std::string& name, std::vector<double> nu, std::vector<std::complex<double>> eps) {
            return LiquidModel(TabulatedModel(name, std::move(nu), std::move(eps)));
        }, py::arg("name"), py::arg("nu_thz"), py::arg("eps"));
    m.def("load_liquid", [](const std::filesystem::path& p) { return load_liquid(p); }, py::arg("path"));
    m.def("parse_liquid", &parse_liquid_string, py::arg("text"));

    m.def("alpha_el", &alpha_el, py::arg("nu_thz"), py::arg("gamma_per_s") = 0.0,
          "Free-electron polarizability in m^3.");
    m.def("cm_mix", [](std::complex<double> neat, double ce_um, double nu) {
            return cm_mix(neat, Concentration::from_micromolar(ce_um), nu);
        }, py::arg("neat"), py::arg("ce_um"), py::arg("nu_thz"));
    m.def("cm_invert_concentration", [](std::complex<double> eps, std::complex<double> neat, double nu) {
            const auto c = cm_invert_concentration(eps, neat, nu);
            return std::complex<double>(c.real, c.imag) / kMolPerM3PerMicromolar;
        }, py::arg("eps"), py::arg("neat"), py::arg("nu_thz"), "Complex concentration in uM.");
    m.def("doped_permittivity", [](const LiquidModel& l, double ce_um, double nu) {
            return doped_permittivity(doped(l, ce_um), nu);
        }, py::arg("liquid"), py::arg("ce_um"), py::arg("nu_thz"));

    m.def("find_nu0", [](const LiquidModel& l, double ce_um, std::pair<double, double> bracket, double tol) {
            const auto r = find_nu0(doped(l, ce_um), bracket_from(bracket), {tol, 400, kDefaultDerivativeStep});
            py::dict d;
            d["nu0"] = r.nu0;
            d["eps_imag_at_nu0"] = r.eps_imag_at_nu0;
            d["slope_b"] = r.slope_b;
            d["ce_uM"] = r.ce.micromolar();
            d["other_crossings"] = r.other_crossings;
            return d;
        }, py::arg("liquid"), py::arg("ce_um"), py::arg("bracket") = std::pair{kDefaultBracket.lo, kDefaultBracket.hi},
        py::arg("tol") = 1e-6);
    m.def("eps_imag_at_nu0", &eps_imag_at_nu0, py::arg("neat_at_nu0"));
    m.def("ce_for_nu0", [](const LiquidModel& l, double nu0) { return ce_for_nu0(l, nu0).micromolar(); },
          py::arg("liquid"), py::arg("nu0_thz"), "Concentration in uM.");

    m.def("match_frequency", [](const LiquidModel& a, const LiquidModel& b, double nu0) {
            return solution_dict(match_frequency(a, b, nu0));
        }, py::arg("liquid_a"), py::arg("liquid_b"), py::arg("nu0_thz"));
    m.def("match_profiles", [](const LiquidModel& a, const LiquidModel& b, std::pair<double, double> bracket) {
            MatchOptions options;
            options.bracket = bracket_from(bracket);
            return solution_dict(match_profiles(a, b, options));
        }, py::arg("liquid_a"), py::arg("liquid_b"),
        py::arg("bracket") = std::pair{kDefaultBracket.lo, kDefaultBracket.hi});
    m.def("profile_mismatch", [](const LiquidModel& a, const LiquidModel& b, double nu) {
            return profile_mismatch(a, b, nu);
        }, py::arg("liquid_a"), py::arg("liquid_b"), py::arg("nu_thz"));

    m.def("lineshape", [](const LiquidModel& l, double ce_um, const std::vector<double>& nu) {
            return lineshape(doped(l, ce_um), nu).values;
        }, py::arg("liquid"), py::arg("ce_um"), py::arg("nu_thz"), "-Im[1/eps] on the given grid.");

    m.def("synth_map", [](const LiquidModel& l, double ce_um, double dt, std::size_t nt, double dtau, std::size_t n,
                          double tau_start, double step_amplitude, double rise_ps, std::optional<double> snr_db,
                          std::uint64_t seed) {
            const auto tau = uniform_grid(tau_start, dtau, n);
            const auto t = uniform_grid(-static_cast<double>(nt / 2) * dt, dt, nt);
            auto map = synth_map(doped(l, ce_um), probe_pulse(t), {step_amplitude, rise_ps, 0.0}, tau);
            if (snr_db) map = add_noise(std::move(map), *snr_db, seed);
            return py::make_tuple(map.t_grid, map.tau_grid, map.values);
        }, py::arg("liquid"), py::arg("ce_um"), py::arg("dt") = 0.1, py::arg("nt") = 64, py::arg("dtau") = 0.1,
        py::arg("n") = 512, py::arg("tau_start") = -5.0, py::arg("step_amplitude") = 1.0, py::arg("rise_ps") = 0.5,
        py::arg("snr_db") = py::none(), py::arg("seed") = 42,
        "Field map as (t_grid, tau_grid, row-major values with one row per delay).");

    m.def("extract", [](std::vector<double> t, std::vector<double> tau, std::vector<double> values,
                        double filter_thz) {
            ExtractOptions options;
            options.filter_bandwidth = filter_thz;
            const auto r = extract_pipeline({std::move(t), std::move(tau), std::move(values)}, options);
            py::dict d;
            d["peak_frequency"] = r.peak.peak_frequency;
            d["fwhm"] = r.peak.fwhm;
            d["amplitude"] = r.peak.amplitude;
            d["spectrum_nu"] = r.spectrum.frequencies;
            d["spectrum"] = r.spectrum.values;
            d["oscillation_tau"] = r.step.oscillation.times;
            d["oscillation"] = r.step.oscillation.values;
            return d;
        }, py::arg("t_grid"), py::arg("tau_grid"), py::arg("values"), py::arg("filter_thz") = kDefaultFilterBandwidth);
}
