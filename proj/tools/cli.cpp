#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "impostoron/csv.hpp"
#include "impostoron/errors.hpp"
#include "impostoron/liquid_file.hpp"
#include "impostoron/matching.hpp"
#include "impostoron/polaron.hpp"
#include "impostoron/signal.hpp"

#ifndef IMPOSTORON_VERSION
#define IMPOSTORON_VERSION "dev"
#endif

namespace impostoron::cli {

namespace {

struct RunConfig {
    std::string out_path;
    std::string liquid;
    std::string liquid_a;
    std::string liquid_b;
    std::string input;
    double ce_um = 0.0;
    std::optional<double> nu0;
    bool profile = false;
    std::vector<double> bracket{kDefaultBracket.lo, kDefaultBracket.hi};
    double tol = 1e-6;
    int grid = 400;
    double profile_tol = 1e-8;
    double nu_min = 0.1;
    double nu_max = 3.0;
    double nu_step = 0.01;
    bool lorentz = false;
    bool map = false;
    double dt = 0.1;
    double dtau = 0.1;
    std::size_t n = 512;
    std::size_t nt = 64;
    double tau_start = -5.0;
    std::vector<double> band{kDefaultSynthesisBand.lo, kDefaultSynthesisBand.hi};
    double step_amp = 1.0;
    double rise = 0.5;
    std::optional<double> snr_db;
    std::uint64_t seed = 42;
    double probe_center = 0.7;
    double probe_width = 0.5;
    double filter_thz = kDefaultFilterBandwidth;
    std::string filter_shape = "radial";
    std::vector<double> analysis_band{0.3, 2.0};
    std::string window = "none";
    double onset = 0.0;
    std::string trace_out;
    std::string spectrum_out;
};

// Validation failures of flag values are usage errors (exit 2).
[[noreturn]] void usage(const std::string& what) { throw CLI::ValidationError(what); }

Bracket to_bracket(const std::vector<double>& v, const char* flag) {
    if (v.size() != 2 || !(v[0] > 0.0) || !(v[1] > v[0])) usage(fmt::format("{} needs 0 < lo < hi", flag));
    return {v[0], v[1]};
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(fmt::format("cannot open output file '{}'", path));
        }
        stream_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void write_metadata(std::ostream& out, const std::string& command, const std::vector<std::string>& inputs) {
    out << "# impostoron " << IMPOSTORON_VERSION << ' ' << command << '\n';
    for (const auto& path : inputs) out << "# input: " << path << " fnv1a64=" << file_digest(path) << '\n';
}

std::string resolved(const std::string& liquid) { return resolve_liquid_path(liquid).string(); }

void run_eps(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.nu_max >= cfg.nu_min)) usage("--nu-max must be >= --nu-min");
    const auto path = resolved(cfg.liquid);
    const DopedLiquid doped{load_liquid(path), Concentration::from_micromolar(cfg.ce_um)};
    write_metadata(out, "eps", {path});
    out << "nu_THz,eps_real,eps_imag\n";
    for (double nu : linspace_step(cfg.nu_min, cfg.nu_max, cfg.nu_step)) {
        const auto eps = doped_permittivity(doped, nu);
        out << format_number(nu) << ',' << format_number(eps.real()) << ',' << format_number(eps.imag()) << '\n';
    }
}

void run_nu0(const RunConfig& cfg, std::ostream& out) {
    const auto bracket = to_bracket(cfg.bracket, "--bracket");
    const auto path = resolved(cfg.liquid);
    const DopedLiquid doped{load_liquid(path), Concentration::from_micromolar(cfg.ce_um)};
    const auto res = find_nu0(doped, bracket, {cfg.tol, cfg.grid, kDefaultDerivativeStep});
    write_metadata(out, "nu0", {path});
    KeyValues rows{{"nu0_THz", res.nu0},
                                                     {"eps_imag_at_nu0", res.eps_imag_at_nu0},
                                                     {"slope_B_per_THz", res.slope_b},
                                                     {"ce_uM", res.ce.micromolar()}};
    for (double other : res.other_crossings) rows.emplace_back("other_crossing_THz", other);
    write_key_values(out, rows);
}

void run_ce_for_nu0(const RunConfig& cfg, std::ostream& out) {
    const auto path = resolved(cfg.liquid);
    const auto ce = ce_for_nu0(load_liquid(path), *cfg.nu0);
    write_metadata(out, "ce-for-nu0", {path});
    write_key_values(out, {{"nu0_THz", *cfg.nu0}, {"ce_uM", ce.micromolar()}});
}

void run_match(const RunConfig& cfg, std::ostream& out) {
    if (cfg.profile == cfg.nu0.has_value()) usage("match needs exactly one of --nu0 or --profile");
    MatchOptions options;
    options.bracket = to_bracket(cfg.bracket, "--bracket");
    options.root = {cfg.tol, cfg.grid, kDefaultDerivativeStep};
    options.profile_tol = cfg.profile_tol;
    const auto path_a = resolved(cfg.liquid_a);
    const auto path_b = resolved(cfg.liquid_b);
    const auto a = load_liquid(path_a);
    const auto b = load_liquid(path_b);
    const auto sol = cfg.profile ? match_profiles(a, b, options) : match_frequency(a, b, *cfg.nu0, options);
    write_metadata(out, "match", {path_a, path_b});
    KeyValues rows{{"ce_1_uM", sol.ce_1.micromolar()},
                                                     {"ce_2_uM", sol.ce_2.micromolar()},
                                                     {"nu0_THz", sol.nu0},
                                                     {"freq_residual_THz", sol.freq_residual},
                                                     {"profile_residual", sol.profile_residual},
                                                     {"profile_matched", sol.profile_matched ? 1.0 : 0.0},
                                                     {"degenerate", sol.degenerate ? 1.0 : 0.0}};
    for (double other : sol.other_roots) rows.emplace_back("other_root_THz", other);
    write_key_values(out, rows);
}

void run_lineshape(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.nu_max >= cfg.nu_min)) usage("--nu-max must be >= --nu-min");
    const auto path = resolved(cfg.liquid);
    const DopedLiquid doped{load_liquid(path), Concentration::from_micromolar(cfg.ce_um)};
    const auto grid = linspace_step(cfg.nu_min, cfg.nu_max, cfg.nu_step);
    Spectrum spectrum;
    if (cfg.lorentz) {
        const auto res = find_nu0(doped, to_bracket(cfg.bracket, "--bracket"), {cfg.tol, cfg.grid, kDefaultDerivativeStep});
        spectrum = lorentz_lineshape(res, grid);
    } else {
        spectrum = lineshape(doped, grid);
    }
    write_metadata(out, cfg.lorentz ? "lineshape --lorentz" : "lineshape", {path});
    write_spectrum(out, spectrum, "neg_im_inv_eps");
}

void run_synth(const RunConfig& cfg, std::ostream& out) {
    if (cfg.n < kMinTraceSamples) usage(fmt::format("--n must be at least {}", kMinTraceSamples));
    if (cfg.nt < 2) usage("--nt must be at least 2");
    const auto band = to_bracket(cfg.band, "--band");
    const auto path = resolved(cfg.liquid);
    const DopedLiquid doped{load_liquid(path), Concentration::from_micromolar(cfg.ce_um)};
    const auto tau = uniform_grid(cfg.tau_start, cfg.dtau, cfg.n);
    const StepModel step{cfg.step_amp, cfg.rise, 0.0};
    auto oscillation = synth_oscillation(doped, tau, band);

    write_metadata(out, cfg.map ? "synth --map" : "synth", {path});
    out << "# seed: " << cfg.seed << '\n';
    if (cfg.map) {
        const auto t = uniform_grid(-static_cast<double>(cfg.nt / 2) * cfg.dt, cfg.dt, cfg.nt);
        auto map = synth_map(probe_pulse(t, cfg.probe_center, cfg.probe_width), step, oscillation);
        if (cfg.snr_db) map = add_noise(std::move(map), *cfg.snr_db, cfg.seed);
        write_map(out, map);
        return;
    }
    TimeTrace response = oscillation;
    for (std::size_t i = 0; i < response.size(); ++i) response.values[i] += step(response.times[i]);
    if (cfg.snr_db) response = add_noise(std::move(response), *cfg.snr_db, cfg.seed);
    write_trace(out, response, "field");
}

void run_extract(const RunConfig& cfg, std::ostream& out) {
    ExtractOptions options;
    options.filter_bandwidth = cfg.filter_thz;
    options.filter_shape = cfg.filter_shape == "separable" ? FilterShape::separable : FilterShape::radial;
    options.band = to_bracket(cfg.analysis_band, "--band");
    options.window = cfg.window == "hann" ? Window::hann : Window::none;
    options.onset = cfg.onset;

    std::ifstream in(cfg.input);
    if (!in) throw ParseError(fmt::format("cannot open map file '{}'", cfg.input));
    const auto map = read_map(in);
    const auto result = extract_pipeline(map, options);

    if (!cfg.trace_out.empty()) {
        Output trace_file(cfg.trace_out, out);
        write_metadata(trace_file.stream(), "extract", {cfg.input});
        write_trace(trace_file.stream(), result.step.oscillation, "oscillation");
    }
    if (!cfg.spectrum_out.empty()) {
        Output spectrum_file(cfg.spectrum_out, out);
        write_metadata(spectrum_file.stream(), "extract", {cfg.input});
        write_spectrum(spectrum_file.stream(), result.spectrum, "amplitude");
    }

    write_metadata(out, "extract", {cfg.input});
    out << "# step: amplitude=" << format_number(result.step.step.amplitude)
        << " rise_ps=" << format_number(result.step.step.rise_time)
        << " onset_ps=" << format_number(result.step.step.onset) << '\n';
    out << "# section: oscillation\n";
    write_trace(out, result.step.oscillation, "oscillation");
    out << "# section: spectrum\n";
    write_spectrum(out, result.spectrum, "amplitude");
    out << "peak_report,nu_THz=" << format_number(result.peak.peak_frequency)
        << ",fwhm_THz=" << format_number(result.peak.fwhm) << ",amplitude=" << format_number(result.peak.amplitude)
        << '\n';
}

}  // namespace

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot read '{}'", path));
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        hash ^= static_cast<unsigned char>(*it);
        hash *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", hash);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Polaron resonances and impostoron matching for solvated electrons in polar liquids"};
    app.name(args.empty() ? "impostoron" : args.front());
    app.require_subcommand(1);
    app.set_version_flag("--version", IMPOSTORON_VERSION);

    const auto positive = CLI::PositiveNumber;
    const auto non_negative = CLI::NonNegativeNumber;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out_path, "Write CSV here instead of stdout"); };
    auto add_liquid = [&](CLI::App* sub) {
        sub->add_option("--liquid", cfg.liquid, "Liquid model file (also searched in $IMPOSTORON_DATA_DIR)")
            ->required();
    };
    auto add_ce = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--ce", cfg.ce_um, "Electron concentration in uM")->check(non_negative);
        if (required) opt->required();
    };
    auto add_bracket = [&](CLI::App* sub) {
        sub->add_option("--bracket", cfg.bracket, "Search bracket lo,hi in THz")->delimiter(',')->expected(2);
        sub->add_option("--tol", cfg.tol, "Root tolerance in THz")->check(positive);
        sub->add_option("--grid", cfg.grid, "Sign-change scan points")->check(CLI::Range(2, 1000000));
    };
    auto add_nu_grid = [&](CLI::App* sub, double step) {
        cfg.nu_step = step;
        sub->add_option("--nu-min", cfg.nu_min, "Lowest frequency, THz")->check(positive);
        sub->add_option("--nu-max", cfg.nu_max, "Highest frequency, THz")->check(positive);
        sub->add_option("--nu-step", cfg.nu_step, "Frequency step, THz")->check(positive);
    };

    auto* eps = app.add_subcommand("eps", "Tabulate eps', eps'' of the liquid with electrons");
    add_liquid(eps);
    add_ce(eps, false);
    add_nu_grid(eps, 0.01);
    add_out(eps);

    auto* nu0 = app.add_subcommand("nu0", "Polaron frequency where eps' rises through zero");
    add_liquid(nu0);
    add_ce(nu0, true);
    add_bracket(nu0);
    add_out(nu0);

    auto* ce_cmd = app.add_subcommand("ce-for-nu0", "Electron concentration that puts the resonance at nu0");
    add_liquid(ce_cmd);
    ce_cmd->add_option("--nu0", cfg.nu0, "Target polaron frequency, THz")->required()->check(positive);
    add_out(ce_cmd);

    auto* match = app.add_subcommand("match", "Impostoron matching of two liquids");
    match->add_option("--liquid-a", cfg.liquid_a, "First liquid model file")->required();
    match->add_option("--liquid-b", cfg.liquid_b, "Second liquid model file")->required();
    match->add_option("--nu0", cfg.nu0, "Common polaron frequency, THz")->check(positive);
    match->add_flag("--profile", cfg.profile, "Also match the line profile; searches the bracket");
    match->add_option("--profile-tol", cfg.profile_tol, "Relative profile mismatch tolerance")->check(positive);
    add_bracket(match);
    add_out(match);

    auto* shape = app.add_subcommand("lineshape", "Loss function -Im[1/eps] of the liquid with electrons");
    add_liquid(shape);
    add_ce(shape, true);
    shape->add_flag("--lorentz", cfg.lorentz, "Lorentzian approximation around nu0 instead of the exact shape");
    add_bracket(shape);
    add_out(shape);

    auto* synth = app.add_subcommand("synth", "Synthesize the pump-probe delay response or field map");
    add_liquid(synth);
    add_ce(synth, true);
    synth->add_flag("--map", cfg.map, "Emit the 2D field map E(t, tau)");
    synth->add_option("--dt", cfg.dt, "Real-time step, ps")->check(positive);
    synth->add_option("--dtau", cfg.dtau, "Delay step, ps")->check(positive);
    synth->add_option("--n", cfg.n, "Delay samples");
    synth->add_option("--nt", cfg.nt, "Real-time samples (map only)");
    synth->add_option("--tau-start", cfg.tau_start, "First delay, ps");
    synth->add_option("--band", cfg.band, "Synthesis band lo,hi in THz")->delimiter(',')->expected(2);
    synth->add_option("--step-amp", cfg.step_amp, "Step amplitude")->check(non_negative);
    synth->add_option("--rise", cfg.rise, "Step rise time, ps")->check(positive);
    synth->add_option("--noise-snr-db", cfg.snr_db, "Add white noise at this SNR (dB)");
    synth->add_option("--seed", cfg.seed, "Noise seed");
    synth->add_option("--probe-center", cfg.probe_center, "Probe center frequency, THz")->check(positive);
    synth->add_option("--probe-width", cfg.probe_width, "Probe spectral FWHM, THz")->check(positive);
    add_out(synth);

    auto* extract = app.add_subcommand("extract", "Filter, cut, remove the step and report the polaron peak");
    extract->add_option("--input", cfg.input, "Field map CSV")->required()->check(CLI::ExistingFile);
    extract->add_option("--filter-thz", cfg.filter_thz, "2D Fourier filter bandwidth, THz")->check(positive);
    extract->add_option("--filter-shape", cfg.filter_shape, "radial or separable")
        ->check(CLI::IsMember({"radial", "separable"}));
    extract->add_option("--band", cfg.analysis_band, "Analysed band lo,hi in THz")->delimiter(',')->expected(2);
    extract->add_option("--window", cfg.window, "none or hann")->check(CLI::IsMember({"none", "hann"}));
    extract->add_option("--onset", cfg.onset, "Spectrum uses delays >= onset, ps");
    extract->add_option("--trace-out", cfg.trace_out, "Also write the oscillation trace CSV here");
    extract->add_option("--spectrum-out", cfg.spectrum_out, "Also write the spectrum CSV here");
    add_out(extract);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << IMPOSTORON_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    try {
        std::ostringstream buffer;
        if (eps->parsed()) run_eps(cfg, buffer);
        if (nu0->parsed()) run_nu0(cfg, buffer);
        if (ce_cmd->parsed()) run_ce_for_nu0(cfg, buffer);
        if (match->parsed()) run_match(cfg, buffer);
        if (shape->parsed()) run_lineshape(cfg, buffer);
        if (synth->parsed()) run_synth(cfg, buffer);
        if (extract->parsed()) run_extract(cfg, buffer);
        Output sink(cfg.out_path, out);
        sink.stream() << buffer.str();
    } catch (const CLI::ValidationError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitModel;
    }
    return kExitOk;
}

}  // namespace impostoron::cli
