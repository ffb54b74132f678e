#include "impostoron/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>
#include <gsl/gsl_multimin.h>

#include "impostoron/constants.hpp"
#include "impostoron/errors.hpp"
#include "impostoron/fft.hpp"

namespace impostoron {

double StepModel::operator()(double tau) const {
    if (tau < onset) return 0.0;
    return amplitude * -std::expm1(-(tau - onset) / rise_time);
}

std::vector<double> uniform_grid(double start, double step, std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = start + static_cast<double>(i) * step;
    return grid;
}

void validate_uniform(std::span<const double> grid, std::size_t min_samples, const char* what) {
    if (grid.size() < min_samples) {
        throw GridError(fmt::format("{} grid needs at least {} samples, got {}", what, min_samples, grid.size()));
    }
    if (grid.size() < 2) return;
    const double step = grid[1] - grid[0];
    if (!(step > 0.0)) throw GridError(fmt::format("{} grid must be increasing", what));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double expected = grid[0] + static_cast<double>(i) * step;
        if (std::abs(grid[i] - expected) > 1e-9 * std::max(std::abs(step) * static_cast<double>(i), std::abs(expected))) {
            throw GridError(fmt::format("{} grid is not uniform at index {}", what, i));
        }
    }
}

void validate(const TimeTrace& trace) {
    if (trace.times.size() != trace.values.size()) {
        throw GridError(fmt::format("trace has {} times but {} values", trace.times.size(), trace.values.size()));
    }
    validate_uniform(trace.times, kMinTraceSamples, "time");
}

void validate(const FieldMap2D& map) {
    validate_uniform(map.t_grid, 2, "t");
    validate_uniform(map.tau_grid, 2, "tau");
    if (map.values.size() != map.t_grid.size() * map.tau_grid.size()) {
        throw GridError(fmt::format("map holds {} values for a {} x {} grid", map.values.size(), map.tau_grid.size(),
                                    map.t_grid.size()));
    }
}

TimeTrace synth_oscillation(const DopedLiquid& doped, std::span<const double> tau_grid, Bracket band) {
    validate_uniform(tau_grid, kMinTraceSamples, "tau");
    validate_bracket(band, doped.liquid);
    const double dtau = tau_grid[1] - tau_grid[0];
    if (!(0.5 / dtau > band.hi)) {
        throw GridError(fmt::format("tau step {} ps cannot resolve {} THz (Nyquist {} THz)", dtau, band.hi, 0.5 / dtau));
    }

    // Frequency quadrature fine enough that its 1/dnu periodicity lies well
    // beyond the trace.
    const double span = tau_grid.back() - tau_grid.front();
    const double width = band.hi - band.lo;
    const auto count = static_cast<std::size_t>(std::ceil(std::max(256.0, 8.0 * span * width)));
    const double dnu = width / static_cast<double>(count);
    std::vector<double> nus(count);
    for (std::size_t k = 0; k < count; ++k) nus[k] = band.lo + (static_cast<double>(k) + 0.5) * dnu;

    auto amplitude = lineshape(doped, nus).values;
    const double area = std::accumulate(amplitude.begin(), amplitude.end(), 0.0) * dnu;
    if (!(area > 0.0)) {
        throw DegenerateError(fmt::format("degenerate line shape: '{}' at c_e = {} uM has no loss in [{}, {}] THz",
                                          doped.liquid.name(), doped.ce.micromolar(), band.lo, band.hi));
    }
    for (double& a : amplitude) a *= dnu / area;

    TimeTrace trace{{tau_grid.begin(), tau_grid.end()}, std::vector<double>(tau_grid.size(), 0.0)};
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        const double tau = tau_grid[i];
        if (tau < 0.0) continue;
        double sum = 0.0;
        for (std::size_t k = 0; k < count; ++k) sum += amplitude[k] * std::cos(2.0 * kPi * nus[k] * tau);
        trace.values[i] = sum;
    }
    return trace;
}

TimeTrace probe_pulse(std::span<const double> t_grid, double center_thz, double bandwidth_fwhm_thz) {
    if (!(bandwidth_fwhm_thz > 0.0)) throw DomainError("probe bandwidth must be positive");
    const double sigma_nu = bandwidth_fwhm_thz / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const double sigma_t = 1.0 / (2.0 * kPi * sigma_nu);
    TimeTrace probe{{t_grid.begin(), t_grid.end()}, {}};
    probe.values.reserve(t_grid.size());
    for (double t : t_grid) {
        probe.values.push_back(std::exp(-t * t / (2.0 * sigma_t * sigma_t)) * std::cos(2.0 * kPi * center_thz * t));
    }
    return probe;
}

FieldMap2D synth_map(const TimeTrace& probe, const StepModel& step, const TimeTrace& oscillation) {
    validate_uniform(probe.times, 2, "t");
    validate_uniform(oscillation.times, 2, "tau");
    if (probe.values.size() != probe.times.size() || oscillation.values.size() != oscillation.times.size()) {
        throw GridError("trace times and values differ in length");
    }
    FieldMap2D map{probe.times, oscillation.times, std::vector<double>(probe.size() * oscillation.size())};
    for (std::size_t i = 0; i < oscillation.size(); ++i) {
        const double delay_response = step(oscillation.times[i]) + oscillation.values[i];
        for (std::size_t j = 0; j < probe.size(); ++j) map.at(i, j) = probe.values[j] * delay_response;
    }
    return map;
}

FieldMap2D synth_map(const DopedLiquid& doped, const TimeTrace& probe, const StepModel& step,
                     std::span<const double> tau_grid, Bracket band) {
    return synth_map(probe, step, synth_oscillation(doped, tau_grid, band));
}

namespace {

double noise_sigma(std::span<const double> values, double snr_db) {
    if (values.empty()) return 0.0;
    const double power = std::inner_product(values.begin(), values.end(), values.begin(), 0.0) /
                         static_cast<double>(values.size());
    return std::sqrt(power / std::pow(10.0, snr_db / 10.0));
}

void add_gaussian(std::vector<double>& values, double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    for (double& v : values) v += normal(rng);
}

}  // namespace

FieldMap2D add_noise(FieldMap2D map, double snr_db, std::uint64_t seed) {
    add_gaussian(map.values, noise_sigma(map.values, snr_db), seed);
    return map;
}

TimeTrace add_noise(TimeTrace trace, double snr_db, std::uint64_t seed) {
    add_gaussian(trace.values, noise_sigma(trace.values, snr_db), seed);
    return trace;
}

FieldMap2D fourier_filter_2d(const FieldMap2D& map, double bandwidth_thz, FilterShape shape) {
    validate(map);
    if (!(bandwidth_thz > 0.0)) throw DomainError(fmt::format("filter bandwidth must be positive, got {}", bandwidth_thz));
    const std::size_t rows = map.tau_grid.size();
    const std::size_t cols = map.t_grid.size();
    const double dtau = map.tau_grid[1] - map.tau_grid[0];
    const double dt = map.t_grid[1] - map.t_grid[0];

    std::vector<std::complex<double>> data(map.values.begin(), map.values.end());
    auto spectrum = fft2(data, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const double f_tau = bin_frequency(i, rows, dtau);
        for (std::size_t j = 0; j < cols; ++j) {
            const double f_t = bin_frequency(j, cols, dt);
            const bool reject = shape == FilterShape::radial
                                    ? std::hypot(f_t, f_tau) > bandwidth_thz
                                    : (std::abs(f_t) > bandwidth_thz || std::abs(f_tau) > bandwidth_thz);
            if (reject) spectrum[i * cols + j] = 0.0;
        }
    }
    const auto back = fft2(spectrum, rows, cols, /*inverse=*/true);
    FieldMap2D out{map.t_grid, map.tau_grid, std::vector<double>(back.size())};
    const double norm = 1.0 / static_cast<double>(rows * cols);
    for (std::size_t k = 0; k < back.size(); ++k) out.values[k] = back[k].real() * norm;
    return out;
}

std::size_t max_response_column(const FieldMap2D& map) {
    validate(map);
    const std::size_t cols = map.t_grid.size();
    std::vector<double> column_max(cols, 0.0);
    for (std::size_t i = 0; i < map.tau_grid.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) column_max[j] = std::max(column_max[j], std::abs(map.at(i, j)));
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < cols; ++j) {
        if (column_max[j] > column_max[best]) best = j;
    }
    if (!(column_max[best] > 0.0)) throw DomainError("no signal: field map is identically zero");
    return best;
}

TimeTrace cut_at_max(const FieldMap2D& map) {
    const std::size_t j = max_response_column(map);
    TimeTrace trace{map.tau_grid, std::vector<double>(map.tau_grid.size())};
    for (std::size_t i = 0; i < map.tau_grid.size(); ++i) trace.values[i] = map.at(i, j);
    return trace;
}

namespace {

// Low-pass by even extension (no wrap-around jump) and a hard spectral cutoff.
class LowPass {
public:
    LowPass(std::size_t n, double step, double cutoff) : n_(n), transform_(2 * n) {
        const std::size_t m = 2 * n;
        const std::size_t bins = m / 2 + 1;
        keep_ = 0;
        while (keep_ < bins && static_cast<double>(keep_) / (static_cast<double>(m) * step) <= cutoff) ++keep_;
    }

    std::vector<double> operator()(std::span<const double> x) const {
        std::vector<double> extended(2 * n_);
        std::copy(x.begin(), x.end(), extended.begin());
        std::reverse_copy(x.begin(), x.end(), extended.begin() + static_cast<std::ptrdiff_t>(n_));
        auto half = transform_.forward(extended);
        for (std::size_t k = keep_; k < half.size(); ++k) half[k] = 0.0;
        auto back = transform_.inverse(half);
        back.resize(n_);
        const double norm = 1.0 / static_cast<double>(2 * n_);
        for (double& v : back) v *= norm;
        return back;
    }

private:
    std::size_t n_;
    RealFft transform_;
    std::size_t keep_ = 0;
};

struct StepFitProblem {
    std::span<const double> times;
    std::vector<double> target;  // low-passed trace
    const LowPass* lowpass;

    // Returns (cost, best amplitude) for a given onset and rise time.
    std::pair<double, double> evaluate(double onset, double rise) const {
        const StepModel unit{1.0, rise, onset};
        std::vector<double> model(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) model[i] = unit(times[i]);
        const auto filtered = (*lowpass)(model);
        const double ff = std::inner_product(filtered.begin(), filtered.end(), filtered.begin(), 0.0);
        const double yf = std::inner_product(target.begin(), target.end(), filtered.begin(), 0.0);
        const double a = ff > 0.0 ? yf / ff : 0.0;
        double cost = 0.0;
        for (std::size_t i = 0; i < target.size(); ++i) {
            const double r = target[i] - a * filtered[i];
            cost += r * r;
        }
        return {cost, a};
    }
};

constexpr double kMinLogRise = -4.6;  // ~0.01 ps
constexpr double kMaxLogRise = 4.6;   // ~100 ps

double step_fit_cost(const gsl_vector* x, void* params) {
    const auto* problem = static_cast<const StepFitProblem*>(params);
    const double onset = gsl_vector_get(x, 0);
    const double log_rise = gsl_vector_get(x, 1);
    if (log_rise < kMinLogRise || log_rise > kMaxLogRise || onset < problem->times.front() ||
        onset > problem->times.back()) {
        return 1e300;
    }
    return problem->evaluate(onset, std::exp(log_rise)).first;
}

}  // namespace

StepRemoval remove_step(const TimeTrace& trace, const StepFitOptions& options) {
    validate(trace);
    if (!(trace.times.front() < 0.0 && trace.times.back() > 0.0)) {
        throw DomainError("step removal needs samples before and after tau = 0");
    }
    if (!(options.lowpass_cutoff_thz > 0.0) || !(options.initial_rise_time > 0.0)) {
        throw DomainError("step fit needs a positive low-pass cutoff and initial rise time");
    }
    if (std::all_of(trace.values.begin(), trace.values.end(), [](double v) { return v == 0.0; })) {
        return {trace, StepModel{0.0, options.initial_rise_time, 0.0}, 0.0};
    }

    const std::size_t n = trace.size();
    const double dtau = trace.step();
    const LowPass lowpass(n, dtau, options.lowpass_cutoff_thz);
    StepFitProblem problem{trace.times, lowpass(trace.values), &lowpass};

    // Coarse scan over about 64 onsets and a ladder of rise times; the simplex refines.
    const std::size_t onset_stride = std::max<std::size_t>(1, n / 64);
    const std::vector<double> rises{0.05, 0.1, 0.2, 0.35, 0.5, 0.75, options.initial_rise_time, 1.5, 2.5, 4.0, 7.0, 12.0};
    double best_cost = std::numeric_limits<double>::infinity();
    double best_onset = 0.0;
    double best_rise = options.initial_rise_time;
    for (std::size_t i = 0; i + 1 < n; i += onset_stride) {
        for (double rise : rises) {
            const double cost = problem.evaluate(trace.times[i], rise).first;
            if (cost < best_cost) {
                best_cost = cost;
                best_onset = trace.times[i];
                best_rise = rise;
            }
        }
    }

    gsl_multimin_function fn{&step_fit_cost, 2, &problem};
    gsl_vector* x = gsl_vector_alloc(2);
    gsl_vector* steps = gsl_vector_alloc(2);
    gsl_vector_set(x, 0, best_onset);
    gsl_vector_set(x, 1, std::log(best_rise));
    gsl_vector_set(steps, 0, 2.0 * dtau * static_cast<double>(onset_stride));
    gsl_vector_set(steps, 1, 0.3);
    gsl_multimin_fminimizer* minimizer = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
    gsl_multimin_fminimizer_set(minimizer, &fn, x, steps);
    const double scale = std::max(1e-300, std::inner_product(problem.target.begin(), problem.target.end(),
                                                             problem.target.begin(), 0.0));
    for (int iter = 0; iter < 2000; ++iter) {
        if (gsl_multimin_fminimizer_iterate(minimizer) != GSL_SUCCESS) break;
        const double size = gsl_multimin_fminimizer_size(minimizer);
        if (gsl_multimin_test_size(size, 1e-10) == GSL_SUCCESS) break;
    }
    const double onset = gsl_vector_get(minimizer->x, 0);
    const double rise = std::exp(gsl_vector_get(minimizer->x, 1));
    gsl_multimin_fminimizer_free(minimizer);
    gsl_vector_free(steps);
    gsl_vector_free(x);

    const auto [cost, amplitude] = problem.evaluate(onset, rise);
    if (!std::isfinite(cost) || !std::isfinite(amplitude) || !std::isfinite(onset) || !(rise > 0.0) ||
        !std::isfinite(rise) || cost > best_cost * (1.0 + 1e-9) + 1e-12 * scale) {
        throw FitError(fmt::format("step fit diverged: onset = {} ps, rise = {} ps, amplitude = {}, cost = {} "
                                   "(coarse scan cost {})",
                                   onset, rise, amplitude, cost, best_cost));
    }

    StepRemoval result{trace, StepModel{amplitude, rise, onset}, cost};
    for (std::size_t i = 0; i < n; ++i) result.oscillation.values[i] -= result.step(trace.times[i]);
    return result;
}

Spectrum spectrum_of(const TimeTrace& trace, Window window, double onset) {
    validate(trace);
    const double dtau = trace.step();
    std::vector<double> samples;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace.times[i] >= onset - 1e-9 * dtau) samples.push_back(trace.values[i]);
    }
    if (samples.size() < kMinTraceSamples) {
        throw GridError(fmt::format("only {} samples at tau >= {} ps; need {}", samples.size(), onset, kMinTraceSamples));
    }
    const std::size_t n = samples.size();
    if (window == Window::hann) {
        for (std::size_t i = 0; i < n; ++i) {
            samples[i] *= 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1)));
        }
    }
    const auto half = rfft(samples);
    Spectrum out;
    out.frequencies.reserve(half.size());
    out.values.reserve(half.size());
    for (std::size_t k = 0; k < half.size(); ++k) {
        out.frequencies.push_back(static_cast<double>(k) / (static_cast<double>(n) * dtau));
        out.values.push_back(std::abs(half[k]));
    }
    return out;
}

PeakReport peak_report(const Spectrum& spectrum) {
    validate(spectrum);
    const auto& f = spectrum.frequencies;
    const auto& y = spectrum.values;
    if (y.size() < 3) throw PeakError("peak report needs at least 3 samples");
    const auto k = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    if (k == 0 || k + 1 == y.size()) {
        throw PeakError(fmt::format("edge peak: maximum at the band boundary ({} THz)", f[k]));
    }

    // Vertex of the parabola through the three points (non-uniform spacing allowed).
    const double x0 = f[k - 1], x1 = f[k], x2 = f[k + 1];
    const double y0 = y[k - 1], y1 = y[k], y2 = y[k + 1];
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    PeakReport report;
    if (curvature < 0.0) {
        // y = y1 + d (x - x1) + c (x - x1)^2 with d the slope at x1.
        const double slope_at_x1 = d01 + curvature * (x1 - x0);
        const double shift = -slope_at_x1 / (2.0 * curvature);
        report.peak_frequency = x1 + shift;
        report.amplitude = y1 + slope_at_x1 * shift + curvature * shift * shift;
    } else {
        report.peak_frequency = x1;
        report.amplitude = y1;
    }

    const double half = 0.5 * report.amplitude;
    std::size_t lo = k;
    while (lo > 0 && y[lo - 1] >= half) --lo;
    std::size_t hi = k;
    while (hi + 1 < y.size() && y[hi + 1] >= half) ++hi;
    if (lo == 0 || hi + 1 == y.size()) {
        throw PeakError(fmt::format("unbounded width: half maximum not crossed inside [{}, {}] THz", f.front(), f.back()));
    }
    auto crossing = [&](std::size_t below, std::size_t above) {
        return f[below] + (half - y[below]) * (f[above] - f[below]) / (y[above] - y[below]);
    };
    report.fwhm = crossing(hi + 1, hi) - crossing(lo - 1, lo);
    return report;
}

Extraction extract_pipeline(const FieldMap2D& map, const ExtractOptions& options) {
    if (!(options.band.lo > 0.0) || !(options.band.hi > options.band.lo)) {
        throw DomainError(fmt::format("analysis band must satisfy 0 < lo < hi, got [{}, {}]", options.band.lo,
                                      options.band.hi));
    }
    Extraction out;
    out.filtered = fourier_filter_2d(map, options.filter_bandwidth, options.filter_shape);
    out.cut = cut_at_max(out.filtered);
    out.step = remove_step(out.cut, StepFitOptions{0.5 * options.band.lo, 1.0});
    out.spectrum = restrict_band(spectrum_of(out.step.oscillation, options.window, options.onset), options.band.lo,
                                 options.band.hi);
    out.peak = peak_report(out.spectrum);
    return out;
}

}  // namespace impostoron
