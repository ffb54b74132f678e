#pragma once

/**
 * @file signal.hpp
 * @brief Synthetic pump-probe observables and the extraction pipeline.
 *
 * The nonlinear field map is a separable phenomenological model,
 *
 *     E_NL(t, tau) = E_probe(t) * [step(tau) + s(tau)],
 *
 * where s is a causal, cosine-phased oscillation whose spectral amplitude is
 * the loss function -Im[1/eps] of the doped liquid. It is not a propagation
 * model of the THz field through the sample.
 *
 * Times are in ps, frequencies in THz. The extraction pipeline mirrors the
 * measurement analysis: 2D Fourier filter, cut along tau through the maximum,
 * step removal by a parametric fit, Fourier spectrum, peak report.
 */

#include <cstdint>
#include <span>
#include <vector>

#include "impostoron/mixing.hpp"
#include "impostoron/polaron.hpp"
#include "impostoron/spectrum.hpp"

namespace impostoron {

struct TimeTrace {
    std::vector<double> times;  // uniform, increasing
    std::vector<double> values;

    std::size_t size() const { return times.size(); }
    double step() const { return times[1] - times[0]; }
};

/// Row-major samples: values[i_tau * t_grid.size() + j_t].
struct FieldMap2D {
    std::vector<double> t_grid;
    std::vector<double> tau_grid;
    std::vector<double> values;

    double at(std::size_t i_tau, std::size_t j_t) const { return values[i_tau * t_grid.size() + j_t]; }
    double& at(std::size_t i_tau, std::size_t j_t) { return values[i_tau * t_grid.size() + j_t]; }
};

/// a * Theta(tau - onset) * (1 - exp(-(tau - onset)/rise_time)).
struct StepModel {
    double amplitude = 0.0;
    double rise_time = 1.0;  // ps
    double onset = 0.0;      // ps

    double operator()(double tau) const;
};

struct PeakReport {
    double peak_frequency = 0.0;  // THz
    double fwhm = 0.0;            // THz
    double amplitude = 0.0;
};

enum class Window { none, hann };
enum class FilterShape { radial, separable };

inline constexpr Bracket kDefaultSynthesisBand{0.1, 3.0};
inline constexpr std::size_t kMinTraceSamples = 16;

/// start, start + step, ..., n samples.
std::vector<double> uniform_grid(double start, double step, std::size_t n);

/// Throws GridError unless spacing is uniform to 1e-9 relative and n >= min_samples.
void validate_uniform(std::span<const double> grid, std::size_t min_samples, const char* what);
void validate(const TimeTrace& trace);
void validate(const FieldMap2D& map);

/// s(tau) = Theta(tau) sum_k A(nu_k) cos(2 pi nu_k tau) dnu over the band, with A
/// the doped liquid's -Im[1/eps] normalized to unit area, so s(0) = 1.
/// Throws GridError when 1/(2 dtau) <= band.hi and DegenerateError for a lossless
/// line shape.
TimeTrace synth_oscillation(const DopedLiquid& doped, std::span<const double> tau_grid,
                            Bracket band = kDefaultSynthesisBand);

/// Gaussian THz probe exp(-t^2/2 sigma^2) cos(2 pi nu_c t) peaking at t = 0, with
/// the given spectral FWHM.
TimeTrace probe_pulse(std::span<const double> t_grid, double center_thz = 0.7, double bandwidth_fwhm_thz = 0.5);

/// E(t, tau) = probe(t) * [step(tau) + oscillation(tau)].
FieldMap2D synth_map(const TimeTrace& probe, const StepModel& step, const TimeTrace& oscillation);
FieldMap2D synth_map(const DopedLiquid& doped, const TimeTrace& probe, const StepModel& step,
                     std::span<const double> tau_grid, Bracket band = kDefaultSynthesisBand);

/// Adds white Gaussian noise with power mean(E^2) / 10^(snr_db/10).
FieldMap2D add_noise(FieldMap2D map, double snr_db, std::uint64_t seed);
TimeTrace add_noise(TimeTrace trace, double snr_db, std::uint64_t seed);

inline constexpr double kDefaultFilterBandwidth = 4.0;  // THz

/// Zeroes 2D Fourier components beyond the bandwidth (radial: sqrt(nu_t^2 + nu_tau^2),
/// separable: either axis) and returns the real part of the inverse transform.
FieldMap2D fourier_filter_2d(const FieldMap2D& map, double bandwidth_thz = kDefaultFilterBandwidth,
                             FilterShape shape = FilterShape::radial);

/// Index j of t* = argmax_t max_tau |E(t, tau)|; ties go to the smaller t.
/// Throws DomainError for an all-zero map.
std::size_t max_response_column(const FieldMap2D& map);

/// E(t*, tau) as a trace over tau.
TimeTrace cut_at_max(const FieldMap2D& map);

struct StepFitOptions {
    double lowpass_cutoff_thz = 0.15;
    double initial_rise_time = 1.0;  // ps
};

struct StepRemoval {
    TimeTrace oscillation;
    StepModel step;
    double fit_cost = 0.0;  // squared residual of the low-passed fit
};

/// Fits a * Theta(tau - tau0) (1 - exp(-(tau - tau0)/r)) to the low-passed trace
/// (model low-passed identically) and subtracts the unfiltered step.
StepRemoval remove_step(const TimeTrace& trace, const StepFitOptions& options = {});

/// |DFT| of the samples with tau >= onset on the natural bins k/(N dtau), k <= N/2.
Spectrum spectrum_of(const TimeTrace& trace, Window window = Window::hann, double onset = 0.0);

/// Parabolic vertex through the largest sample and its neighbours; FWHM from
/// linearly interpolated half-maximum crossings. Throws PeakError for a maximum
/// on the boundary or a half maximum that is never crossed.
PeakReport peak_report(const Spectrum& spectrum);

struct ExtractOptions {
    double filter_bandwidth = kDefaultFilterBandwidth;
    FilterShape filter_shape = FilterShape::radial;
    Bracket band{0.3, 2.0};  // analysed polaron band; the step low-pass sits at band.lo / 2
    Window window = Window::none;
    double onset = 0.0;
};

struct Extraction {
    FieldMap2D filtered;
    TimeTrace cut;
    StepRemoval step;
    Spectrum spectrum;  // restricted to the band
    PeakReport peak;
};

Extraction extract_pipeline(const FieldMap2D& map, const ExtractOptions& options = {});

}  // namespace impostoron
