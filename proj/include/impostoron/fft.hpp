#pragma once

// Thin FFTW wrapper. Transforms are unnormalized (the inverse of a forward
// transform returns n times the input). Planning is serialized internally, so
// calls are safe from any thread; FFTW_ESTIMATE | FFTW_UNALIGNED plans keep the
// output bit-identical across runs.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace impostoron {

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> input, bool inverse = false);

/// Non-redundant half spectrum (n/2 + 1 bins) of a real signal.
std::vector<std::complex<double>> rfft(std::span<const double> input);

/// Real signal of length n from its n/2 + 1 half spectrum (unnormalized).
std::vector<double> irfft(std::span<const std::complex<double>> half, std::size_t n);

/// Row-major rows x cols transform.
std::vector<std::complex<double>> fft2(std::span<const std::complex<double>> input, std::size_t rows,
                                       std::size_t cols, bool inverse = false);

/// Forward and inverse real transforms of one length, planned once and reused.
/// Const methods may be called concurrently.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(RealFft&&) noexcept;
    RealFft& operator=(RealFft&&) noexcept;

    std::size_t size() const { return n_; }
    std::vector<std::complex<double>> forward(std::span<const double> input) const;
    std::vector<double> inverse(std::span<const std::complex<double>> half) const;

private:
    struct Plans;
    std::size_t n_;
    std::unique_ptr<Plans> plans_;
};

/// Signed frequency of DFT bin k for n samples spaced by step: k/(n step), wrapped to [-n/2, n/2).
double bin_frequency(std::size_t k, std::size_t n, double step);

}  // namespace impostoron
