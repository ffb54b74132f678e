#include "impostoron/fft.hpp"

#include <mutex>

#include <fftw3.h>

#include "impostoron/errors.hpp"

namespace impostoron {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

struct AdoptLocked {};
constexpr AdoptLocked adopt_locked{};

// Owns a plan; destruction goes through the planner lock.
class Plan {
public:
    explicit Plan(fftw_plan plan) : plan_(plan) {
        if (plan_ == nullptr) throw Error("FFTW failed to create a plan");
    }
    // For plans created while the caller already holds the planner lock.
    Plan(fftw_plan plan, AdoptLocked) : plan_(plan) {}
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }
    fftw_plan get() const { return plan_; }

private:
    fftw_plan plan_;
};

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> input, bool inverse) {
    std::vector<std::complex<double>> in(input.begin(), input.end());
    std::vector<std::complex<double>> out(in.size());
    if (in.empty()) return out;
    auto plan = [&] {
        std::lock_guard lock(planner_mutex());
        return fftw_plan_dft_1d(static_cast<int>(in.size()), as_fftw(in.data()), as_fftw(out.data()),
                                inverse ? FFTW_BACKWARD : FFTW_FORWARD, kFlags);
    }();
    Plan(plan).execute();
    return out;
}

std::vector<std::complex<double>> rfft(std::span<const double> input) {
    std::vector<double> in(input.begin(), input.end());
    std::vector<std::complex<double>> out(in.size() / 2 + 1);
    if (in.empty()) return {};
    auto plan = [&] {
        std::lock_guard lock(planner_mutex());
        return fftw_plan_dft_r2c_1d(static_cast<int>(in.size()), in.data(), as_fftw(out.data()), kFlags);
    }();
    Plan(plan).execute();
    return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> half, std::size_t n) {
    if (half.size() != n / 2 + 1) throw Error("irfft: half spectrum has the wrong length");
    // c2r destroys its input.
    std::vector<std::complex<double>> in(half.begin(), half.end());
    std::vector<double> out(n);
    if (n == 0) return out;
    auto plan = [&] {
        std::lock_guard lock(planner_mutex());
        return fftw_plan_dft_c2r_1d(static_cast<int>(n), as_fftw(in.data()), out.data(), kFlags);
    }();
    Plan(plan).execute();
    return out;
}

std::vector<std::complex<double>> fft2(std::span<const std::complex<double>> input, std::size_t rows,
                                       std::size_t cols, bool inverse) {
    if (input.size() != rows * cols) throw Error("fft2: input size does not match rows x cols");
    std::vector<std::complex<double>> in(input.begin(), input.end());
    std::vector<std::complex<double>> out(in.size());
    if (in.empty()) return out;
    auto plan = [&] {
        std::lock_guard lock(planner_mutex());
        return fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), as_fftw(in.data()),
                                as_fftw(out.data()), inverse ? FFTW_BACKWARD : FFTW_FORWARD, kFlags);
    }();
    Plan(plan).execute();
    return out;
}

struct RealFft::Plans {
    Plan forward;
    Plan inverse;
};

RealFft::RealFft(std::size_t n) : n_(n) {
    if (n == 0) throw Error("RealFft: length must be positive");
    std::vector<double> real(n);
    std::vector<std::complex<double>> half(n / 2 + 1);
    std::lock_guard lock(planner_mutex());
    fftw_plan f = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), as_fftw(half.data()), kFlags);
    fftw_plan b = fftw_plan_dft_c2r_1d(static_cast<int>(n), as_fftw(half.data()), real.data(), kFlags);
    if (f == nullptr || b == nullptr) {
        if (f != nullptr) fftw_destroy_plan(f);
        if (b != nullptr) fftw_destroy_plan(b);
        throw Error("FFTW failed to create a plan");
    }
    plans_.reset(new Plans{Plan(f, adopt_locked), Plan(b, adopt_locked)});
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

std::vector<std::complex<double>> RealFft::forward(std::span<const double> input) const {
    if (input.size() != n_) throw Error("RealFft: input has the wrong length");
    std::vector<double> in(input.begin(), input.end());
    std::vector<std::complex<double>> out(n_ / 2 + 1);
    fftw_execute_dft_r2c(plans_->forward.get(), in.data(), as_fftw(out.data()));
    return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> half) const {
    if (half.size() != n_ / 2 + 1) throw Error("RealFft: half spectrum has the wrong length");
    std::vector<std::complex<double>> in(half.begin(), half.end());
    std::vector<double> out(n_);
    fftw_execute_dft_c2r(plans_->inverse.get(), as_fftw(in.data()), out.data());
    return out;
}

double bin_frequency(std::size_t k, std::size_t n, double step) {
    const auto signed_k = (2 * k < n) ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return signed_k / (static_cast<double>(n) * step);
}

}  // namespace impostoron
