#pragma once

#include "pwc/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <vector>

namespace pwc {

namespace detail {
// The FFTW planner is not re-entrant; executing plans is.
inline std::mutex &fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace detail

/*
One-sided-spectrum analytic signal for traces of a fixed length.

Forward DFT, negative-frequency bins zeroed, strictly positive bins doubled,
DC (and Nyquist for even lengths) left untouched, inverse DFT. The real part
of the output reproduces the input.
*/
class AnalyticTransform {
public:
  explicit AnalyticTransform(std::size_t length) : n_(length) {
    require(length >= 2, "analytic signal needs at least 2 samples");
    buf_ = fftw_alloc_complex(n_);
    std::lock_guard lock(detail::fftw_planner_mutex());
    const int n = static_cast<int>(n_);
    forward_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  AnalyticTransform(const AnalyticTransform &) = delete;
  AnalyticTransform &operator=(const AnalyticTransform &) = delete;

  ~AnalyticTransform() {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buf_);
  }

  [[nodiscard]] std::size_t size() const { return n_; }

  template <typename T>
  void apply(std::span<const T> trace, std::span<std::complex<T>> out) {
    require(trace.size() == n_ && out.size() == n_,
            "analytic signal length mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
      const auto v = static_cast<double>(trace[i]);
      require(std::isfinite(v), "non-finite sample in analytic signal input",
              ErrorCategory::Numeric);
      buf_[i][0] = v;
      buf_[i][1] = 0.0;
    }
    fftw_execute(forward_);

    // Bins 1..half_pos are strictly positive; the rest past Nyquist are
    // negative.
    const std::size_t half_pos = (n_ - 1) / 2;
    for (std::size_t k = 1; k <= half_pos; ++k) {
      buf_[k][0] *= 2.0;
      buf_[k][1] *= 2.0;
    }
    const std::size_t first_neg = n_ / 2 + 1;
    for (std::size_t k = first_neg; k < n_; ++k) {
      buf_[k][0] = 0.0;
      buf_[k][1] = 0.0;
    }
    fftw_execute(backward_);

    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = std::complex<T>(static_cast<T>(buf_[i][0] * scale),
                               static_cast<T>(buf_[i][1] * scale));
    }
  }

private:
  std::size_t n_;
  fftw_complex *buf_{};
  fftw_plan forward_{};
  fftw_plan backward_{};
};

inline std::vector<std::complex<double>>
analytic_signal(std::span<const double> trace) {
  std::vector<std::complex<double>> out(trace.size());
  AnalyticTransform transform(trace.size());
  transform.apply<double>(trace, out);
  return out;
}

/*
Linear interpolation of a complex trace at time t. Returns exactly zero when
the fractional index (t - t0) * fs falls outside [0, T-1].
*/
template <typename T>
std::complex<T> sample_trace(std::span<const std::complex<T>> trace, double t,
                             double sample_rate, double t0) {
  const double idx = (t - t0) * sample_rate;
  const auto last = static_cast<double>(trace.size()) - 1.0;
  if (!(idx >= 0.0) || idx > last || trace.empty()) {
    return {};
  }
  const auto i0 = static_cast<std::size_t>(idx);
  const T frac = static_cast<T>(idx - static_cast<double>(i0));
  if (i0 + 1 >= trace.size()) {
    return trace[i0];
  }
  return trace[i0] + frac * (trace[i0 + 1] - trace[i0]);
}

} // namespace pwc
