#pragma once

#include "pwc/error.hpp"
#include "pwc/signal_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

// Row- and matrix-level coherence factor baselines (CF, GCF, PCF, UCF).
// CF/GCF/PCF weight whole transmit rows; UCF is one scalar per pixel.

namespace pwc {

struct BaselineParams {
  std::size_t gcf_cutoff{2};   // M0, low-frequency half-width in DFT bins
  double pcf_gamma{1.0};       // PCF sensitivity
  double pcf_sigma0{std::numbers::pi / std::numbers::sqrt3}; // uniform-phase std
  std::size_t dmas_max_lag{0}; // 0 selects N - 1
};

namespace detail {

// Applies per-row weights and the 1/N normalization shared by CF/GCF/PCF.
template <typename T>
std::complex<T> row_weighted_sum(const SignalMatrix<T> &S,
                                 std::span<const T> w) {
  std::complex<T> acc{};
  for (std::size_t m = 0; m < S.rows(); ++m) {
    std::complex<T> row_sum{};
    for (const auto &s : S.row(m)) {
      row_sum += s;
    }
    acc += w[m] * row_sum;
  }
  return S.cols() == 0 ? acc : acc / static_cast<T>(S.cols());
}

} // namespace detail

// w_m = |sum_n s|^2 / (N sum_n |s|^2), 0 for an all-zero row.
template <typename T> T cf_row_weight(std::span<const std::complex<T>> row) {
  std::complex<T> sum{};
  T energy{};
  for (const auto &s : row) {
    sum += s;
    energy += std::norm(s);
  }
  if (energy <= T(0)) {
    return T(0);
  }
  return std::norm(sum) / (static_cast<T>(row.size()) * energy);
}

template <typename T> std::vector<T> cf_weights(const SignalMatrix<T> &S) {
  std::vector<T> w(S.rows());
  for (std::size_t m = 0; m < S.rows(); ++m) {
    w[m] = cf_row_weight<T>(S.row(m));
  }
  return w;
}

template <typename T> std::complex<T> beamform_cf(const SignalMatrix<T> &S) {
  const auto w = cf_weights(S);
  return detail::row_weighted_sum<T>(S, w);
}

/*
Generalized coherence factor: fraction of the aperture-domain spectral energy
within M0 bins (circularly) of DC. Only the 2*M0 + 1 low-frequency bins are
evaluated; the total comes from Parseval, N * sum |s_n|^2.
*/
template <typename T = double> class GcfKernel {
public:
  GcfKernel(std::size_t num_elements, std::size_t cutoff)
      : n_(num_elements), cutoff_(cutoff), twiddle_(num_elements) {
    require(num_elements >= 1, "GCF needs at least one element");
    require(cutoff < num_elements, "GCF cutoff M0 must be < N");
    for (std::size_t j = 0; j < n_; ++j) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(n_);
      twiddle_[j] = std::complex<T>(static_cast<T>(std::cos(phase)),
                                    static_cast<T>(std::sin(phase)));
    }
    // Bins with circular distance <= M0 from DC, each listed once.
    for (std::size_t k = 0; k < n_; ++k) {
      if (std::min(k, n_ - k) <= cutoff_) {
        bins_.push_back(k);
      }
    }
  }

  [[nodiscard]] T row_weight(std::span<const std::complex<T>> row) const {
    require(row.size() == n_, "GCF row length mismatch");
    T energy{};
    for (const auto &s : row) {
      energy += std::norm(s);
    }
    if (energy <= T(0)) {
      return T(0);
    }
    T low{};
    for (const std::size_t k : bins_) {
      std::complex<T> X{};
      std::size_t idx = 0;
      for (std::size_t n = 0; n < n_; ++n) {
        X += row[n] * twiddle_[idx];
        idx += k;
        if (idx >= n_) {
          idx -= n_;
        }
      }
      low += std::norm(X);
    }
    return low / (static_cast<T>(n_) * energy);
  }

  [[nodiscard]] std::vector<T> weights(const SignalMatrix<T> &S) const {
    std::vector<T> w(S.rows());
    for (std::size_t m = 0; m < S.rows(); ++m) {
      w[m] = row_weight(S.row(m));
    }
    return w;
  }

  [[nodiscard]] std::complex<T> beamform(const SignalMatrix<T> &S) const {
    const auto w = weights(S);
    return detail::row_weighted_sum<T>(S, w);
  }

private:
  std::size_t n_;
  std::size_t cutoff_;
  std::vector<std::complex<T>> twiddle_;
  std::vector<std::size_t> bins_;
};

template <typename T>
std::vector<T> gcf_weights(const SignalMatrix<T> &S,
                           const BaselineParams &params) {
  return GcfKernel<T>(S.cols(), params.gcf_cutoff).weights(S);
}

template <typename T>
std::complex<T> beamform_gcf(const SignalMatrix<T> &S,
                             const BaselineParams &params) {
  return GcfKernel<T>(S.cols(), params.gcf_cutoff).beamform(S);
}

namespace detail {
template <typename T> T population_std(std::span<const T> v) {
  if (v.empty()) {
    return T(0);
  }
  T mean{};
  for (T x : v) {
    mean += x;
  }
  mean /= static_cast<T>(v.size());
  T var{};
  for (T x : v) {
    var += (x - mean) * (x - mean);
  }
  return std::sqrt(var / static_cast<T>(v.size()));
}
} // namespace detail

/*
Phase spread across the row: the smaller population std of the phases taken
in (-pi, pi] and of the same phases shifted into (0, 2*pi]. The second branch
removes the wrap at +-pi. Zero samples have phase 0.
*/
template <typename T> T pcf_phase_spread(std::span<const std::complex<T>> row) {
  constexpr T pi = std::numbers::pi_v<T>;
  std::vector<T> raw(row.size());
  std::vector<T> shifted(row.size());
  for (std::size_t n = 0; n < row.size(); ++n) {
    T phi = std::arg(row[n]);
    if (phi <= -pi) {
      phi = pi;
    }
    raw[n] = phi;
    shifted[n] = phi <= T(0) ? phi + T(2) * pi : phi;
  }
  return std::min(detail::population_std<T>(raw),
                  detail::population_std<T>(shifted));
}

template <typename T>
std::vector<T> pcf_weights(const SignalMatrix<T> &S,
                           const BaselineParams &params) {
  require(params.pcf_gamma >= 0, "PCF gamma must be >= 0");
  require(params.pcf_sigma0 > 0, "PCF sigma0 must be > 0");
  const T k = static_cast<T>(params.pcf_gamma / params.pcf_sigma0);
  std::vector<T> w(S.rows());
  for (std::size_t m = 0; m < S.rows(); ++m) {
    w[m] = std::max(T(0), T(1) - k * pcf_phase_spread<T>(S.row(m)));
  }
  return w;
}

template <typename T>
std::complex<T> beamform_pcf(const SignalMatrix<T> &S,
                             const BaselineParams &params) {
  const auto w = pcf_weights(S, params);
  return detail::row_weighted_sum<T>(S, w);
}

// Single coherence weight over the full M x N matrix.
template <typename T> T ucf_weight(const SignalMatrix<T> &S) {
  std::complex<T> sum{};
  T energy{};
  for (const auto &s : S.values()) {
    sum += s;
    energy += std::norm(s);
  }
  if (energy <= T(0)) {
    return T(0);
  }
  return std::norm(sum) / (static_cast<T>(S.size()) * energy);
}

// Unnormalized outer sum, as the UCF definition has it.
template <typename T> std::complex<T> beamform_ucf(const SignalMatrix<T> &S) {
  std::complex<T> sum{};
  for (const auto &s : S.values()) {
    sum += s;
  }
  return ucf_weight(S) * sum;
}

} // namespace pwc
