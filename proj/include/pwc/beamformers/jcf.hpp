#pragma once

#include "pwc/beamformers/common.hpp"
#include "pwc/error.hpp"
#include "pwc/signal_matrix.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace pwc {

struct JcfParams {
  double alpha{2.0}; // smoothness; 0 recovers DAS

  void validate() const {
    require(alpha >= 0.0 && std::isfinite(alpha),
            "JCF alpha must be a finite value >= 0");
  }
};

/*
Joint coherence weights evaluated literally: for each (m, n) the numerator
sums s[m'][n] * s[m][n'] over every (m', n') pair and the denominator the
matching magnitude products. O((MN)^2) per matrix; kept as the reference
against which the factorized kernel is checked.
*/
template <typename T>
WeightMatrix<T> jcf_weights_direct(const SignalMatrix<T> &S,
                                   const JcfParams &params) {
  params.validate();
  const std::size_t M = S.rows();
  const std::size_t N = S.cols();
  const T alpha = static_cast<T>(params.alpha);
  WeightMatrix<T> w(M, N);
  if (alpha == T(0)) {
    w.values.assign(M * N, T(1));
    return w;
  }
  const T norm = detail::real_pow(static_cast<T>(M * N), alpha - T(1));

  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t n = 0; n < N; ++n) {
      std::complex<T> num{};
      T den{};
      for (std::size_t mp = 0; mp < M; ++mp) {
        for (std::size_t np = 0; np < N; ++np) {
          num += S(mp, n) * S(m, np);
          den += detail::magnitude_pow(S(mp, n), alpha) *
                 detail::magnitude_pow(S(m, np), alpha);
        }
      }
      w(m, n) = den > T(0) ? detail::magnitude_pow(num, alpha) / (norm * den)
                           : T(0);
    }
  }
  return w;
}

/*
Separable JCF evaluation. The double sums factor into column sums C_n, row
sums R_m and the matching alpha-power magnitude sums P_n, Q_m, so that

  w[m][n] = |C_n|^a / P_n * |R_m|^a / Q_m / (MN)^(a-1)

is a rank-1 outer product. Scratch buffers are reused between pixels.
*/
template <typename T = double> class JcfKernel {
public:
  explicit JcfKernel(JcfParams params) : params_(params) {
    params_.validate();
    alpha_ = static_cast<T>(params_.alpha);
  }

  [[nodiscard]] const JcfParams &params() const { return params_; }

  // Fills col_factor_ (a_n), row_factor_ (b_m) and returns the global scale.
  T factors(const SignalMatrix<T> &S) {
    const std::size_t M = S.rows();
    const std::size_t N = S.cols();
    col_sum_.assign(N, std::complex<T>{});
    col_pow_.assign(N, T{});
    row_factor_.resize(M);
    col_factor_.resize(N);

    if (alpha_ == T(0)) {
      row_factor_.assign(M, T(1));
      col_factor_.assign(N, T(1));
      return T(1);
    }

    for (std::size_t m = 0; m < M; ++m) {
      const auto row = S.row(m);
      std::complex<T> row_sum{};
      T row_pow{};
      for (std::size_t n = 0; n < N; ++n) {
        const T p = detail::magnitude_pow(row[n], alpha_);
        row_sum += row[n];
        row_pow += p;
        col_sum_[n] += row[n];
        col_pow_[n] += p;
      }
      row_factor_[m] =
          row_pow > T(0) ? detail::magnitude_pow(row_sum, alpha_) / row_pow
                         : T(0);
    }
    for (std::size_t n = 0; n < N; ++n) {
      col_factor_[n] = col_pow_[n] > T(0)
                           ? detail::magnitude_pow(col_sum_[n], alpha_) /
                                 col_pow_[n]
                           : T(0);
    }
    return T(1) / detail::real_pow(static_cast<T>(M * N), alpha_ - T(1));
  }

  // Weight matrix in the literal |C_n R_m|^a / ((MN)^(a-1) P_n Q_m) form.
  WeightMatrix<T> weights(const SignalMatrix<T> &S) {
    const std::size_t M = S.rows();
    const std::size_t N = S.cols();
    WeightMatrix<T> w(M, N, T(1));
    if (alpha_ == T(0)) {
      return w;
    }
    col_sum_.assign(N, std::complex<T>{});
    col_pow_.assign(N, T{});
    row_sum_.assign(M, std::complex<T>{});
    row_pow_.assign(M, T{});
    for (std::size_t m = 0; m < M; ++m) {
      const auto row = S.row(m);
      for (std::size_t n = 0; n < N; ++n) {
        const T p = detail::magnitude_pow(row[n], alpha_);
        row_sum_[m] += row[n];
        row_pow_[m] += p;
        col_sum_[n] += row[n];
        col_pow_[n] += p;
      }
    }
    const T norm = detail::real_pow(static_cast<T>(M * N), alpha_ - T(1));
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t n = 0; n < N; ++n) {
        const T den = norm * col_pow_[n] * row_pow_[m];
        w(m, n) = den > T(0) ? detail::magnitude_pow(col_sum_[n] * row_sum_[m],
                                                     alpha_) /
                                   den
                             : T(0);
      }
    }
    return w;
  }

  std::complex<T> beamform(const SignalMatrix<T> &S) {
    const std::size_t M = S.rows();
    const std::size_t N = S.cols();
    if (M == 0 || N == 0) {
      return {};
    }
    const T scale = factors(S);
    std::complex<T> acc{};
    for (std::size_t m = 0; m < M; ++m) {
      const auto row = S.row(m);
      std::complex<T> row_sum{};
      for (std::size_t n = 0; n < N; ++n) {
        row_sum += col_factor_[n] * row[n];
      }
      acc += row_factor_[m] * row_sum;
    }
    return (scale * acc) / static_cast<T>(M * N);
  }

private:
  JcfParams params_;
  T alpha_{};
  std::vector<std::complex<T>> col_sum_, row_sum_;
  std::vector<T> col_pow_, row_pow_;
  std::vector<T> col_factor_, row_factor_;
};

template <typename T>
WeightMatrix<T> jcf_weights_factorized(const SignalMatrix<T> &S,
                                       const JcfParams &params) {
  JcfKernel<T> kernel(params);
  return kernel.weights(S);
}

template <typename T>
std::complex<T> beamform_jcf(const SignalMatrix<T> &S,
                             const JcfParams &params) {
  JcfKernel<T> kernel(params);
  return kernel.beamform(S);
}

// Weighted coherent mean for an explicit weight matrix.
template <typename T>
std::complex<T> apply_weights(const SignalMatrix<T> &S,
                              const WeightMatrix<T> &w) {
  require(w.rows == S.rows() && w.cols == S.cols(),
          "weight matrix shape mismatch");
  std::complex<T> acc{};
  for (std::size_t m = 0; m < S.rows(); ++m) {
    for (std::size_t n = 0; n < S.cols(); ++n) {
      acc += w(m, n) * S(m, n);
    }
  }
  return S.size() == 0 ? acc : acc / static_cast<T>(S.size());
}

} // namespace pwc
