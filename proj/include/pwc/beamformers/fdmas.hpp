#pragma once

#include "pwc/beamformers/coherence.hpp"
#include "pwc/error.hpp"
#include "pwc/signal_matrix.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace pwc {

template <typename T> T signed_sqrt(T v) {
  return std::copysign(std::sqrt(std::abs(v)), v);
}

/*
Delay-multiply-and-sum over receive lags 1..L of the angle-compounded real
channel signals, each passed through a signed square root. No band-pass stage.
*/
template <typename T>
T beamform_fdmas(const SignalMatrix<T> &S, const BaselineParams &params) {
  const std::size_t M = S.rows();
  const std::size_t N = S.cols();
  if (N < 2) {
    return T(0);
  }
  const std::size_t L = params.dmas_max_lag == 0 ? N - 1 : params.dmas_max_lag;
  require(L <= N - 1, "fDMAS max lag must be <= N - 1");

  std::vector<T> root(N);
  for (std::size_t n = 0; n < N; ++n) {
    T compounded{};
    for (std::size_t m = 0; m < M; ++m) {
      compounded += S(m, n).real();
    }
    root[n] = compounded == T(0) ? T(0) : signed_sqrt(compounded);
  }

  T acc{};
  for (std::size_t l = 1; l <= L; ++l) {
    for (std::size_t n = 0; n + l < N; ++n) {
      acc += root[n] * root[n + l];
    }
  }
  return acc;
}

} // namespace pwc
