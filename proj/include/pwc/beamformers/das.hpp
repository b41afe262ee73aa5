#pragma once

#include "pwc/signal_matrix.hpp"

#include <complex>
#include <cstddef>

namespace pwc {

// Coherent mean over all transmit/receive combinations.
template <typename T> std::complex<T> beamform_das(const SignalMatrix<T> &S) {
  const std::size_t M = S.rows();
  const std::size_t N = S.cols();
  if (M == 0 || N == 0) {
    return {};
  }
  std::complex<T> acc{};
  for (std::size_t m = 0; m < M; ++m) {
    std::complex<T> row_sum{};
    for (const auto &s : S.row(m)) {
      row_sum += s;
    }
    acc += row_sum;
  }
  return acc / static_cast<T>(M * N);
}

} // namespace pwc
