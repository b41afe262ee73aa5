#pragma once

#include "pwc/error.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace pwc {

// Real-valued M x N weights, row-major.
template <typename T = double> struct WeightMatrix {
  std::size_t rows{};
  std::size_t cols{};
  std::vector<T> values;

  WeightMatrix() = default;
  WeightMatrix(std::size_t m, std::size_t n, T fill = T{})
      : rows(m), cols(n), values(m * n, fill) {}

  T &operator()(std::size_t m, std::size_t n) { return values[m * cols + n]; }
  T operator()(std::size_t m, std::size_t n) const {
    return values[m * cols + n];
  }
};

namespace detail {

template <typename T> constexpr T ipow(T base, unsigned exp) {
  T result = T(1);
  while (exp != 0U) {
    if ((exp & 1U) != 0U) {
      result *= base;
    }
    base *= base;
    exp >>= 1U;
  }
  return result;
}

// Small non-negative integer exponents take an exact multiply path.
template <typename T> bool small_integer(T alpha, unsigned &k) {
  if (alpha >= T(0) && alpha <= T(64) && std::floor(alpha) == alpha) {
    k = static_cast<unsigned>(alpha);
    return true;
  }
  return false;
}

// x^alpha for x >= 0, with 0^0 = 1.
template <typename T> T real_pow(T x, T alpha) {
  unsigned k = 0;
  if (small_integer(alpha, k)) {
    return ipow(x, k);
  }
  return std::pow(x, alpha);
}

// |z|^alpha, using the squared magnitude where it keeps things exact.
template <typename T> T magnitude_pow(std::complex<T> z, T alpha) {
  unsigned k = 0;
  if (small_integer(alpha, k)) {
    const T sq = std::norm(z);
    if (k % 2U == 0U) {
      return ipow(sq, k / 2U);
    }
    return std::abs(z) * ipow(sq, k / 2U);
  }
  if (z == std::complex<T>{}) {
    return alpha == T(0) ? T(1) : T(0);
  }
  return std::pow(std::norm(z), alpha / T(2));
}

} // namespace detail

} // namespace pwc
