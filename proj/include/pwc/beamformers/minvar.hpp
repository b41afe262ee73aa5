#pragma once

#include "pwc/error.hpp"
#include "pwc/signal_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pwc {

struct MinVarParams {
  std::size_t subarray_length{0}; // L; 0 selects floor(N / 4)
  std::size_t axial_half_window{1}; // K
  double diagonal_loading{0.01};    // Delta

  [[nodiscard]] std::size_t resolved_length(std::size_t num_elements) const {
    if (subarray_length != 0) {
      return subarray_length;
    }
    return std::max<std::size_t>(1, num_elements / 4);
  }
};

template <typename T> struct MinVarResult {
  std::complex<T> value{};
  // Capon weights (length L); empty when the pixel fell back to DAS.
  std::vector<std::complex<T>> weights;
  bool singular{false};
};

// Angle-compounded receive row s_n = sum_m s[m][n].
template <typename T>
std::vector<std::complex<T>> compound_rows(const SignalMatrix<T> &S) {
  std::vector<std::complex<T>> out(S.cols());
  for (std::size_t m = 0; m < S.rows(); ++m) {
    const auto row = S.row(m);
    for (std::size_t n = 0; n < S.cols(); ++n) {
      out[n] += row[n];
    }
  }
  return out;
}

/*
Capon minimum-variance beamforming on angle-compounded receive rows.

`axial_rows` holds the compounded rows of the pixel and its available axial
neighbours; `center` indexes the pixel itself. The covariance averages all
length-L subarrays over every row in the window, is diagonally loaded by
(Delta / L) tr(R), and the distortionless weights R^-1 a / (a^H R^-1 a) with
a = ones are applied to the centre row's subarrays.
*/
template <typename T>
MinVarResult<T>
beamform_minvar_rows(std::span<const std::vector<std::complex<T>>> axial_rows,
                     std::size_t center, const MinVarParams &params) {
  using Cplx = std::complex<T>;
  using Mat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Cplx, Eigen::Dynamic, 1>;

  require(center < axial_rows.size(), "MinVar centre index out of range");
  const auto &row = axial_rows[center];
  const std::size_t N = row.size();
  const std::size_t L = params.resolved_length(N);
  require(L >= 1 && L <= N, "MinVar subarray length must satisfy 1 <= L <= N");
  require(params.diagonal_loading > 0, "MinVar diagonal loading must be > 0");
  const std::size_t num_sub = N - L + 1;

  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

  // Snapshot matrix: one column per (axial sample, subarray).
  Mat X(idx(L), idx(num_sub * axial_rows.size()));
  Eigen::Index col = 0;
  for (const auto &r : axial_rows) {
    require(r.size() == N, "MinVar axial rows must share a length");
    for (std::size_t n = 0; n < num_sub; ++n, ++col) {
      for (std::size_t l = 0; l < L; ++l) {
        X(idx(l), col) = r[n + l];
      }
    }
  }
  Mat R = (X * X.adjoint()) / static_cast<T>(X.cols());

  const auto subarray_mean = [&]() {
    // DAS of the compounded row, used when the covariance is degenerate.
    Cplx acc{};
    for (const auto &s : row) {
      acc += s;
    }
    return acc / static_cast<T>(N);
  };

  const T trace = R.trace().real();
  MinVarResult<T> result;
  if (!(trace > T(0))) {
    result.value = subarray_mean();
    result.singular = true;
    return result;
  }
  R.diagonal().array() +=
      Cplx(static_cast<T>(params.diagonal_loading) * trace / static_cast<T>(L));

  Eigen::LLT<Mat> llt(R);
  if (llt.info() != Eigen::Success) {
    result.value = subarray_mean();
    result.singular = true;
    return result;
  }
  const Vec a = Vec::Ones(idx(L));
  const Vec Ria = llt.solve(a);
  const Cplx denom = a.dot(Ria); // a^H R^-1 a
  const Vec w = Ria / denom;

  Cplx acc{};
  for (std::size_t n = 0; n < num_sub; ++n) {
    for (std::size_t l = 0; l < L; ++l) {
      acc += std::conj(w(idx(l))) * row[n + l];
    }
  }
  result.value = acc / static_cast<T>(num_sub);
  result.weights.assign(w.data(), w.data() + w.size());
  return result;
}

// Stack of signal matrices at the pixel and its axial neighbours.
template <typename T>
MinVarResult<T> beamform_minvar(std::span<const SignalMatrix<T>> axial_stack,
                                std::size_t center,
                                const MinVarParams &params) {
  std::vector<std::vector<std::complex<T>>> rows;
  rows.reserve(axial_stack.size());
  for (const auto &S : axial_stack) {
    rows.push_back(compound_rows(S));
  }
  return beamform_minvar_rows<T>(rows, center, params);
}

} // namespace pwc
