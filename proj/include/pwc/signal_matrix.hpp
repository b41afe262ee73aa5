#pragma once

#include "pwc/analytic.hpp"
#include "pwc/dataset.hpp"
#include "pwc/geometry.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pwc {

/*
Per-pixel M x N matrix of time-aligned analytic samples, row m = transmit
angle, column n = receive element. Stored row-major.
*/
template <typename T = double> class SignalMatrix {
public:
  using value_type = std::complex<T>;

  SignalMatrix() = default;
  SignalMatrix(std::size_t rows, std::size_t cols, Pixel pixel = {})
      : rows_(rows), cols_(cols), data_(rows * cols), pixel_(pixel) {}
  SignalMatrix(std::size_t rows, std::size_t cols,
               std::vector<value_type> values, Pixel pixel = {})
      : rows_(rows), cols_(cols), data_(std::move(values)), pixel_(pixel) {
    require(data_.size() == rows_ * cols_, "signal matrix size mismatch");
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t size() const { return data_.size(); }
  [[nodiscard]] Pixel pixel() const { return pixel_; }
  void set_pixel(Pixel p) { pixel_ = p; }

  value_type &operator()(std::size_t m, std::size_t n) {
    return data_[m * cols_ + n];
  }
  const value_type &operator()(std::size_t m, std::size_t n) const {
    return data_[m * cols_ + n];
  }

  [[nodiscard]] std::span<const value_type> row(std::size_t m) const {
    return {data_.data() + m * cols_, cols_};
  }
  [[nodiscard]] std::span<value_type> row(std::size_t m) {
    return {data_.data() + m * cols_, cols_};
  }

  [[nodiscard]] std::span<const value_type> values() const { return data_; }
  [[nodiscard]] std::span<value_type> values() { return data_; }

  void resize(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    data_.resize(rows * cols);
  }

private:
  std::size_t rows_{};
  std::size_t cols_{};
  std::vector<value_type> data_;
  Pixel pixel_{};
};

/*
Reusable per-thread builder. Caches the steering trig and element positions so
each pixel costs M + N delay evaluations plus M * N interpolations.
*/
template <typename T = double> class SignalMatrixBuilder {
public:
  SignalMatrixBuilder(const AnalyticDataset<T> &data, double speed_of_sound,
                      double f_number = 0.0)
      : data_(&data), c_(speed_of_sound), f_number_(f_number),
        cos_(data.sequence.size()), sin_(data.sequence.size()),
        tx_(data.num_transmits), rx_(data.num_elements) {
    for (std::size_t m = 0; m < data.sequence.size(); ++m) {
      cos_[m] = std::cos(data.sequence.angles[m]);
      sin_[m] = std::sin(data.sequence.angles[m]);
    }
  }

  void build(Pixel p, SignalMatrix<T> &out) {
    const auto &d = *data_;
    const std::size_t M = d.num_transmits;
    const std::size_t N = d.num_elements;
    out.resize(M, N);
    out.set_pixel(p);

    for (std::size_t m = 0; m < M; ++m) {
      tx_[m] = (p.z * cos_[m] + p.x * sin_[m]) / c_;
    }
    for (std::size_t n = 0; n < N; ++n) {
      rx_[n] = rx_delay(p, d.probe.element_positions[n], c_);
    }

    for (std::size_t m = 0; m < M; ++m) {
      auto row = out.row(m);
      for (std::size_t n = 0; n < N; ++n) {
        if (f_number_ > 0 &&
            !receive_element_active(p, d.probe.element_positions[n],
                                    f_number_)) {
          row[n] = {};
          continue;
        }
        row[n] = sample_trace<T>(d.trace(m, n), tx_[m] + rx_[n],
                                 d.sample_rate, d.t0);
      }
    }
  }

  [[nodiscard]] SignalMatrix<T> build(Pixel p) {
    SignalMatrix<T> s;
    build(p, s);
    return s;
  }

private:
  const AnalyticDataset<T> *data_;
  double c_;
  double f_number_;
  std::vector<double> cos_, sin_;
  std::vector<double> tx_, rx_;
};

template <typename T>
SignalMatrix<T> build_signal_matrix(const AnalyticDataset<T> &data, Pixel p,
                                    const ImagingGrid &grid) {
  require(p.z > 0, "pixel depth must be > 0");
  SignalMatrixBuilder<T> builder(data, grid.speed_of_sound);
  return builder.build(p);
}

} // namespace pwc
