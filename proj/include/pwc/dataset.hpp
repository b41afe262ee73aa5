#pragma once

#include "pwc/analytic.hpp"
#include "pwc/error.hpp"
#include "pwc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pwc {

/*
Raw RF channel data, samples laid out [transmit][element][time].
t0 is the time of the first sample relative to the wavefront crossing the
array origin.
*/
struct RFDataset {
  std::size_t num_transmits{};
  std::size_t num_elements{};
  std::size_t num_samples{};
  std::vector<double> samples;
  double sample_rate{}; // [Hz]
  double t0{};          // [s]
  double speed_of_sound{kDefaultSpeedOfSound};
  ProbeGeometry probe;
  PlaneWaveSequence sequence;

  RFDataset() = default;
  RFDataset(ProbeGeometry p, PlaneWaveSequence s, std::size_t t,
            double fs, double start_time = 0.0,
            double c = kDefaultSpeedOfSound)
      : num_transmits(s.size()), num_elements(p.size()), num_samples(t),
        samples(s.size() * p.size() * t, 0.0), sample_rate(fs),
        t0(start_time), speed_of_sound(c), probe(std::move(p)),
        sequence(std::move(s)) {}

  [[nodiscard]] std::size_t index(std::size_t m, std::size_t n,
                                  std::size_t t) const {
    return (m * num_elements + n) * num_samples + t;
  }

  [[nodiscard]] std::span<const double> trace(std::size_t m,
                                              std::size_t n) const {
    return {samples.data() + index(m, n, 0), num_samples};
  }
  [[nodiscard]] std::span<double> trace(std::size_t m, std::size_t n) {
    return {samples.data() + index(m, n, 0), num_samples};
  }

  void validate() const {
    probe.validate();
    sequence.validate();
    require(num_elements == probe.size(),
            "dataset element count does not match probe",
            ErrorCategory::Format);
    require(num_transmits == sequence.size(),
            "dataset transmit count does not match sequence",
            ErrorCategory::Format);
    require(samples.size() == num_transmits * num_elements * num_samples,
            "dataset sample buffer size does not match dimensions",
            ErrorCategory::Format);
    require(sample_rate > 0, "sample rate must be > 0");
    require(speed_of_sound > 0, "speed of sound must be > 0");
    require(std::isfinite(t0), "t0 must be finite");
    require(std::all_of(samples.begin(), samples.end(),
                        [](double v) { return std::isfinite(v); }),
            "dataset contains non-finite samples", ErrorCategory::Numeric);
  }
};

// Complex analytic version of an RFDataset, same layout and metadata.
template <typename T = double> struct AnalyticDataset {
  std::size_t num_transmits{};
  std::size_t num_elements{};
  std::size_t num_samples{};
  std::vector<std::complex<T>> samples;
  double sample_rate{};
  double t0{};
  double speed_of_sound{kDefaultSpeedOfSound};
  ProbeGeometry probe;
  PlaneWaveSequence sequence;

  [[nodiscard]] std::span<const std::complex<T>> trace(std::size_t m,
                                                       std::size_t n) const {
    return {samples.data() + (m * num_elements + n) * num_samples,
            num_samples};
  }
};

// Converts every channel once; per-pixel work then only interpolates.
template <typename T = double>
AnalyticDataset<T> make_analytic(const RFDataset &rf) {
  rf.validate();
  AnalyticDataset<T> out;
  out.num_transmits = rf.num_transmits;
  out.num_elements = rf.num_elements;
  out.num_samples = rf.num_samples;
  out.sample_rate = rf.sample_rate;
  out.t0 = rf.t0;
  out.speed_of_sound = rf.speed_of_sound;
  out.probe = rf.probe;
  out.sequence = rf.sequence;
  out.samples.resize(rf.samples.size());
  if (rf.num_samples < 2) {
    std::transform(rf.samples.begin(), rf.samples.end(), out.samples.begin(),
                   [](double v) { return std::complex<T>(static_cast<T>(v)); });
    return out;
  }

  AnalyticTransform transform(rf.num_samples);
  std::vector<std::complex<double>> tmp(rf.num_samples);
  for (std::size_t m = 0; m < rf.num_transmits; ++m) {
    for (std::size_t n = 0; n < rf.num_elements; ++n) {
      transform.apply<double>(rf.trace(m, n), tmp);
      auto *dst = out.samples.data() + rf.index(m, n, 0);
      for (std::size_t t = 0; t < rf.num_samples; ++t) {
        dst[t] = std::complex<T>(tmp[t]);
      }
    }
  }
  return out;
}

} // namespace pwc
