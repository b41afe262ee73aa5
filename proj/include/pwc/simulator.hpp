#pragma once

#include "pwc/dataset.hpp"
#include "pwc/error.hpp"
#include "pwc/geometry.hpp"
#include "pwc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

namespace pwc {

struct Scatterer {
  double x{};         // [m]
  double z{};         // [m]
  double amplitude{}; // linear
};

struct Phantom {
  std::vector<Scatterer> scatterers;
  std::uint64_t rng_seed{0};

  void validate() const {
    for (const auto &s : scatterers) {
      require(std::isfinite(s.x) && std::isfinite(s.z) && s.z > 0,
              "scatterer positions must be finite with z > 0");
      require(std::isfinite(s.amplitude), "scatterer amplitude must be finite");
    }
  }

  Phantom &append(const Phantom &other) {
    scatterers.insert(scatterers.end(), other.scatterers.begin(),
                      other.scatterers.end());
    return *this;
  }
};

/*
Gaussian-enveloped cosine. The envelope width follows from the -6 dB
fractional bandwidth of the Gaussian spectrum.
*/
struct Pulse {
  double center_frequency{5.0e6};  // [Hz]
  double fractional_bandwidth{0.6}; // -6 dB, relative to center_frequency

  void validate() const {
    require(center_frequency > 0, "pulse center frequency must be > 0");
    require(fractional_bandwidth > 0, "pulse fractional bandwidth must be > 0");
  }

  // Envelope standard deviation in time [s].
  [[nodiscard]] double sigma_t() const {
    // Spectral amplitude halves at f0 +- BW/2: sigma_f = BW f0 / (2 sqrt(2 ln 2)).
    const double sigma_f = fractional_bandwidth * center_frequency /
                           (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    return 1.0 / (2.0 * std::numbers::pi * sigma_f);
  }

  // Half-width beyond which the envelope is below 1e-12.
  [[nodiscard]] double support() const { return 7.5 * sigma_t(); }

  [[nodiscard]] double operator()(double t) const {
    const double s = sigma_t();
    return std::exp(-0.5 * (t * t) / (s * s)) *
           std::cos(2.0 * std::numbers::pi * center_frequency * t);
  }
};

struct SimulationParams {
  double sample_rate{20.0e6}; // [Hz]
  double duration{0.0};       // [s]; 0 = derive from the phantom
  double t0{0.0};             // [s]
  double speed_of_sound{kDefaultSpeedOfSound};
  bool directivity{false};    // cosine receive directivity
  std::size_t threads{1};
};

namespace detail {

inline void round_trip_bounds(const Phantom &phantom, const ProbeGeometry &probe,
                              const PlaneWaveSequence &seq, double c,
                              double &tmin, double &tmax) {
  tmin = std::numeric_limits<double>::infinity();
  tmax = -std::numeric_limits<double>::infinity();
  for (const auto &s : phantom.scatterers) {
    const Pixel p{s.x, s.z};
    for (double a : seq.angles) {
      const double tx = tx_delay(p, a, c);
      for (double xn : probe.element_positions) {
        const double t = tx + rx_delay(p, xn, c);
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
      }
    }
  }
}

} // namespace detail

// Record length (from params.t0) that holds every echo including its pulse tail.
inline double required_duration(const Phantom &phantom,
                                const ProbeGeometry &probe,
                                const PlaneWaveSequence &seq, const Pulse &pulse,
                                const SimulationParams &params) {
  if (phantom.scatterers.empty()) {
    return 0.0;
  }
  double tmin = 0;
  double tmax = 0;
  detail::round_trip_bounds(phantom, probe, seq, params.speed_of_sound, tmin,
                            tmax);
  return tmax + pulse.support() - params.t0;
}

/*
Linear single-scattering RF model:

  rf[m][n](t) = sum_s a_s * p(t - tx(s, theta_m) - rx(s, x_n))

with the same delay formulas the beamformer uses. No attenuation, no multiple
scattering. Samples are t0 + k / fs for k = 0 .. floor(duration * fs).
*/
inline RFDataset simulate_rf(const Phantom &phantom, const ProbeGeometry &probe,
                             const PlaneWaveSequence &sequence,
                             const Pulse &pulse,
                             const SimulationParams &params) {
  phantom.validate();
  probe.validate();
  sequence.validate();
  pulse.validate();
  require(params.sample_rate > 0, "sample rate must be > 0");
  require(params.speed_of_sound > 0, "speed of sound must be > 0");

  const double c = params.speed_of_sound;
  double duration = params.duration;
  const double needed = required_duration(phantom, probe, sequence, pulse,
                                          params);
  if (duration <= 0) {
    duration = std::max(needed, 1.0 / params.sample_rate);
  }
  if (!phantom.scatterers.empty()) {
    double tmin = 0;
    double tmax = 0;
    detail::round_trip_bounds(phantom, probe, sequence, c, tmin, tmax);
    if (tmin - pulse.support() < params.t0 || needed > duration) {
      std::ostringstream msg;
      msg << "scatterer echoes fall outside the temporal record: need t0 <= "
          << tmin - pulse.support() << " s and duration >= " << needed
          << " s (have t0 = " << params.t0 << " s, duration = " << duration
          << " s)";
      throw Error(ErrorCategory::InvalidArgument, msg.str());
    }
  }

  const auto T = static_cast<std::size_t>(std::floor(duration *
                                                     params.sample_rate)) + 1;
  RFDataset rf(probe, sequence, T, params.sample_rate, params.t0, c);
  const double fs = params.sample_rate;
  const double half = pulse.support();
  const std::size_t M = sequence.size();
  const std::size_t N = probe.size();
  const double dt = 1.0 / fs;
  const double inv_var = 1.0 / (pulse.sigma_t() * pulse.sigma_t());
  const double q = std::exp(-dt * dt * inv_var);
  const double omega = 2.0 * std::numbers::pi * pulse.center_frequency;
  const std::complex<double> step = std::polar(1.0, omega * dt);

  parallel_for(
      M * N, params.threads, [] { return 0; },
      [&](int, std::size_t i) {
        const std::size_t m = i / N;
        const std::size_t n = i % N;
        const double angle = sequence.angles[m];
        const double xn = probe.element_positions[n];
        auto trace = rf.trace(m, n);
        for (const auto &s : phantom.scatterers) {
          const Pixel p{s.x, s.z};
          const double tau = tx_delay(p, angle, c) + rx_delay(p, xn, c);
          double amp = s.amplitude;
          if (params.directivity) {
            amp *= s.z / std::hypot(s.x - xn, s.z);
          }
          const double k_lo =
              std::max(0.0, std::ceil((tau - half - params.t0) * fs));
          const double k_hi = std::min(static_cast<double>(T - 1),
                                       std::floor((tau + half - params.t0) * fs));
          if (k_hi < k_lo) {
            continue;
          }
          const auto lo = static_cast<std::size_t>(k_lo);
          const auto hi = static_cast<std::size_t>(k_hi);
          // Envelope and carrier advance by recurrence on the uniform sample
          // grid; the relative drift over one pulse support stays ~1e-14.
          const double u0 = params.t0 + static_cast<double>(lo) / fs - tau;
          double g = std::exp(-0.5 * u0 * u0 * inv_var);
          double r = std::exp(-(2.0 * u0 * dt + dt * dt) * 0.5 * inv_var);
          std::complex<double> carrier = std::polar(1.0, omega * u0);
          for (std::size_t k = lo; k <= hi; ++k) {
            trace[k] += amp * g * carrier.real();
            g *= r;
            r *= q;
            carrier *= step;
          }
        }
      });
  return rf;
}

/*
Uniformly scattered sub-resolution targets with standard-normal amplitudes.
The scatterer count is Poisson with mean density * area. Deterministic for a
given seed (within one standard library implementation).
*/
inline Phantom make_speckle_phantom(const Region &region, double density,
                                    std::uint64_t seed) {
  require(region.x1 > region.x0 && region.z1 > region.z0 && region.z0 > 0,
          "speckle region must be non-empty with z > 0");
  require(density >= 0 && std::isfinite(density),
          "speckle density must be >= 0");
  std::mt19937_64 rng(seed);
  const double area = (region.x1 - region.x0) * (region.z1 - region.z0);
  std::poisson_distribution<std::size_t> count_dist(density * area);
  const std::size_t count = density > 0 ? count_dist(rng) : 0;
  std::uniform_real_distribution<double> ux(region.x0, region.x1);
  std::uniform_real_distribution<double> uz(region.z0, region.z1);
  std::normal_distribution<double> amp(0.0, 1.0);

  Phantom ph;
  ph.rng_seed = seed;
  ph.scatterers.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = ux(rng);
    const double z = uz(rng);
    ph.scatterers.push_back({x, z, amp(rng)});
  }
  return ph;
}

// Scatterers per m^2 giving `per_cell` scatterers per wavelength-squared cell.
inline double speckle_density(double per_cell, const Pulse &pulse,
                              double c = kDefaultSpeedOfSound) {
  const double wavelength = c / pulse.center_frequency;
  return per_cell / (wavelength * wavelength);
}

} // namespace pwc
