#pragma once

#include "pwc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace pwc {

inline constexpr double kDefaultSpeedOfSound = 1540.0; // [m/s]

struct Pixel {
  double x{}; // [m] azimuth
  double z{}; // [m] depth
};

// Axis-aligned rectangle in grid coordinates [m], bounds inclusive.
struct Region {
  double x0{}, x1{}, z0{}, z1{};

  [[nodiscard]] bool contains(Pixel p) const {
    return p.x >= x0 && p.x <= x1 && p.z >= z0 && p.z <= z1;
  }
};

namespace detail {
inline bool strictly_increasing(const std::vector<double> &v) {
  return std::adjacent_find(v.begin(), v.end(), [](double a, double b) {
           return !(a < b);
         }) == v.end();
}

inline bool all_finite(const std::vector<double> &v) {
  return std::all_of(v.begin(), v.end(),
                     [](double a) { return std::isfinite(a); });
}
} // namespace detail

/*
Linear array. Element positions are azimuthal coordinates with the origin at
the aperture center.
*/
struct ProbeGeometry {
  std::vector<double> element_positions; // [m]
  double element_pitch{};                // [m]
  double center_frequency{};             // [Hz]

  [[nodiscard]] std::size_t size() const { return element_positions.size(); }

  void validate() const {
    require(element_positions.size() >= 2,
            "probe needs at least 2 elements, got " +
                std::to_string(element_positions.size()));
    require(detail::all_finite(element_positions),
            "probe element positions must be finite");
    require(detail::strictly_increasing(element_positions),
            "probe element positions must be strictly increasing");
    require(element_pitch > 0, "probe pitch must be > 0");
    require(center_frequency > 0, "probe center frequency must be > 0");
  }

  // N elements at the given pitch, symmetric about x = 0.
  static ProbeGeometry linear(std::size_t n, double pitch,
                              double center_frequency) {
    ProbeGeometry p;
    p.element_pitch = pitch;
    p.center_frequency = center_frequency;
    p.element_positions.resize(n);
    const double mid = (static_cast<double>(n) - 1.0) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      p.element_positions[i] = (static_cast<double>(i) - mid) * pitch;
    }
    p.validate();
    return p;
  }
};

struct PlaneWaveSequence {
  std::vector<double> angles; // [rad]

  [[nodiscard]] std::size_t size() const { return angles.size(); }

  void validate() const {
    require(!angles.empty(), "plane-wave sequence needs at least one angle");
    for (double a : angles) {
      require(std::isfinite(a) && std::abs(a) < std::numbers::pi / 2,
              "steering angles must satisfy |theta| < pi/2");
    }
  }

  // M angles uniformly spanning [min_deg, max_deg] inclusive.
  static PlaneWaveSequence uniform_degrees(std::size_t m, double min_deg,
                                           double max_deg) {
    require(m >= 1, "plane-wave sequence needs at least one angle");
    PlaneWaveSequence s;
    s.angles.resize(m);
    constexpr double deg = std::numbers::pi / 180.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double f =
          m == 1 ? 0.5
                 : static_cast<double>(i) / static_cast<double>(m - 1);
      s.angles[i] = (min_deg + f * (max_deg - min_deg)) * deg;
    }
    s.validate();
    return s;
  }
};

struct ImagingGrid {
  std::vector<double> x_coords; // [m], width W
  std::vector<double> z_coords; // [m], height H
  double speed_of_sound{kDefaultSpeedOfSound};

  [[nodiscard]] std::size_t width() const { return x_coords.size(); }
  [[nodiscard]] std::size_t height() const { return z_coords.size(); }
  [[nodiscard]] std::size_t size() const { return width() * height(); }

  [[nodiscard]] Pixel pixel(std::size_t ix, std::size_t iz) const {
    return {x_coords[ix], z_coords[iz]};
  }

  void validate() const {
    require(!x_coords.empty() && !z_coords.empty(), "imaging grid is empty");
    require(detail::all_finite(x_coords) && detail::all_finite(z_coords),
            "imaging grid coordinates must be finite");
    require(detail::strictly_increasing(x_coords) &&
                detail::strictly_increasing(z_coords),
            "imaging grid coordinates must be strictly increasing");
    require(z_coords.front() > 0, "imaging grid depths must be > 0");
    require(speed_of_sound > 0, "speed of sound must be > 0");
  }

  static ImagingGrid uniform(double x0, double x1, std::size_t nx, double z0,
                             double z1, std::size_t nz,
                             double c = kDefaultSpeedOfSound) {
    auto linspace = [](double a, double b, std::size_t n) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? a
                      : a + (b - a) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
      }
      return v;
    };
    ImagingGrid g{linspace(x0, x1, nx), linspace(z0, z1, nz), c};
    g.validate();
    return g;
  }
};

// Plane-wave arrival time at the pixel; t = 0 when the wavefront crosses the
// array origin.
inline double tx_delay(Pixel p, double angle, double c) {
  return (p.z * std::cos(angle) + p.x * std::sin(angle)) / c;
}
inline double tx_delay(Pixel p, double angle, const ImagingGrid &grid) {
  return tx_delay(p, angle, grid.speed_of_sound);
}

// Return path from the pixel to a receive element at (element_x, 0).
inline double rx_delay(Pixel p, double element_x, double c) {
  return std::hypot(p.x - element_x, p.z) / c;
}
inline double rx_delay(Pixel p, double element_x, const ImagingGrid &grid) {
  return rx_delay(p, element_x, grid.speed_of_sound);
}

// Optional receive f-number mask; f_number <= 0 disables masking.
inline bool receive_element_active(Pixel p, double element_x,
                                   double f_number) {
  if (f_number <= 0) {
    return true;
  }
  return std::abs(p.x - element_x) / p.z <= 1.0 / (2.0 * f_number);
}

} // namespace pwc
