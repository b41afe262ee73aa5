#pragma once

#include "pwc/display.hpp"
#include "pwc/error.hpp"
#include "pwc/geometry.hpp"

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace pwc {

struct QualityReport {
  std::string algorithm;
  double gamma{};
  double contrast_K{};
  Pixel peak_position{};
  double fwhm_x{}; // [m]
  double fwhm_z{}; // [m]
  // Mean of the background region, in units of the image maximum.
  double background_mean{};
  double elapsed{}; // [s]

  bool peak_found{false};
  bool fwhm_x_clipped{false}; // no half-maximum crossing inside the window
  bool fwhm_z_clipped{false};
};

namespace detail {

struct IndexRange {
  std::size_t begin{};
  std::size_t end{}; // exclusive
  [[nodiscard]] bool empty() const { return begin >= end; }
};

inline IndexRange index_range(const std::vector<double> &coords, double lo,
                              double hi) {
  const auto b = std::lower_bound(coords.begin(), coords.end(), lo);
  const auto e = std::upper_bound(coords.begin(), coords.end(), hi);
  return {static_cast<std::size_t>(b - coords.begin()),
          static_cast<std::size_t>(e - coords.begin())};
}

/*
Width at half of `peak` along a 1-D profile, walking outwards from `center`
inside [range.begin, range.end). Crossings are linearly interpolated between
grid nodes. Returns false if either side never drops below half maximum.
*/
inline bool half_max_width(const std::vector<double> &profile,
                           const std::vector<double> &coords,
                           IndexRange range, std::size_t center, double &width) {
  const double half = 0.5 * profile[center];
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double a = profile[inside];
    const double b = profile[outside];
    const double f = (a - half) / (a - b);
    return coords[inside] + f * (coords[outside] - coords[inside]);
  };

  std::optional<double> left;
  for (std::size_t i = center; i > range.begin; --i) {
    if (profile[i - 1] < half) {
      left = crossing(i, i - 1);
      break;
    }
  }
  std::optional<double> right;
  for (std::size_t i = center; i + 1 < range.end; ++i) {
    if (profile[i + 1] < half) {
      right = crossing(i, i + 1);
      break;
    }
  }
  if (!left || !right) {
    return false;
  }
  width = *right - *left;
  return true;
}

} // namespace detail

/*
Peak position, FWHM along the x and z lines through the peak, and mean
background level of a display image. Background values are normalized by the
global image maximum, which is also what export_pgm maps to full scale.
*/
inline QualityReport image_metrics(const DisplayImage &image,
                                   const ImagingGrid &grid,
                                   const Region &peak_window,
                                   const Region &background) {
  require(image.width == grid.width() && image.height == grid.height(),
          "display image does not match grid");
  const auto wx = detail::index_range(grid.x_coords, peak_window.x0,
                                      peak_window.x1);
  const auto wz = detail::index_range(grid.z_coords, peak_window.z0,
                                      peak_window.z1);
  require(!wx.empty() && !wz.empty(), "peak window contains no grid nodes");
  const auto bx = detail::index_range(grid.x_coords, background.x0,
                                      background.x1);
  const auto bz = detail::index_range(grid.z_coords, background.z0,
                                      background.z1);
  require(!bx.empty() && !bz.empty(),
          "background region contains no grid nodes");

  QualityReport r;
  r.gamma = image.gamma;
  r.contrast_K = image.contrast_K;

  const double window_w = grid.x_coords[wx.end - 1] - grid.x_coords[wx.begin];
  const double window_h = grid.z_coords[wz.end - 1] - grid.z_coords[wz.begin];

  std::size_t px = wx.begin;
  std::size_t pz = wz.begin;
  double vmax = image.at(px, pz);
  double vmin = vmax;
  for (std::size_t iz = wz.begin; iz < wz.end; ++iz) {
    for (std::size_t ix = wx.begin; ix < wx.end; ++ix) {
      const double v = image.at(ix, iz);
      if (v > vmax) {
        vmax = v;
        px = ix;
        pz = iz;
      }
      vmin = std::min(vmin, v);
    }
  }
  r.peak_position = grid.pixel(px, pz);
  r.peak_found = vmax > vmin;

  r.fwhm_x = window_w;
  r.fwhm_z = window_h;
  r.fwhm_x_clipped = true;
  r.fwhm_z_clipped = true;
  if (r.peak_found) {
    std::vector<double> row(image.width);
    for (std::size_t ix = 0; ix < image.width; ++ix) {
      row[ix] = image.at(ix, pz);
    }
    std::vector<double> col(image.height);
    for (std::size_t iz = 0; iz < image.height; ++iz) {
      col[iz] = image.at(px, iz);
    }
    double w = 0.0;
    if (detail::half_max_width(row, grid.x_coords, wx, px, w)) {
      r.fwhm_x = w;
      r.fwhm_x_clipped = false;
    }
    if (detail::half_max_width(col, grid.z_coords, wz, pz, w)) {
      r.fwhm_z = w;
      r.fwhm_z_clipped = false;
    }
  }

  const double global_max =
      image.pixels.empty()
          ? 0.0
          : *std::max_element(image.pixels.begin(), image.pixels.end());
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t iz = bz.begin; iz < bz.end; ++iz) {
    for (std::size_t ix = bx.begin; ix < bx.end; ++ix) {
      sum += image.at(ix, iz);
      ++count;
    }
  }
  const double mean = sum / static_cast<double>(count);
  r.background_mean = global_max > 0.0 ? mean / global_max : 0.0;
  return r;
}

inline constexpr const char *kReportCsvHeader =
    "algorithm,gamma,contrast_K,peak_x_m,peak_z_m,fwhm_x_m,fwhm_z_m,"
    "background_mean,elapsed_s";

// One CSV row; `include_timing` = false writes 0 so rows are reproducible.
inline std::string to_csv_row(const QualityReport &r,
                              bool include_timing = true) {
  std::ostringstream os;
  os << std::setprecision(10) << r.algorithm << ',' << r.gamma << ','
     << r.contrast_K << ',' << r.peak_position.x << ',' << r.peak_position.z
     << ',' << r.fwhm_x << ',' << r.fwhm_z << ',' << r.background_mean << ','
     << (include_timing ? r.elapsed : 0.0);
  return os.str();
}

inline void write_report_csv(std::ostream &os,
                             const std::vector<QualityReport> &reports,
                             const std::vector<std::string> &header_comments = {},
                             bool include_timing = true) {
  for (const auto &c : header_comments) {
    os << "# " << c << '\n';
  }
  os << kReportCsvHeader << '\n';
  for (const auto &r : reports) {
    os << to_csv_row(r, include_timing) << '\n';
  }
}

} // namespace pwc
