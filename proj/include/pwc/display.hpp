#pragma once

#include "pwc/beamform_image.hpp"
#include "pwc/error.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <vector>

namespace pwc {

inline constexpr double kReferenceGamma = 0.25;

/*
Gamma-compressed display image, depth-major like BeamformedImage.
contrast_K is std/mean of `pixels` (population std); 0 for an all-black image.
*/
struct DisplayImage {
  std::size_t width{};
  std::size_t height{};
  std::vector<double> pixels;
  double gamma{1.0};
  double contrast_K{0.0};

  [[nodiscard]] double at(std::size_t ix, std::size_t iz) const {
    return pixels[iz * width + ix];
  }
};

namespace detail {
struct Moments {
  double mean{};
  double stddev{};
};

inline Moments moments(const std::vector<double> &v) {
  Moments r;
  if (v.empty()) {
    return r;
  }
  double sum = 0.0;
  for (double x : v) {
    sum += x;
  }
  r.mean = sum / static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) {
    const double d = x - r.mean;
    var += d * d;
  }
  r.stddev = std::sqrt(var / static_cast<double>(v.size()));
  return r;
}
} // namespace detail

// K = sigma / mean over every displayed pixel.
inline double contrast(const std::vector<double> &pixels) {
  require(pixels.size() >= 2, "contrast needs at least 2 pixels");
  const auto m = detail::moments(pixels);
  require(m.mean > 0.0, "degenerate image: mean pixel value is zero",
          ErrorCategory::Numeric);
  return m.stddev / m.mean;
}

inline double contrast(const DisplayImage &image) {
  return contrast(image.pixels);
}

namespace detail {
template <typename T>
std::vector<double> magnitudes(const BeamformedImage<T> &B) {
  std::vector<double> mag(B.field.size());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    mag[i] = static_cast<double>(std::abs(B.field[i]));
  }
  return mag;
}

inline DisplayImage compress_magnitudes(const std::vector<double> &mag,
                                        std::size_t width, std::size_t height,
                                        double gamma) {
  DisplayImage img;
  img.width = width;
  img.height = height;
  img.gamma = gamma;
  img.pixels.resize(mag.size());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    img.pixels[i] = std::pow(mag[i], gamma);
  }
  const auto m = moments(img.pixels);
  img.contrast_K = m.mean > 0.0 ? m.stddev / m.mean : 0.0;
  return img;
}
} // namespace detail

template <typename T>
DisplayImage gamma_compress(const BeamformedImage<T> &B, double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), "gamma must be > 0");
  return detail::compress_magnitudes(detail::magnitudes(B), B.width(),
                                     B.height(), gamma);
}

struct MatchOptions {
  double gamma_min{0.01};
  double gamma_max{3.0};
  double tolerance{1e-4};
  // Tried first; accepted only if it reproduces the reference contrast
  // exactly (identical fields then get identical gammas).
  std::optional<double> gamma_hint;
};

struct MatchResult {
  double gamma{};
  DisplayImage image;
};

/*
Finds the gamma whose display contrast equals k_ref. Contrast grows strictly
with gamma whenever the field has two or more distinct non-zero magnitudes,
so bisection over [gamma_min, gamma_max] converges to the unique root.
*/
inline MatchResult match_contrast_magnitudes(const std::vector<double> &mag,
                                             std::size_t width,
                                             std::size_t height, double k_ref,
                                             const MatchOptions &opt = {}) {
  require(k_ref > 0.0 && std::isfinite(k_ref),
          "reference contrast must be > 0");
  require(mag.size() >= 2, "contrast matching needs at least 2 pixels");
  require(opt.gamma_min > 0.0 && opt.gamma_min < opt.gamma_max,
          "invalid gamma bracket");

  auto eval = [&](double g) {
    return detail::compress_magnitudes(mag, width, height, g);
  };

  if (opt.gamma_hint) {
    auto img = eval(*opt.gamma_hint);
    if (img.contrast_K == k_ref) {
      return {*opt.gamma_hint, std::move(img)};
    }
  }

  double lo = opt.gamma_min;
  double hi = opt.gamma_max;
  auto img_lo = eval(lo);
  auto img_hi = eval(hi);
  if (k_ref < img_lo.contrast_K - opt.tolerance ||
      k_ref > img_hi.contrast_K + opt.tolerance) {
    std::ostringstream msg;
    msg << "reference contrast " << k_ref
        << " unreachable: achievable K range is [" << img_lo.contrast_K << ", "
        << img_hi.contrast_K << "] for gamma in [" << lo << ", " << hi << "]";
    throw Error(ErrorCategory::Numeric, msg.str());
  }

  MatchResult best{lo, img_lo};
  double best_err = std::abs(img_lo.contrast_K - k_ref);
  if (std::abs(img_hi.contrast_K - k_ref) < best_err) {
    best = {hi, img_hi};
    best_err = std::abs(img_hi.contrast_K - k_ref);
  }

  // Bisect well past the tolerance so the result is as close as doubles allow.
  for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
    const double mid = 0.5 * (lo + hi);
    auto img = eval(mid);
    const double err = std::abs(img.contrast_K - k_ref);
    if (err < best_err) {
      best_err = err;
      best = {mid, img};
    }
    if (img.contrast_K == k_ref) {
      break;
    }
    if (img.contrast_K < k_ref) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  if (best_err > opt.tolerance) {
    std::ostringstream msg;
    msg << "contrast matching did not converge: best |K - K_ref| = "
        << best_err << " (contrast may not be monotonic for this field)";
    throw Error(ErrorCategory::Numeric, msg.str());
  }
  return best;
}

template <typename T>
MatchResult match_contrast(const BeamformedImage<T> &B, double k_ref,
                           const MatchOptions &opt = {}) {
  return match_contrast_magnitudes(detail::magnitudes(B), B.width(),
                                   B.height(), k_ref, opt);
}

} // namespace pwc
