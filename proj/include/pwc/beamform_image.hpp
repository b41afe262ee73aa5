#pragma once

#include "pwc/beamformers/coherence.hpp"
#include "pwc/beamformers/das.hpp"
#include "pwc/beamformers/fdmas.hpp"
#include "pwc/beamformers/jcf.hpp"
#include "pwc/beamformers/minvar.hpp"
#include "pwc/dataset.hpp"
#include "pwc/error.hpp"
#include "pwc/geometry.hpp"
#include "pwc/parallel.hpp"
#include "pwc/signal_matrix.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pwc {

enum class Method { Das, Cf, Gcf, Pcf, Ucf, Fdmas, MinVar, Jcf };

enum class JcfKernelKind { Factorized, Direct };

inline constexpr std::array<Method, 8> kAllMethods = {
    Method::Das, Method::Cf,    Method::Gcf,    Method::Pcf,
    Method::Ucf, Method::Fdmas, Method::MinVar, Method::Jcf};

constexpr std::string_view method_name(Method m) {
  switch (m) {
  case Method::Das:
    return "das";
  case Method::Cf:
    return "cf";
  case Method::Gcf:
    return "gcf";
  case Method::Pcf:
    return "pcf";
  case Method::Ucf:
    return "ucf";
  case Method::Fdmas:
    return "fdmas";
  case Method::MinVar:
    return "minvar";
  case Method::Jcf:
    return "jcf";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) {
      return m;
    }
  }
  return std::nullopt;
}

struct MethodConfig {
  Method method{Method::Das};
  JcfParams jcf{};
  JcfKernelKind jcf_kernel{JcfKernelKind::Factorized};
  BaselineParams baseline{};
  MinVarParams minvar{};

  // Display label, e.g. "jcf2" or "das".
  [[nodiscard]] std::string label() const {
    std::string s(method_name(method));
    if (method == Method::Jcf) {
      const double a = jcf.alpha;
      if (a == static_cast<double>(static_cast<long long>(a))) {
        s += std::to_string(static_cast<long long>(a));
      } else {
        s += "_a" + std::to_string(a);
      }
      if (jcf_kernel == JcfKernelKind::Direct) {
        s += "_direct";
      }
    }
    return s;
  }
};

/*
Complex beamformed field on an imaging grid, stored depth-major:
value(ix, iz) = field[iz * width + ix].
*/
template <typename T = double> struct BeamformedImage {
  ImagingGrid grid;
  std::vector<std::complex<T>> field;
  // Non-zero where the pixel needed a fallback (MinVar singular covariance).
  std::vector<std::uint8_t> flags;

  [[nodiscard]] std::size_t width() const { return grid.width(); }
  [[nodiscard]] std::size_t height() const { return grid.height(); }
  std::complex<T> &at(std::size_t ix, std::size_t iz) {
    return field[iz * width() + ix];
  }
  const std::complex<T> &at(std::size_t ix, std::size_t iz) const {
    return field[iz * width() + ix];
  }
  [[nodiscard]] std::size_t flagged_count() const {
    return static_cast<std::size_t>(
        std::count_if(flags.begin(), flags.end(),
                      [](std::uint8_t f) { return f != 0; }));
  }
};

struct ImageOptions {
  std::size_t threads{1}; // 0 = hardware concurrency
  double f_number{0.0};   // receive f-number mask; 0 disables
};

namespace detail {

template <typename T> struct PixelWorker {
  SignalMatrixBuilder<T> builder;
  SignalMatrix<T> S;
  std::optional<JcfKernel<T>> jcf;
  std::optional<GcfKernel<T>> gcf;
  std::vector<std::vector<std::complex<T>>> axial_rows;
};

} // namespace detail

/*
Builds the signal matrix at every grid node and applies the selected
beamformer. Each pixel is computed independently, so the field is bitwise
identical for any thread count.
*/
template <typename T>
BeamformedImage<T> beamform_image(const AnalyticDataset<T> &data,
                                  const ImagingGrid &grid,
                                  const MethodConfig &config,
                                  const ImageOptions &options = {}) {
  grid.validate();
  const std::size_t W = grid.width();
  const std::size_t H = grid.height();
  const std::size_t N = data.num_elements;

  // Validate parameters up front so errors surface before any pixel work.
  switch (config.method) {
  case Method::Jcf:
    config.jcf.validate();
    break;
  case Method::Gcf:
    require(config.baseline.gcf_cutoff < N, "GCF cutoff M0 must be < N");
    break;
  case Method::Pcf:
    require(config.baseline.pcf_gamma >= 0 && config.baseline.pcf_sigma0 > 0,
            "PCF requires gamma >= 0 and sigma0 > 0");
    break;
  case Method::Fdmas:
    require(config.baseline.dmas_max_lag <= N - 1,
            "fDMAS max lag must be <= N - 1");
    break;
  case Method::MinVar: {
    const auto L = config.minvar.resolved_length(N);
    require(L >= 1 && L <= N, "MinVar subarray length must satisfy 1 <= L <= N");
    require(config.minvar.diagonal_loading > 0,
            "MinVar diagonal loading must be > 0");
    break;
  }
  default:
    break;
  }

  BeamformedImage<T> image;
  image.grid = grid;
  image.field.assign(W * H, std::complex<T>{});
  image.flags.assign(W * H, 0);

  auto make_worker = [&] {
    detail::PixelWorker<T> w{
        SignalMatrixBuilder<T>(data, grid.speed_of_sound, options.f_number),
        {},
        std::nullopt,
        std::nullopt,
        {}};
    if (config.method == Method::Jcf) {
      w.jcf.emplace(config.jcf);
    }
    if (config.method == Method::Gcf) {
      w.gcf.emplace(N, config.baseline.gcf_cutoff);
    }
    return w;
  };

  auto body = [&](detail::PixelWorker<T> &w, std::size_t i) {
    const std::size_t iz = i / W;
    const std::size_t ix = i % W;
    const Pixel p = grid.pixel(ix, iz);
    std::complex<T> value{};

    if (config.method == Method::MinVar) {
      const std::size_t K = config.minvar.axial_half_window;
      const std::size_t lo = iz >= K ? iz - K : 0;
      const std::size_t hi = std::min(H - 1, iz + K);
      w.axial_rows.clear();
      for (std::size_t k = lo; k <= hi; ++k) {
        w.builder.build(grid.pixel(ix, k), w.S);
        w.axial_rows.push_back(compound_rows(w.S));
      }
      const auto r = beamform_minvar_rows<T>(w.axial_rows, iz - lo,
                                             config.minvar);
      value = r.value;
      image.flags[i] = r.singular ? 1 : 0;
      image.field[i] = value;
      return;
    }

    w.builder.build(p, w.S);
    switch (config.method) {
    case Method::Das:
      value = beamform_das(w.S);
      break;
    case Method::Jcf:
      if (config.jcf_kernel == JcfKernelKind::Direct) {
        value = apply_weights(w.S, jcf_weights_direct(w.S, config.jcf));
      } else {
        value = w.jcf->beamform(w.S);
      }
      break;
    case Method::Cf:
      value = beamform_cf(w.S);
      break;
    case Method::Gcf:
      value = w.gcf->beamform(w.S);
      break;
    case Method::Pcf:
      value = beamform_pcf(w.S, config.baseline);
      break;
    case Method::Ucf:
      value = beamform_ucf(w.S);
      break;
    case Method::Fdmas:
      value = beamform_fdmas(w.S, config.baseline);
      break;
    case Method::MinVar:
      break;
    }
    image.field[i] = value;
  };

  parallel_for(W * H, options.threads, make_worker, body);
  return image;
}

} // namespace pwc
