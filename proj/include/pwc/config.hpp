#pragma once

#include "pwc/beamform_image.hpp"
#include "pwc/display.hpp"
#include "pwc/error.hpp"
#include "pwc/geometry.hpp"
#include "pwc/simulator.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pwc {

// Grid given as ranges, "x0,x1,nx,z0,z1,nz" on the command line.
struct GridSpec {
  double x0{-0.008}, x1{0.008};
  std::size_t nx{128};
  double z0{0.022}, z1{0.038};
  std::size_t nz{128};

  [[nodiscard]] ImagingGrid make(double c) const {
    return ImagingGrid::uniform(x0, x1, nx, z0, z1, nz, c);
  }

  static GridSpec parse(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      parts.push_back(item);
    }
    require(parts.size() == 6,
            "grid must be 'x0,x1,nx,z0,z1,nz', got '" + text + "'");
    GridSpec g;
    try {
      g.x0 = std::stod(parts[0]);
      g.x1 = std::stod(parts[1]);
      g.nx = std::stoul(parts[2]);
      g.z0 = std::stod(parts[3]);
      g.z1 = std::stod(parts[4]);
      g.nz = std::stoul(parts[5]);
    } catch (const std::exception &) {
      throw Error(ErrorCategory::InvalidArgument,
                  "grid must be 'x0,x1,nx,z0,z1,nz', got '" + text + "'");
    }
    require(g.nx >= 1 && g.nz >= 1, "grid needs at least one node per axis");
    return g;
  }
};

struct RunConfig {
  std::vector<MethodConfig> methods;
  GridSpec grid;
  double reference_gamma{kReferenceGamma};
  std::filesystem::path output_dir{"out"};
  std::size_t threads{1};
  double f_number{0.0};
  std::optional<Region> peak_window;
  std::optional<Region> background_region;
  bool include_timing{true};

  void validate() const {
    require(!methods.empty(), "at least one method is required");
    require(reference_gamma > 0, "reference gamma must be > 0");
    // malformed JCF parameters are a config error, not a per-method skip
    for (const auto &m : methods) {
      if (m.method == Method::Jcf) {
        m.jcf.validate();
      }
    }
  }
};

struct AcquisitionConfig {
  std::size_t num_elements{128};
  double pitch{0.3e-3};
  double center_frequency{5.0e6};
  std::size_t num_angles{15};
  double min_angle_deg{-10.0};
  double max_angle_deg{10.0};
  Pulse pulse{};
  SimulationParams sim{};

  [[nodiscard]] ProbeGeometry probe() const {
    return ProbeGeometry::linear(num_elements, pitch, center_frequency);
  }
  [[nodiscard]] PlaneWaveSequence sequence() const {
    return PlaneWaveSequence::uniform_degrees(num_angles, min_angle_deg,
                                              max_angle_deg);
  }
};

namespace detail {

inline nlohmann::json load_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCategory::Io, "cannot open '" + path.string() +
                                       "': " + std::strerror(errno));
  }
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCategory::Format,
                "malformed JSON in '" + path.string() + "': " + e.what());
  }
}

inline Region region_from_json(const nlohmann::json &j) {
  return {j.at("x0").get<double>(), j.at("x1").get<double>(),
          j.at("z0").get<double>(), j.at("z1").get<double>()};
}

} // namespace detail

// Parses one entry of the "methods" array, e.g. {"name": "jcf", "alpha": 3}.
inline MethodConfig method_from_json(const nlohmann::json &j,
                                     const MethodConfig &defaults = {}) {
  MethodConfig mc = defaults;
  const auto name = j.at("name").get<std::string>();
  const auto m = parse_method(name);
  require(m.has_value(), "unknown method '" + name + "'");
  mc.method = *m;
  mc.jcf.alpha = j.value("alpha", mc.jcf.alpha);
  if (j.value("kernel", std::string{"factorized"}) == "direct") {
    mc.jcf_kernel = JcfKernelKind::Direct;
  }
  mc.baseline.gcf_cutoff = j.value("m0", mc.baseline.gcf_cutoff);
  mc.baseline.pcf_gamma = j.value("gamma", mc.baseline.pcf_gamma);
  mc.baseline.pcf_sigma0 = j.value("sigma0", mc.baseline.pcf_sigma0);
  mc.baseline.dmas_max_lag = j.value("lag", mc.baseline.dmas_max_lag);
  mc.minvar.subarray_length = j.value("L", mc.minvar.subarray_length);
  mc.minvar.axial_half_window = j.value("K", mc.minvar.axial_half_window);
  mc.minvar.diagonal_loading = j.value("delta", mc.minvar.diagonal_loading);
  return mc;
}

inline RunConfig run_config_from_json(const nlohmann::json &j) {
  RunConfig cfg;
  try {
    if (j.contains("methods")) {
      for (const auto &m : j.at("methods")) {
        cfg.methods.push_back(m.is_string()
                                  ? method_from_json({{"name", m}})
                                  : method_from_json(m));
      }
    }
    if (j.contains("grid")) {
      const auto &g = j.at("grid");
      cfg.grid.x0 = g.at("x0").get<double>();
      cfg.grid.x1 = g.at("x1").get<double>();
      cfg.grid.nx = g.at("nx").get<std::size_t>();
      cfg.grid.z0 = g.at("z0").get<double>();
      cfg.grid.z1 = g.at("z1").get<double>();
      cfg.grid.nz = g.at("nz").get<std::size_t>();
    }
    cfg.reference_gamma = j.value("reference_gamma", cfg.reference_gamma);
    cfg.output_dir = j.value("out", cfg.output_dir.string());
    cfg.threads = j.value("threads", cfg.threads);
    cfg.f_number = j.value("f_number", cfg.f_number);
    if (j.contains("peak_window")) {
      cfg.peak_window = detail::region_from_json(j.at("peak_window"));
    }
    if (j.contains("background_region")) {
      cfg.background_region =
          detail::region_from_json(j.at("background_region"));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCategory::Format,
                std::string("invalid run config: ") + e.what());
  }
  return cfg;
}

inline AcquisitionConfig acquisition_from_json(const nlohmann::json &j) {
  AcquisitionConfig a;
  try {
    if (j.contains("probe")) {
      const auto &p = j.at("probe");
      a.num_elements = p.value("elements", a.num_elements);
      a.pitch = p.value("pitch", a.pitch);
      a.center_frequency = p.value("center_frequency", a.center_frequency);
    }
    if (j.contains("angles")) {
      const auto &s = j.at("angles");
      a.num_angles = s.value("count", a.num_angles);
      a.min_angle_deg = s.value("min_deg", a.min_angle_deg);
      a.max_angle_deg = s.value("max_deg", a.max_angle_deg);
    }
    a.pulse.center_frequency = a.center_frequency;
    if (j.contains("pulse")) {
      const auto &p = j.at("pulse");
      a.pulse.center_frequency =
          p.value("center_frequency", a.pulse.center_frequency);
      a.pulse.fractional_bandwidth =
          p.value("fractional_bandwidth", a.pulse.fractional_bandwidth);
    }
    a.sim.sample_rate = j.value("sample_rate", 4.0 * a.pulse.center_frequency);
    a.sim.t0 = j.value("t0", a.sim.t0);
    a.sim.duration = j.value("duration", a.sim.duration);
    a.sim.speed_of_sound = j.value("speed_of_sound", a.sim.speed_of_sound);
    a.sim.directivity = j.value("directivity", a.sim.directivity);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCategory::Format,
                std::string("invalid acquisition config: ") + e.what());
  }
  return a;
}

/*
Phantom document: explicit "scatterers" [{x, z, amplitude}], an optional
"speckle" block {x0, x1, z0, z1, density} expanded with "rng_seed".
*/
inline Phantom phantom_from_json(const nlohmann::json &j,
                                 std::optional<std::uint64_t> seed_override = {}) {
  Phantom ph;
  try {
    ph.rng_seed = seed_override.value_or(j.value("rng_seed", std::uint64_t{0}));
    if (j.contains("scatterers")) {
      for (const auto &s : j.at("scatterers")) {
        ph.scatterers.push_back({s.at("x").get<double>(),
                                 s.at("z").get<double>(),
                                 s.value("amplitude", 1.0)});
      }
    }
    if (j.contains("speckle")) {
      const auto &s = j.at("speckle");
      const Region r = detail::region_from_json(s);
      auto speckle =
          make_speckle_phantom(r, s.at("density").get<double>(), ph.rng_seed);
      ph.append(speckle);
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCategory::Format,
                std::string("invalid phantom: ") + e.what());
  }
  ph.validate();
  return ph;
}

inline nlohmann::json phantom_to_json(const Phantom &ph) {
  nlohmann::json j;
  j["rng_seed"] = ph.rng_seed;
  j["scatterers"] = nlohmann::json::array();
  for (const auto &s : ph.scatterers) {
    j["scatterers"].push_back({{"x", s.x}, {"z", s.z}, {"amplitude", s.amplitude}});
  }
  return j;
}

} // namespace pwc
