#pragma once

#include "pwc/beamform_image.hpp"
#include "pwc/config.hpp"
#include "pwc/dataset.hpp"
#include "pwc/display.hpp"
#include "pwc/error.hpp"
#include "pwc/metrics.hpp"
#include "pwc/pgm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace pwc {

struct MethodOutcome {
  MethodConfig config;
  std::string label;
  BeamformedImage<double> image;
  DisplayImage display;
  QualityReport report;
};

struct MethodFailure {
  std::string label;
  std::string message;
};

struct CompareResult {
  double reference_contrast{};
  std::vector<MethodOutcome> outcomes; // DAS first
  std::vector<MethodFailure> failures;
  std::vector<std::string> header; // acquisition summary lines
};

inline std::vector<std::string> acquisition_summary(const AnalyticDataset<double> &data) {
  constexpr double deg = 180.0 / std::numbers::pi;
  const auto &a = data.sequence.angles;
  std::ostringstream angles;
  angles << std::setprecision(6) << "angles: " << a.size() << " from "
         << a.front() * deg << " to " << a.back() * deg << " deg";
  std::ostringstream probe;
  probe << std::setprecision(6) << "elements: " << data.num_elements
        << ", aperture " << data.probe.element_positions.front() << " .. "
        << data.probe.element_positions.back() << " m";
  std::ostringstream rec;
  rec << std::setprecision(8) << "samples: " << data.num_samples << " at "
      << data.sample_rate << " Hz, t0 " << data.t0 << " s, c "
      << data.speed_of_sound << " m/s";
  return {angles.str(), probe.str(), rec.str()};
}

/*
Beamforms DAS first, fixes the reference contrast from its display at the
reference gamma, then contrast-matches every other method to it. A method that
fails is recorded and skipped. The input dataset is only read.
*/
inline CompareResult run_compare(const RunConfig &config,
                                 const AnalyticDataset<double> &data,
                                 std::ostream *log = nullptr) {
  config.validate();
  const ImagingGrid grid = config.grid.make(data.speed_of_sound);
  const Region whole{grid.x_coords.front(), grid.x_coords.back(),
                     grid.z_coords.front(), grid.z_coords.back()};
  const Region window = config.peak_window.value_or(whole);
  const Region background = config.background_region.value_or(whole);
  const ImageOptions opts{config.threads, config.f_number};

  std::vector<MethodConfig> methods;
  methods.push_back(MethodConfig{});
  for (const auto &m : config.methods) {
    if (m.method != Method::Das) {
      methods.push_back(m);
    }
  }

  CompareResult result;
  result.header = acquisition_summary(data);
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto &mc = methods[i];
    const std::string label = mc.label();
    try {
      const auto start = std::chrono::steady_clock::now();
      auto image = beamform_image(data, grid, mc, opts);
      const double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();

      DisplayImage display;
      if (i == 0) {
        display = gamma_compress(image, config.reference_gamma);
        result.reference_contrast = contrast(display);
      } else {
        MatchOptions mo;
        mo.gamma_hint = config.reference_gamma;
        display = match_contrast(image, result.reference_contrast, mo).image;
      }
      auto report = image_metrics(display, grid, window, background);
      report.algorithm = label;
      report.elapsed = elapsed;
      if (log != nullptr) {
        *log << std::left << std::setw(12) << label << std::right
             << std::fixed << std::setprecision(3) << elapsed
             << " s  gamma " << std::setprecision(4) << display.gamma;
        if (image.flagged_count() > 0) {
          *log << "  (" << image.flagged_count() << " fallback pixels)";
        }
        *log << '\n' << std::defaultfloat;
      }
      result.outcomes.push_back(
          {mc, label, std::move(image), std::move(display), std::move(report)});
    } catch (const Error &e) {
      if (i == 0) {
        throw; // no reference contrast without DAS
      }
      if (log != nullptr) {
        *log << label << " failed: " << e.what() << '\n';
      }
      result.failures.push_back({label, e.what()});
    }
  }
  return result;
}

// One PGM per method plus report.csv in `dir`.
inline void write_compare_outputs(const CompareResult &result,
                                  const std::filesystem::path &dir,
                                  bool include_timing = true) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCategory::Io, "cannot create output directory '" +
                                       dir.string() + "': " + ec.message());
  }
  std::vector<QualityReport> reports;
  for (const auto &o : result.outcomes) {
    export_pgm(o.display, dir / (o.label + ".pgm"));
    reports.push_back(o.report);
  }
  const auto csv_path = dir / "report.csv";
  std::ofstream csv(csv_path, std::ios::trunc);
  if (!csv) {
    throw Error(ErrorCategory::Io,
                "cannot open '" + csv_path.string() + "' for writing");
  }
  write_report_csv(csv, reports, result.header, include_timing);
}

struct BenchTiming {
  std::string label;
  std::vector<double> seconds;
  double median{};
};

struct BenchReport {
  std::vector<BenchTiming> timings; // das, jcf, [jcf direct]
  double jcf_over_das{};
  double direct_over_jcf{}; // 0 when the direct kernel was skipped
};

inline double median(std::vector<double> v) {
  require(!v.empty(), "median of empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/*
Times DAS, factorized JCF and (optionally) the literal quadruple-sum JCF on the
same grid, reporting the median of `repetitions` runs each.
*/
inline BenchReport run_bench(const AnalyticDataset<double> &data,
                             const ImagingGrid &grid, const JcfParams &jcf,
                             std::size_t repetitions = 3,
                             bool include_direct = true,
                             std::size_t threads = 1) {
  require(repetitions >= 1, "bench needs at least one repetition");
  std::vector<MethodConfig> configs;
  configs.push_back(MethodConfig{});
  MethodConfig j;
  j.method = Method::Jcf;
  j.jcf = jcf;
  configs.push_back(j);
  if (include_direct) {
    j.jcf_kernel = JcfKernelKind::Direct;
    configs.push_back(j);
  }

  BenchReport report;
  const ImageOptions opts{threads, 0.0};
  for (const auto &mc : configs) {
    BenchTiming t;
    t.label = mc.label();
    for (std::size_t r = 0; r < repetitions; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const auto image = beamform_image(data, grid, mc, opts);
      t.seconds.push_back(std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count());
    }
    t.median = median(t.seconds);
    report.timings.push_back(std::move(t));
  }
  report.jcf_over_das = report.timings[1].median / report.timings[0].median;
  if (include_direct) {
    report.direct_over_jcf =
        report.timings[2].median / report.timings[1].median;
  }
  return report;
}

inline void print_bench(std::ostream &os, const BenchReport &r) {
  os << "method,median_s,runs\n";
  for (const auto &t : r.timings) {
    os << t.label << ',' << std::setprecision(6) << t.median << ','
       << t.seconds.size() << '\n';
  }
  os << "ratio jcf/das," << r.jcf_over_das << '\n';
  if (r.direct_over_jcf > 0) {
    os << "ratio jcf_direct/jcf," << r.direct_over_jcf << '\n';
  }
}

} // namespace pwc
