#include "pwc/pwc.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

// Method parameters shared by beamform and compare; unset flags keep defaults.
struct MethodFlags {
  std::vector<std::string> names;
  std::optional<double> alpha;
  std::optional<std::size_t> gcf_m0;
  std::optional<double> pcf_gamma;
  std::optional<std::size_t> mv_L;
  std::optional<std::size_t> mv_K;
  std::optional<double> mv_delta;
  std::optional<std::size_t> dmas_L;
  bool direct{false};

  void add_to(CLI::App &app) {
    app.add_option("--method", names,
                   "das|cf|gcf|pcf|ucf|fdmas|minvar|jcf (repeatable, comma list ok)")
        ->delimiter(',');
    app.add_option("--alpha", alpha, "JCF smoothness exponent (>= 0)");
    app.add_option("--gcf-m0", gcf_m0, "GCF low-frequency half-width M0");
    app.add_option("--pcf-gamma", pcf_gamma, "PCF gamma");
    app.add_option("--mv-L", mv_L, "MinVar subarray length (0 = N/4)");
    app.add_option("--mv-K", mv_K, "MinVar axial half-window");
    app.add_option("--mv-delta", mv_delta, "MinVar diagonal loading");
    app.add_option("--dmas-L", dmas_L, "fDMAS maximum lag (0 = N-1)");
    app.add_flag("--direct", direct, "use the quadruple-sum JCF kernel");
  }

  void apply(pwc::MethodConfig &mc) const {
    if (alpha) mc.jcf.alpha = *alpha;
    if (gcf_m0) mc.baseline.gcf_cutoff = *gcf_m0;
    if (pcf_gamma) mc.baseline.pcf_gamma = *pcf_gamma;
    if (mv_L) mc.minvar.subarray_length = *mv_L;
    if (mv_K) mc.minvar.axial_half_window = *mv_K;
    if (mv_delta) mc.minvar.diagonal_loading = *mv_delta;
    if (dmas_L) mc.baseline.dmas_max_lag = *dmas_L;
    if (direct) mc.jcf_kernel = pwc::JcfKernelKind::Direct;
  }

  [[nodiscard]] std::vector<pwc::MethodConfig> resolve() const {
    std::vector<pwc::MethodConfig> out;
    for (const auto &n : names) {
      const auto m = pwc::parse_method(n);
      pwc::require(m.has_value(), "unknown method '" + n + "'");
      pwc::MethodConfig mc;
      mc.method = *m;
      apply(mc);
      out.push_back(mc);
    }
    return out;
  }
};

pwc::AnalyticDataset<double> load_analytic(const std::string &base) {
  const auto rf = pwc::read_dataset(base);
  return pwc::make_analytic<double>(rf);
}

int cmd_simulate(const std::string &phantom_path, const std::string &acq_path,
                 const std::string &out, std::optional<std::uint64_t> seed,
                 std::size_t threads) {
  const auto phantom =
      pwc::phantom_from_json(pwc::detail::load_json(phantom_path), seed);
  pwc::AcquisitionConfig acq;
  if (!acq_path.empty()) {
    acq = pwc::acquisition_from_json(pwc::detail::load_json(acq_path));
  }
  acq.sim.threads = threads;
  const auto rf = pwc::simulate_rf(phantom, acq.probe(), acq.sequence(),
                                   acq.pulse, acq.sim);
  const auto parent = std::filesystem::path(out).parent_path();
  if (!parent.empty()) {
    std::filesystem::create_directories(parent);
  }
  pwc::write_dataset(rf, out);
  std::cout << "wrote " << out << ".json/.bin: M=" << rf.num_transmits
            << " N=" << rf.num_elements << " T=" << rf.num_samples << ", "
            << phantom.scatterers.size() << " scatterers\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Plane-wave compounding beamformer with joint coherence factor "
               "weighting"};
  app.require_subcommand(1);

  std::string data;
  std::string out;
  std::string config_path;
  std::string grid_text;
  double gamma_ref = pwc::kReferenceGamma;
  std::size_t threads = 1;
  std::optional<std::uint64_t> seed;
  bool no_timing = false;
  MethodFlags flags;

  // simulate
  auto *sim = app.add_subcommand("simulate", "generate RF data from a phantom");
  std::string phantom_path;
  std::string acq_path;
  sim->add_option("--phantom", phantom_path, "phantom JSON")->required();
  sim->add_option("--acq", acq_path, "acquisition JSON (probe, angles, pulse)");
  sim->add_option("--out", out, "output dataset base path")->required();
  sim->add_option("--seed", seed, "override the phantom rng_seed");
  sim->add_option("--threads", threads, "worker threads (0 = all cores)");

  // beamform
  auto *bf = app.add_subcommand("beamform",
                                "beamform one or more methods without matching");
  bf->add_option("--data", data, "dataset base path")->required();
  bf->add_option("--grid", grid_text, "x0,x1,nx,z0,z1,nz in meters");
  bf->add_option("--gamma-ref", gamma_ref, "display gamma");
  bf->add_option("--threads", threads, "worker threads (0 = all cores)");
  bf->add_option("--out", out, "output directory")->required();
  flags.add_to(*bf);

  // compare
  auto *cmp = app.add_subcommand("compare",
                                 "contrast-matched comparison against DAS");
  cmp->add_option("--data", data, "dataset base path")->required();
  cmp->add_option("--config", config_path, "run config JSON");
  cmp->add_option("--grid", grid_text, "x0,x1,nx,z0,z1,nz in meters");
  cmp->add_option("--gamma-ref", gamma_ref, "DAS reference gamma");
  cmp->add_option("--threads", threads, "worker threads (0 = all cores)");
  cmp->add_option("--seed", seed, "accepted for reproducible scripted runs");
  cmp->add_option("--out", out, "output directory");
  cmp->add_flag("--no-timing", no_timing, "write elapsed_s as 0 in the CSV");
  flags.add_to(*cmp);

  // bench
  auto *bench = app.add_subcommand("bench", "time DAS against JCF kernels");
  std::size_t reps = 3;
  bool skip_direct = false;
  double alpha = 2.0;
  bench->add_option("--data", data, "dataset base path")->required();
  bench->add_option("--grid", grid_text, "x0,x1,nx,z0,z1,nz in meters");
  bench->add_option("--alpha", alpha, "JCF smoothness exponent");
  bench->add_option("--reps", reps, "repetitions per method (>= 3 advised)");
  bench->add_option("--threads", threads, "worker threads (0 = all cores)");
  bench->add_flag("--no-direct", skip_direct, "skip the quadruple-sum kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pwc::exit_code(pwc::ErrorCategory::InvalidArgument);
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(phantom_path, acq_path, out, seed, threads);
    }

    const auto dataset = load_analytic(data);
    pwc::GridSpec grid;
    if (!grid_text.empty()) {
      grid = pwc::GridSpec::parse(grid_text);
    }

    if (bf->parsed()) {
      auto methods = flags.resolve();
      if (methods.empty()) {
        methods.push_back({});
      }
      const auto g = grid.make(dataset.speed_of_sound);
      std::filesystem::create_directories(out);
      for (const auto &mc : methods) {
        const auto image = pwc::beamform_image(dataset, g, mc, {threads, 0.0});
        const auto display = pwc::gamma_compress(image, gamma_ref);
        const auto path = std::filesystem::path(out) / (mc.label() + ".pgm");
        pwc::export_pgm(display, path);
        std::cout << path.string() << "  K=" << display.contrast_K << '\n';
      }
      return 0;
    }

    if (cmp->parsed()) {
      pwc::RunConfig cfg;
      if (!config_path.empty()) {
        cfg = pwc::run_config_from_json(pwc::detail::load_json(config_path));
      }
      for (auto &mc : flags.resolve()) {
        cfg.methods.push_back(mc);
      }
      if (cfg.methods.empty()) {
        cfg.methods.push_back({});
      }
      if (!grid_text.empty()) {
        cfg.grid = grid;
      }
      if (cmp->count("--gamma-ref") > 0) {
        cfg.reference_gamma = gamma_ref;
      }
      if (cmp->count("--threads") > 0) {
        cfg.threads = threads;
      }
      if (!out.empty()) {
        cfg.output_dir = out;
      }
      cfg.include_timing = !no_timing;
      const auto result = pwc::run_compare(cfg, dataset, &std::cout);
      pwc::write_compare_outputs(result, cfg.output_dir, cfg.include_timing);
      std::cout << "reference K=" << result.reference_contrast << ", wrote "
                << result.outcomes.size() << " images to "
                << cfg.output_dir.string() << '\n';
      for (const auto &f : result.failures) {
        std::cerr << "skipped " << f.label << ": " << f.message << '\n';
      }
      return 0;
    }

    if (bench->parsed()) {
      const auto g = grid.make(dataset.speed_of_sound);
      pwc::JcfParams jp{alpha};
      jp.validate();
      const auto report =
          pwc::run_bench(dataset, g, jp, reps, !skip_direct, threads);
      pwc::print_bench(std::cout, report);
      return 0;
    }
  } catch (const pwc::Error &e) {
    std::cerr << "error [" << pwc::to_string(e.category()) << "]: " << e.what()
              << '\n';
    return pwc::exit_code(e.category());
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "error [io]: " << e.what() << '\n';
    return pwc::exit_code(pwc::ErrorCategory::Io);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
