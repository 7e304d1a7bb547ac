#include <cstdlib>
#include <iostream>
#include <thread>

#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "commands.hpp"
#include "specsep/error.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("specsep");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  // SPECSEP_LOG takes spdlog level syntax, e.g. "info" or "debug".
  if (const char* env = std::getenv("SPECSEP_LOG")) spdlog::cfg::helpers::load_levels(env);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace specsep::cli;
  setup_logging();

  CLI::App app{"Species and kinetics recovery from time-resolved spectra"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize measurements from a scenario file");
  synth_cmd->add_option("config", synth.config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  synth_cmd->add_option("-o,--out", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--noise", synth.noise, "Override noise level delta");
  synth_cmd->add_option("--seed", synth.seed, "Override noise seed");
  synth_cmd->add_option("--pull", synth.pull, "Override interference pull in [0, 1]");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Recover spectra and kinetics from a measurement CSV");
  analyze_cmd->add_option("measurements", analyze.measurements, "Measurement CSV")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("-r,--species", analyze.species, "Number of species");
  analyze_cmd->add_flag("--auto-rank", analyze.auto_rank, "Estimate the number of species");
  analyze_cmd->add_option("--drop-ratio", analyze.drop_ratio, "Singular value cut for --auto-rank")->capture_default_str();
  analyze_cmd->add_option("--window", analyze.window, "Running-mean window (odd)")->capture_default_str();
  analyze_cmd->add_option("--threshold-mult", analyze.threshold_multiplier, "Row filter multiplier")->capture_default_str();
  analyze_cmd->add_option("--truth", analyze.truth_dir, "Synth output directory for scoring");
  analyze_cmd->add_option("-o,--out", analyze.out_dir, "Output directory")->required();

  FitRatesOptions fit;
  auto* fit_cmd = app.add_subcommand("fit-rates", "Fit a rate matrix to a kinetics CSV");
  fit_cmd->add_option("kinetics", fit.kinetics, "Kinetics CSV (species x times)")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--h0", fit.h0_path, "Initial composition: JSON array or file with an h0 field")
      ->check(CLI::ExistingFile);
  fit_cmd->add_flag("--h0-from-first-column", fit.h0_from_first_column, "Use the first column of H as h0");
  fit_cmd->add_option("--init", fit.initial_guess, "Warm start: JSON matrix or file with a K field")
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--max-iters", fit.max_iterations, "Iteration limit")->capture_default_str();
  fit_cmd->add_option("--tol", fit.tol, "Gradient infinity-norm tolerance")->capture_default_str();
  fit_cmd->add_option("-o,--out", fit.out, "Output K.json")->required();

  BenchmarkOptions bench;
  bench.jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* bench_cmd = app.add_subcommand("benchmark", "Sweep interference and noise levels");
  bench_cmd->add_option("config", bench.config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--pull-sweep", bench.pulls, "Pull values")->delimiter(',');
  bench_cmd->add_option("--delta-sweep", bench.deltas, "Noise levels")->delimiter(',');
  bench_cmd->add_option("--replicates", bench.replicates, "Seeds per cell")->capture_default_str();
  bench_cmd->add_option("-j,--jobs", bench.jobs, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--window", bench.window, "Override running-mean window");
  bench_cmd->add_option("--threshold-mult", bench.threshold_multiplier, "Override row filter multiplier");
  bench_cmd->add_option("--max-iters", bench.max_iterations, "Rate fit iteration limit")->capture_default_str();
  bench_cmd->add_option("--tol", bench.tol, "Rate fit gradient tolerance")->capture_default_str();
  bench_cmd->add_option("-o,--out", bench.out, "Results CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*synth_cmd) cmd_synth(synth);
    if (*analyze_cmd) {
      const auto report = cmd_analyze(analyze);
      std::cout << "species " << report["species"] << ", residual " << report["relative_residual"] << '\n';
    }
    if (*fit_cmd) {
      const auto r = cmd_fit_rates(fit);
      std::cout << "objective " << r.objective << ", " << r.iterations << " iterations, "
                << specsep::to_string(r.stop_reason) << '\n';
    }
    if (*bench_cmd) {
      const auto rows = cmd_benchmark(bench);
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.ok ? 0 : 1;
      std::cout << rows.size() << " cells, " << failed << " failed\n";
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
