#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "specsep/pipeline.hpp"
#include "specsep/ratefit.hpp"

namespace specsep::cli {

namespace fs = std::filesystem;

/// Raised for invalid flag combinations; main maps it to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct SynthOptions {
  fs::path config;
  fs::path out_dir;
  std::optional<double> noise;
  std::optional<std::uint64_t> seed;
  std::optional<double> pull;
};

/// Writes M.csv, M.meta.json, W_true.csv, H_true.csv, K_true.json,
/// fingerprints.json and the resolved scenario.json into out_dir.
void cmd_synth(const SynthOptions& o);

struct AnalyzeOptions {
  fs::path measurements;
  std::optional<std::size_t> species;
  bool auto_rank = false;
  std::size_t window = kDefaultWindow;
  double threshold_multiplier = kDefaultThresholdMultiplier;
  double drop_ratio = kDefaultDropRatio;
  fs::path out_dir;
  std::optional<fs::path> truth_dir;  // synth output; adds aligned errors to the report
};

/// Writes W.csv, H.csv, report.json and plot/*.dat into out_dir.
nlohmann::json cmd_analyze(const AnalyzeOptions& o);

struct FitRatesOptions {
  fs::path kinetics;
  std::optional<fs::path> h0_path;  // JSON array, or an object with an "h0" field
  bool h0_from_first_column = false;
  std::optional<fs::path> initial_guess;  // JSON matrix, or an object with a "K" field
  std::size_t max_iterations = 2000;
  double tol = 1e-7;
  fs::path out;
};

/// Writes the K.json report and the regenerated kinetics next to it.
RateFitResult cmd_fit_rates(const FitRatesOptions& o);

struct BenchmarkOptions {
  fs::path config;
  std::vector<double> pulls{0.0};
  std::vector<double> deltas{0.0};
  std::size_t replicates = 1;
  std::size_t jobs = 1;
  std::optional<std::size_t> window;
  std::optional<double> threshold_multiplier;
  std::size_t max_iterations = 2000;
  double tol = 1e-7;
  fs::path out;
};

struct BenchmarkRow {
  double pull = 0.0;
  double delta = 0.0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  double kinetics_error = 0.0;
  double spectra_error = 0.0;
  double max_k_error = 0.0;
  double relative_residual = 0.0;
  double regenerated_distance = 0.0;
  std::size_t auto_rank = 0;
  bool fit_converged = false;
  double runtime_s = 0.0;
  std::string message;
};

/// Seed of replicate k: the scenario seed plus k.
std::uint64_t replicate_seed(std::uint64_t base, std::size_t k);

/// One row per (pull, delta, replicate) cell in that nesting order; cell
/// failures are recorded in the row. Writes the CSV when o.out is set.
std::vector<BenchmarkRow> cmd_benchmark(const BenchmarkOptions& o);

}  // namespace specsep::cli
