#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <numeric>
#include <thread>

#include <spdlog/spdlog.h>

#include "experiment.hpp"
#include "io.hpp"
#include "scenario.hpp"
#include "specsep/error.hpp"
#include "specsep/singular_values.hpp"

namespace specsep::cli {

using nlohmann::json;

namespace {

fs::path meta_path_for(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".meta.json");
  return p;
}

std::vector<std::string> estimated_labels(std::size_t r) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < r; ++s) out.push_back("S" + std::to_string(s + 1));
  return out;
}

void write_columns(const fs::path& path, const std::string& header, std::span<const double> x,
                   const std::vector<Vector>& cols) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "# " << header << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << format_double(x[i]);
    for (const auto& c : cols) out << ' ' << format_double(c[i]);
    out << '\n';
  }
}

Vector column_sums(const Matrix& m) {
  Vector s(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s[j] += m(i, j);
  return s;
}

Vector read_vector_field(const fs::path& path, const char* key) {
  const json j = read_json(path);
  try {
    if (j.is_object()) {
      if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
      return j.at(key).get<Vector>();
    }
    return j.get<Vector>();
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

Matrix read_matrix_field(const fs::path& path, const char* key) {
  const json j = read_json(path);
  try {
    return matrix_from_json(j.is_object() ? j.at(key) : j);
  } catch (const std::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace

void cmd_synth(const SynthOptions& o) {
  ScenarioConfig c = load_scenario(o.config);
  if (o.noise) c.noise.delta = *o.noise;
  if (o.seed) c.noise.seed = *o.seed;
  if (o.pull) c.interference.pull = *o.pull;
  c = scenario_from_json(scenario_to_json(c));  // revalidate overrides

  spdlog::info("synth: scenario '{}' pull {} delta {} seed {}", c.id, c.interference.pull, c.noise.delta,
               c.noise.seed);
  const Synthesized s = synthesize_scenario(c);
  const auto labels = species_labels(c);
  fs::create_directories(o.out_dir);
  write_measurements(o.out_dir / "M.csv", s.measurements);
  write_json(meta_path_for(o.out_dir / "M.csv"),
             {{"scenario_id", c.id},
              {"noise_delta", c.noise.delta},
              {"seed", c.noise.seed},
              {"pull", c.interference.pull},
              {"config_hash", config_hash(c)}});
  write_spectra(o.out_dir / "W_true.csv", s.w_true, s.measurements.frequencies, labels);
  write_kinetics(o.out_dir / "H_true.csv", s.h_true, labels);
  write_json(o.out_dir / "K_true.json", {{"K", matrix_to_json(c.rate_matrix)}, {"h0", c.h0}, {"labels", labels}});
  write_json(o.out_dir / "fingerprints.json", fingerprints_to_json(s.fingerprints));
  write_json(o.out_dir / "scenario.json", scenario_to_json(c));
}

json cmd_analyze(const AnalyzeOptions& o) {
  if (o.species && o.auto_rank) throw UsageError("analyze: give either --species or --auto-rank, not both");
  if (!o.species && !o.auto_rank) throw UsageError("analyze: one of --species or --auto-rank is required");
  if (o.species && *o.species == 0) throw UsageError("analyze: --species must be >= 1");

  const MeasurementSet ms = read_measurements(o.measurements);
  AnalysisOptions a;
  a.species = o.species;
  a.window = o.window;
  a.threshold_multiplier = o.threshold_multiplier;
  a.drop_ratio = o.drop_ratio;
  spdlog::info("analyze: {} frequencies x {} times", ms.m.rows(), ms.m.cols());
  const AnalysisResult res = analyze_measurements(ms, a);
  for (const auto& w : res.warnings) spdlog::warn("analyze: {}", w);

  const auto labels = estimated_labels(res.species);
  fs::create_directories(o.out_dir);
  write_spectra(o.out_dir / "W.csv", res.w.get(), ms.frequencies, labels);
  write_kinetics(o.out_dir / "H.csv", res.h, labels);

  for (std::size_t s = 0; s < res.species; ++s) {
    write_columns(o.out_dir / "plot" / ("spectrum_" + labels[s] + ".dat"), "frequency " + labels[s],
                  ms.frequencies.points(), {res.w.get().column(s)});
  }
  std::vector<Vector> traces;
  for (std::size_t s = 0; s < res.species; ++s) traces.emplace_back(res.h.h.row(s).begin(), res.h.h.row(s).end());
  std::string header = "time";
  for (const auto& l : labels) header += " " + l;
  write_columns(o.out_dir / "plot" / "kinetics.dat", header, ms.times.points(), traces);

  const FilterResult pre = preprocess(ms.m, a.threshold_multiplier, a.window);
  Vector sv = singular_values(pre.m.get());
  sv.resize(std::min<std::size_t>(sv.size(), kMaxSpeciesCount + 1));
  const Vector sums = column_sums(res.h.h);

  json provenance = {
      {"command", "analyze"},
      {"input", o.measurements.string()},
      {"input_fnv1a", hex64(fnv1a(read_file(o.measurements)))},
      {"flags",
       {{"species", o.species ? json(*o.species) : json(nullptr)},
        {"auto_rank", o.auto_rank},
        {"window", o.window},
        {"threshold_mult", o.threshold_multiplier},
        {"drop_ratio", o.drop_ratio}}},
  };
  const fs::path meta = meta_path_for(o.measurements);
  if (fs::exists(meta)) provenance["synth"] = read_json(meta);

  json report = {
      {"provenance", provenance},
      {"species", res.species},
      {"species_estimated", res.species_estimated},
      {"labels", labels},
      {"characteristic_frequencies", res.characteristic_frequencies},
      {"selected_rows", res.selected.original_indices},
      {"selection_residual_norms", res.selected.residual_norms},
      {"scaling", res.scaling},
      {"relative_residual", res.relative_residual},
      {"kinetics_column_sum_range",
       {*std::min_element(sums.begin(), sums.end()), *std::max_element(sums.begin(), sums.end())}},
      {"singular_values", sv},
      {"preprocess",
       {{"noise_level_estimate", res.preprocess.noise_level_estimate},
        {"threshold", res.preprocess.threshold},
        {"kept_rows", res.preprocess.kept_row_map.size()},
        {"removed_row_indices", res.preprocess.removed_row_indices},
        {"window", res.preprocess.window}}},
      {"warnings", res.warnings},
  };

  if (o.truth_dir) {
    const Table w_true = read_table(*o.truth_dir / "W_true.csv");
    const KineticsMatrix h_true = read_kinetics(*o.truth_dir / "H_true.csv");
    if (w_true.values.cols() != res.species) {
      report["score"] = {{"error", "species count differs from the ground truth"}};
    } else {
      const RecoveryScore sc = score_recovery(w_true.values, h_true.h, res.w.get(), res.h.h);
      report["score"] = {{"permutation", sc.permutation},
                         {"true_labels", w_true.column_labels},
                         {"kinetics_error", sc.kinetics_error},
                         {"spectra_error", sc.spectra_error}};
    }
  }
  write_json(o.out_dir / "report.json", report);
  return report;
}

RateFitResult cmd_fit_rates(const FitRatesOptions& o) {
  if (o.h0_path && o.h0_from_first_column) {
    throw UsageError("fit-rates: give either --h0 or --h0-from-first-column, not both");
  }
  if (o.max_iterations == 0) throw UsageError("fit-rates: --max-iters must be >= 1");
  if (!(o.tol > 0.0)) throw UsageError("fit-rates: --tol must be > 0");
  const KineticsMatrix h = read_kinetics(o.kinetics);
  Vector h0;
  if (o.h0_path) {
    h0 = read_vector_field(*o.h0_path, "h0");
  } else if (!o.h0_from_first_column) {
    spdlog::info("fit-rates: no --h0 given, using the first column of H");
  }
  RateFitOptions fo;
  fo.max_iterations = o.max_iterations;
  fo.gradient_tol = o.tol;
  if (o.initial_guess) fo.initial_guess = read_matrix_field(*o.initial_guess, "K");

  const RateFitResult fit = fit_rates(h, h0, fo);
  spdlog::info("fit-rates: objective {} after {} iterations ({})", fit.objective, fit.iterations,
               to_string(fit.stop_reason));

  fs::path fitted = o.out;
  fitted.replace_filename(o.out.stem().string() + "_kinetics.csv");
  std::vector<std::string> labels;
  const Table in = read_table(o.kinetics);
  labels = in.row_labels;
  write_kinetics(fitted, fit.fitted_kinetics, labels);

  write_json(o.out, {
                        {"K", matrix_to_json(fit.k_hat)},
                        {"h0", fit.h0_used},
                        {"labels", labels},
                        {"objective", fit.objective},
                        {"initial_objective", fit.initial_objective},
                        {"gradient_norm", fit.gradient_norm},
                        {"iterations", fit.iterations},
                        {"converged", fit.converged},
                        {"stop_reason", to_string(fit.stop_reason)},
                        {"column_sums", column_sums(fit.k_hat)},
                        {"fitted_kinetics", fitted.filename().string()},
                        {"provenance",
                         {{"command", "fit-rates"},
                          {"input", o.kinetics.string()},
                          {"input_fnv1a", hex64(fnv1a(read_file(o.kinetics)))},
                          {"flags",
                           {{"h0", o.h0_path ? json(o.h0_path->string()) : json(nullptr)},
                            {"h0_from_first_column", o.h0_from_first_column},
                            {"initial_guess", o.initial_guess ? json(o.initial_guess->string()) : json(nullptr)},
                            {"max_iters", o.max_iterations},
                            {"tol", o.tol}}}}},
                    });
  return fit;
}

std::uint64_t replicate_seed(std::uint64_t base, std::size_t k) { return base + k; }

std::vector<BenchmarkRow> cmd_benchmark(const BenchmarkOptions& o) {
  if (o.pulls.empty() || o.deltas.empty()) throw UsageError("benchmark: sweeps must not be empty");
  if (o.replicates == 0) throw UsageError("benchmark: --replicates must be >= 1");
  for (double p : o.pulls) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("benchmark: pull values must lie in [0, 1]");
  }
  for (double d : o.deltas) {
    if (!(d >= 0.0)) throw UsageError("benchmark: delta values must be >= 0");
  }
  const ScenarioConfig base = load_scenario(o.config);

  std::vector<BenchmarkRow> rows;
  for (double p : o.pulls)
    for (double d : o.deltas)
      for (std::size_t k = 0; k < o.replicates; ++k) {
        BenchmarkRow r;
        r.pull = p;
        r.delta = d;
        r.replicate = k;
        r.seed = replicate_seed(base.noise.seed, k);
        rows.push_back(r);
      }

  EvaluationOptions eo;
  eo.window = o.window;
  eo.threshold_multiplier = o.threshold_multiplier;
  eo.fit.max_iterations = o.max_iterations;
  eo.fit.gradient_tol = o.tol;

  auto run_cell = [&](BenchmarkRow& row) {
    const auto start = std::chrono::steady_clock::now();
    try {
      ScenarioConfig c = base;
      c.interference.pull = row.pull;
      c.noise.delta = row.delta;
      c.noise.seed = row.seed;
      const Evaluation ev = evaluate_scenario(c, eo);
      row.kinetics_error = ev.score.kinetics_error;
      row.spectra_error = ev.score.spectra_error;
      row.max_k_error = ev.max_k_error;
      row.relative_residual = ev.analysis.relative_residual;
      row.regenerated_distance = ev.regenerated_distance;
      row.auto_rank = ev.auto_rank;
      row.fit_converged = ev.fit && ev.fit->converged;
      row.ok = true;
    } catch (const std::exception& e) {
      row.message = e.what();
      spdlog::warn("benchmark: cell pull={} delta={} replicate={} failed: {}", row.pull, row.delta, row.replicate,
                   e.what());
    }
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) run_cell(rows[i]);
  };
  const std::size_t jobs = std::clamp<std::size_t>(o.jobs, 1, rows.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!o.out.empty()) {
    if (o.out.has_parent_path()) fs::create_directories(o.out.parent_path());
    std::ofstream out(o.out);
    if (!out) throw Error("cannot write " + o.out.string());
    out << "pull,delta,replicate,seed,status,kinetics_error,spectra_error,max_k_error,relative_residual,"
           "regenerated_distance,auto_rank,fit_converged,runtime_s,message\n";
    for (const auto& r : rows) {
      std::string msg = r.message;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << format_shortest(r.pull) << ',' << format_shortest(r.delta) << ',' << r.replicate << ',' << r.seed << ','
          << (r.ok ? "ok" : "error") << ',' << format_double(r.kinetics_error) << ','
          << format_double(r.spectra_error) << ',' << format_double(r.max_k_error) << ','
          << format_double(r.relative_residual) << ',' << format_double(r.regenerated_distance) << ','
          << r.auto_rank << ',' << (r.fit_converged ? 1 : 0) << ',' << format_double(r.runtime_s) << ',' << msg
          << '\n';
    }
  }
  return rows;
}

}  // namespace specsep::cli
