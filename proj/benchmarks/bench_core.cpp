#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>

#include "scenario.hpp"
#include "specsep/expm.hpp"
#include "specsep/nnls.hpp"
#include "specsep/pipeline.hpp"
#include "specsep/preprocess.hpp"
#include "specsep/ratefit.hpp"
#include "specsep/sepnmf.hpp"
#include "specsep/singular_values.hpp"

using namespace specsep;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = u(gen);
  return m;
}

const cli::Synthesized& scenario(const char* name) {
  static std::map<std::string, cli::Synthesized> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    const auto c = cli::load_scenario(std::string(SPECSEP_SCENARIO_DIR) + "/" + name + ".json");
    it = cache.emplace(name, cli::synthesize_scenario(c)).first;
  }
  return it->second;
}

void BM_Nnls(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(100, q, 1);
  const Matrix b = random_matrix(1, 100, 2);
  for (auto _ : state) benchmark::DoNotOptimize(nnls_solve(a, b.row(0)));
}
BENCHMARK(BM_Nnls)->Arg(2)->Arg(5)->Arg(10);

void BM_Expm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix k = random_matrix(n, n, 3);
  k *= 4.0 / norm1(k);
  for (auto _ : state) benchmark::DoNotOptimize(expm(k));
}
BENCHMARK(BM_Expm)->Arg(5)->Arg(10);

void BM_SingularValues(benchmark::State& state) {
  const Matrix& m = scenario("canonical").measurements.m.get();
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(m, 11));
}
BENCHMARK(BM_SingularValues)->Unit(benchmark::kMillisecond);

void BM_SnpaSelect(benchmark::State& state) {
  const NormalizedRows n = normalize_rows(scenario("canonical").measurements.m);
  for (auto _ : state) benchmark::DoNotOptimize(snpa_select(n.m, 5));
}
BENCHMARK(BM_SnpaSelect)->Unit(benchmark::kMillisecond);

void BM_AnalyzeCanonical(benchmark::State& state) {
  const MeasurementSet& ms = scenario("canonical").measurements;
  AnalysisOptions o;
  o.species = 5;
  o.window = 1;
  for (auto _ : state) benchmark::DoNotOptimize(analyze_measurements(ms, o));
}
BENCHMARK(BM_AnalyzeCanonical)->Unit(benchmark::kMillisecond);

void BM_AnalyzeNoisy(benchmark::State& state) {
  const MeasurementSet& ms = scenario("noisy").measurements;
  AnalysisOptions o;
  o.species = 5;
  o.window = 5;
  o.threshold_multiplier = 30;
  for (auto _ : state) benchmark::DoNotOptimize(analyze_measurements(ms, o));
}
BENCHMARK(BM_AnalyzeNoisy)->Unit(benchmark::kMillisecond);

void BM_FitRatesCanonical(benchmark::State& state) {
  const cli::Synthesized& s = scenario("canonical");
  for (auto _ : state) benchmark::DoNotOptimize(fit_rates(s.h_true, s.network.h0()));
}
BENCHMARK(BM_FitRatesCanonical)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
