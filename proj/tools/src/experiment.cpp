#include "experiment.hpp"

#include "specsep/sepnmf.hpp"

namespace specsep::cli {

AnalysisOptions analysis_options_for(const ScenarioConfig& c, const EvaluationOptions& o) {
  const bool noisy = c.noise.delta > 0.0;
  AnalysisOptions a;
  a.window = o.window.value_or(noisy ? c.analysis.noisy_window : c.analysis.window);
  a.threshold_multiplier = o.threshold_multiplier.value_or(
      noisy ? c.analysis.noisy_threshold_multiplier : c.analysis.threshold_multiplier);
  a.drop_ratio = o.drop_ratio.value_or(c.analysis.drop_ratio);
  if (!o.auto_rank) a.species = c.fingerprints.size();
  return a;
}

Evaluation evaluate_scenario(const ScenarioConfig& c, const EvaluationOptions& o) {
  Synthesized truth = synthesize_scenario(c);
  const AnalysisOptions a = analysis_options_for(c, o);
  AnalysisResult analysis = analyze_measurements(truth.measurements, a);
  const FilterResult pre = preprocess(truth.measurements.m, a.threshold_multiplier, a.window);
  const std::size_t auto_rank = estimate_species_count(pre.m, a.drop_ratio);

  Evaluation ev{std::move(truth), std::move(analysis), auto_rank, {}, std::nullopt, {}, 0.0, 0.0};
  if (ev.analysis.species != c.fingerprints.size()) return ev;

  ev.score = score_recovery(ev.truth.w_true, ev.truth.h_true.h, ev.analysis.w.get(), ev.analysis.h.h);
  if (!o.fit_rates) return ev;

  // Known initial composition, expressed in the estimated species order.
  const auto& perm = ev.score.permutation;
  Vector h0(c.h0.size(), 0.0);
  for (std::size_t s = 0; s < perm.size(); ++s) h0[perm[s]] = c.h0[s];
  ev.fit = fit_rates(ev.analysis.h, h0, o.fit);
  ev.k_aligned = permute_rows(permute_columns(ev.fit->k_hat, perm), perm);
  ev.max_k_error = max_abs_diff(ev.k_aligned, c.rate_matrix);
  ev.regenerated_distance = kinetics_error(ev.analysis.h.h, ev.fit->fitted_kinetics.h);
  return ev;
}

}  // namespace specsep::cli
