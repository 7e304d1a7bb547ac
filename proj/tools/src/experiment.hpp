#pragma once

#include <optional>
#include <string>

#include "scenario.hpp"
#include "specsep/pipeline.hpp"
#include "specsep/ratefit.hpp"

namespace specsep::cli {

struct EvaluationOptions {
  std::optional<std::size_t> window;           // scenario default when absent
  std::optional<double> threshold_multiplier;  // scenario default when absent
  std::optional<double> drop_ratio;
  bool auto_rank = false;  // otherwise r = number of true species
  RateFitOptions fit;
  bool fit_rates = true;
};

/// Everything needed to score one synthetic run against its ground truth.
struct Evaluation {
  Synthesized truth;
  AnalysisResult analysis;
  std::size_t auto_rank = 0;   // estimate_species_count on the preprocessed data
  RecoveryScore score;         // valid when analysis.species equals the true count
  std::optional<RateFitResult> fit;
  Matrix k_aligned;            // fitted K in true species order
  double max_k_error = 0.0;
  double regenerated_distance = 0.0;  // ||H_fit - H_rec||_F / ||H_rec||_F
};

/// Analysis settings the scenario prescribes for its noise level.
AnalysisOptions analysis_options_for(const ScenarioConfig& c, const EvaluationOptions& o);

Evaluation evaluate_scenario(const ScenarioConfig& c, const EvaluationOptions& o = {});

}  // namespace specsep::cli
