#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "specsep/datagen.hpp"
#include "specsep/kinetics.hpp"
#include "specsep/spectral.hpp"

namespace specsep::cli {

/// Preprocessing settings stored with a scenario; `noisy` applies to
/// runs with noise delta > 0.
struct AnalysisDefaults {
  std::size_t window = 1;
  double threshold_multiplier = 3.0;
  std::size_t noisy_window = 5;
  double noisy_threshold_multiplier = 3.0;
  double drop_ratio = 0.01;
};

struct ScenarioConfig {
  std::string id;
  std::vector<Fingerprint> fingerprints;
  Matrix rate_matrix;
  Vector h0;
  double f_lower = 400.0;
  double f_upper = 1800.0;
  std::size_t f_count = 700;
  double duration = 20.0;
  std::size_t t_count = 100;
  NoiseSpec noise;
  InterferenceSpec interference;
  AnalysisDefaults analysis;
};

/// Parses and validates every field; ValidationError names the field.
ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioConfig& c);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// FNV-1a of the compact JSON dump.
std::string config_hash(const ScenarioConfig& c);

nlohmann::json fingerprints_to_json(const std::vector<Fingerprint>& fps);

struct Synthesized {
  MeasurementSet measurements;
  std::vector<Fingerprint> fingerprints;  // after interference
  Matrix w_true;
  KineticsMatrix h_true;
  ReactionNetwork network;
};

/// Interference, noiseless synthesis, then noise, as described by c.
Synthesized synthesize_scenario(const ScenarioConfig& c);

std::vector<std::string> species_labels(const ScenarioConfig& c);

}  // namespace specsep::cli
