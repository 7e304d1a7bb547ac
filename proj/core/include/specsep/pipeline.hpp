#pragma once

#include <cstddef>
#include <optional>

#include "specsep/datagen.hpp"
#include "specsep/preprocess.hpp"
#include "specsep/sepnmf.hpp"

namespace specsep {

struct AnalysisOptions {
  std::optional<std::size_t> species;  // estimate from singular values when absent
  double drop_ratio = kDefaultDropRatio;
  std::size_t window = kDefaultWindow;
  double threshold_multiplier = kDefaultThresholdMultiplier;
};

struct AnalysisResult {
  PreprocessReport preprocess;
  std::size_t species = 0;
  bool species_estimated = false;
  KineticsMatrix h;
  NonNegMatrix w;  // every original frequency row
  SelectedIndices selected;
  std::vector<double> characteristic_frequencies;
  Vector scaling;
  double relative_residual = 0.0;  // on the smoothed full matrix
  std::vector<std::string> warnings;
};

/// Filter and smooth, choose r, select characteristic rows, rescale the
/// kinetics and recover spectra for all frequencies of the smoothed input.
/// The row filter restricts only the selection step.
AnalysisResult analyze_measurements(const MeasurementSet& ms, const AnalysisOptions& options = {});

}  // namespace specsep
