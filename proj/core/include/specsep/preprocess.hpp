#pragma once

#include <cstddef>
#include <vector>

#include "specsep/matrix.hpp"

namespace specsep {

inline constexpr double kDefaultThresholdMultiplier = 3.0;
inline constexpr std::size_t kDefaultWindow = 5;

struct PreprocessReport {
  double noise_level_estimate = 0.0;
  double threshold = 0.0;
  std::vector<std::size_t> removed_row_indices;
  std::vector<std::size_t> kept_row_map;  // filtered index -> original index
  std::size_t window = 1;
};

/// Sample standard deviation (n - 1 denominator) of the row with the
/// smallest mean; the first such row on ties.
double estimate_noise_level(const Matrix& m);

struct FilterResult {
  NonNegMatrix m;
  PreprocessReport report;
};

/// Drops every row whose maximum is <= multiplier * estimate_noise_level(m).
/// Throws ValidationError if multiplier <= 0 or if no row survives.
FilterResult filter_rows(const NonNegMatrix& m, double multiplier = kDefaultThresholdMultiplier);

/// Centred running mean over `window` columns; windows are truncated at
/// both ends so the width n is preserved. window must be odd, >= 1 and <= n.
NonNegMatrix smooth_time(const NonNegMatrix& m, std::size_t window);

struct NormalizedRows {
  NonNegMatrix m;  // unit row sums
  Vector scale;    // original row sums
};

/// Divides each row by its sum. Throws ValidationError on a zero row.
NormalizedRows normalize_rows(const NonNegMatrix& m);

/// filter_rows followed by smooth_time; the report records both steps.
FilterResult preprocess(const NonNegMatrix& m, double multiplier, std::size_t window);

}  // namespace specsep
