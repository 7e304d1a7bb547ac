#include "specsep/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specsep/error.hpp"

namespace specsep {

double estimate_noise_level(const Matrix& m) {
  if (m.empty()) throw DimensionError("estimate_noise_level: empty matrix");
  if (m.cols() < 2) throw DimensionError("estimate_noise_level: need at least 2 columns");
  std::size_t best = 0;
  double best_mean = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
    if (i == 0 || mean < best_mean) {
      best = i;
      best_mean = mean;
    }
  }
  double ss = 0.0;
  for (double v : m.row(best)) ss += (v - best_mean) * (v - best_mean);
  return std::sqrt(ss / static_cast<double>(m.cols() - 1));
}

FilterResult filter_rows(const NonNegMatrix& m, double multiplier) {
  if (!(multiplier > 0.0) || !std::isfinite(multiplier)) {
    throw ValidationError("filter_rows: threshold multiplier must be > 0");
  }
  PreprocessReport report;
  report.noise_level_estimate = estimate_noise_level(m);
  report.threshold = multiplier * report.noise_level_estimate;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    if (*std::max_element(r.begin(), r.end()) > report.threshold) {
      report.kept_row_map.push_back(i);
    } else {
      report.removed_row_indices.push_back(i);
    }
  }
  if (report.kept_row_map.empty()) {
    throw ValidationError("filter_rows: no significant frequencies (threshold " +
                          std::to_string(report.threshold) + ")");
  }
  NonNegMatrix kept(m.get().select_rows(report.kept_row_map));
  return {std::move(kept), std::move(report)};
}

NonNegMatrix smooth_time(const NonNegMatrix& m, std::size_t window) {
  if (window == 0 || window % 2 == 0) {
    throw ValidationError("smooth_time: window must be odd and >= 1, got " + std::to_string(window));
  }
  if (window > m.cols()) throw ValidationError("smooth_time: window exceeds number of time points");
  if (window == 1) return m;
  const std::size_t half = (window - 1) / 2;
  const std::size_t n = m.cols();
  Matrix out(m.rows(), n);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto src = m.row(i);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t lo = j >= half ? j - half : 0;
      const std::size_t hi = std::min(n - 1, j + half);
      double s = 0.0;
      for (std::size_t k = lo; k <= hi; ++k) s += src[k];
      dst[j] = s / static_cast<double>(hi - lo + 1);
    }
  }
  return NonNegMatrix(std::move(out));
}

NormalizedRows normalize_rows(const NonNegMatrix& m) {
  Matrix out = m.get();
  Vector scale(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = out.row(i);
    const double s = std::accumulate(r.begin(), r.end(), 0.0);
    if (!(s > 0.0)) throw ValidationError("normalize_rows: row " + std::to_string(i) + " sums to zero");
    for (double& v : r) v /= s;
    scale[i] = s;
  }
  return {NonNegMatrix(std::move(out)), std::move(scale)};
}

FilterResult preprocess(const NonNegMatrix& m, double multiplier, std::size_t window) {
  FilterResult f = filter_rows(m, multiplier);
  f.m = smooth_time(f.m, window);
  f.report.window = window;
  return f;
}

}  // namespace specsep
