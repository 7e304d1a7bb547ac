#include "specsep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specsep/error.hpp"

namespace specsep {

FrequencyGrid::FrequencyGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw ValidationError("FrequencyGrid: need at least 2 points");
  if (!all_finite(points_)) throw ValidationError("FrequencyGrid: non-finite frequency");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1])) {
      throw ValidationError("FrequencyGrid: frequencies must be strictly increasing (index " +
                            std::to_string(i) + ")");
    }
  }
}

FrequencyGrid FrequencyGrid::uniform(double lower, double upper, std::size_t count) {
  if (count < 2) throw ValidationError("FrequencyGrid: need at least 2 points");
  if (!(upper > lower)) throw ValidationError("FrequencyGrid: upper bound must exceed lower bound");
  std::vector<double> pts(count);
  const double step = (upper - lower) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = lower + step * static_cast<double>(i);
  pts.back() = upper;
  return FrequencyGrid(std::move(pts));
}

std::size_t FrequencyGrid::nearest_index(double x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it == points_.begin()) return 0;
  if (it == points_.end()) return points_.size() - 1;
  const auto hi = static_cast<std::size_t>(it - points_.begin());
  return (x - points_[hi - 1] <= points_[hi] - x) ? hi - 1 : hi;
}

void validate_peak(const Peak& p, double lower, double upper) {
  if (!(p.width > 0.0) || !std::isfinite(p.width)) {
    throw ValidationError("peak width must be positive, got " + std::to_string(p.width));
  }
  if (!(p.intensity > 0.0) || !std::isfinite(p.intensity)) {
    throw ValidationError("peak intensity must be positive, got " + std::to_string(p.intensity));
  }
  if (!(p.base >= lower && p.base <= upper)) {
    throw ValidationError("peak base " + std::to_string(p.base) + " outside [" +
                          std::to_string(lower) + ", " + std::to_string(upper) + "]");
  }
}

void validate_fingerprint(const Fingerprint& w, double lower, double upper) {
  if (w.peaks.empty()) throw ValidationError("fingerprint '" + w.label + "' has no peaks");
  for (const Peak& p : w.peaks) {
    try {
      validate_peak(p, lower, upper);
    } catch (const ValidationError& e) {
      throw ValidationError("fingerprint '" + w.label + "': " + e.what());
    }
  }
}

double peak_eval(const Peak& p, double x) {
  const double d = x - p.base;
  switch (p.shape) {
    case PeakShape::Lorentzian: {
      const double g2 = p.width * p.width;
      return p.intensity * (g2 / (d * d + g2));
    }
    case PeakShape::Gaussian:
      return p.intensity * std::exp(-std::numbers::ln2 * d * d / (p.width * p.width));
  }
  return 0.0;
}

Vector fingerprint_eval(const Fingerprint& w, const FrequencyGrid& grid) {
  Vector out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for (const Peak& p : w.peaks) s += peak_eval(p, grid[i]);
    out[i] = s;
  }
  return out;
}

Matrix assemble_spectra(std::span<const Fingerprint> fingerprints, const FrequencyGrid& grid) {
  if (fingerprints.empty()) throw ValidationError("assemble_spectra: no fingerprints");
  Matrix w(grid.size(), fingerprints.size());
  for (std::size_t s = 0; s < fingerprints.size(); ++s) {
    w.set_column(s, fingerprint_eval(fingerprints[s], grid));
  }
  return w;
}

}  // namespace specsep
