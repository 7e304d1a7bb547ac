#pragma once

#include <span>
#include <string>
#include <vector>

#include "specsep/matrix.hpp"

namespace specsep {

enum class PeakShape { Lorentzian, Gaussian };

/// One vibrational band. `width` is the half-width at half-maximum for
/// both shapes, so equal parameters give equal maxima and equal
/// half-height crossings.
struct Peak {
  PeakShape shape = PeakShape::Lorentzian;
  double base = 0.0;       // x0, band position
  double width = 1.0;      // gamma > 0
  double intensity = 1.0;  // I > 0, the maximum value

  friend bool operator==(const Peak&, const Peak&) = default;
};

/// Component spectrum of one species: a non-negative sum of peaks.
struct Fingerprint {
  std::string label;
  std::vector<Peak> peaks;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Strictly increasing sampling frequencies x_1 < ... < x_m, m >= 2.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::vector<double> points);
  static FrequencyGrid uniform(double lower, double upper, std::size_t count);

  double lower() const { return points_.front(); }
  double upper() const { return points_.back(); }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  std::span<const double> points() const { return points_; }

  /// Index of the grid point closest to x (ties towards the lower index).
  std::size_t nearest_index(double x) const;

 private:
  std::vector<double> points_;
};

/// Throws ValidationError if width or intensity is not positive and
/// finite, or if the base lies outside [lower, upper].
void validate_peak(const Peak& p, double lower, double upper);
void validate_fingerprint(const Fingerprint& w, double lower, double upper);

double peak_eval(const Peak& p, double x);

/// Sum of the fingerprint's peaks at every grid point.
Vector fingerprint_eval(const Fingerprint& w, const FrequencyGrid& grid);

/// Spectra matrix W (m x r): column s is fingerprint_eval of fingerprint s.
Matrix assemble_spectra(std::span<const Fingerprint> fingerprints, const FrequencyGrid& grid);

}  // namespace specsep
