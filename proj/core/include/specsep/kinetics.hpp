#pragma once

#include <span>
#include <vector>

#include "specsep/matrix.hpp"

namespace specsep {

inline constexpr double kColumnSumTol = 1e-9;
inline constexpr double kConservationTol = 1e-9;

/// First-order rate-constant matrix of a closed network: off-diagonal
/// entries >= 0, diagonal entries <= 0, zero column sums. Entry (i, j)
/// is the rate of conversion j -> i. Only obtainable through
/// validate_rate_matrix.
class RateMatrix {
 public:
  const Matrix& matrix() const noexcept { return k_; }
  std::size_t species() const noexcept { return k_.rows(); }

 private:
  explicit RateMatrix(Matrix k) : k_(std::move(k)) {}
  friend RateMatrix validate_rate_matrix(const Matrix& k);
  Matrix k_;
};

/// Checks the structural conditions and returns the typed matrix; the
/// ValidationError message names the offending entry or column (1-based).
RateMatrix validate_rate_matrix(const Matrix& k);

/// Rate matrix plus initial composition h0 (h0 >= 0, sum 1).
class ReactionNetwork {
 public:
  ReactionNetwork(RateMatrix rates, Vector h0);

  const RateMatrix& rates() const noexcept { return rates_; }
  std::span<const double> h0() const noexcept { return h0_; }
  std::size_t species() const noexcept { return h0_.size(); }

 private:
  RateMatrix rates_;
  Vector h0_;
};

/// Sampling times 0 = t_0 < ... < t_{n-1} = T, n >= 2.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> points);
  static TimeGrid uniform(double duration, std::size_t count);

  std::size_t size() const noexcept { return points_.size(); }
  double duration() const noexcept { return points_.back(); }
  double operator[](std::size_t j) const { return points_[j]; }
  std::span<const double> points() const noexcept { return points_; }

  /// Same grid with every time multiplied by factor > 0.
  TimeGrid scaled(double factor) const;

 private:
  std::vector<double> points_;
};

/// Relative concentrations H (species x times) sampled on `grid`.
struct KineticsMatrix {
  Matrix h;
  TimeGrid grid;
};

/// h(t) = e^{K t} h0. Tiny negative entries from rounding are clamped to
/// zero after checking conservation (|sum - 1| <= 1e-9) and
/// non-negativity (entries >= -1e-9).
Vector propagate(const ReactionNetwork& net, double t);

/// H(:, j) = propagate(net, t_j).
KineticsMatrix discretize_kinetics(const ReactionNetwork& net, const TimeGrid& grid);

/// e^{K t} h0 for an arbitrary square K, without structural checks or
/// clamping. Used to regenerate kinetics from fitted rate matrices.
Vector propagate_unchecked(const Matrix& k, std::span<const double> h0, double t);

}  // namespace specsep
