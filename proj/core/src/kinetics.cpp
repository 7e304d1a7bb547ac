#include "specsep/kinetics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "specsep/error.hpp"
#include "specsep/expm.hpp"

namespace specsep {

namespace {

std::string entry(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

RateMatrix validate_rate_matrix(const Matrix& k) {
  const std::size_t r = k.rows();
  if (r == 0 || k.cols() != r) throw ValidationError("rate matrix must be square");
  if (!all_finite(k)) throw ValidationError("rate matrix has non-finite entries");
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (i != j && k(i, j) < 0.0) {
        throw ValidationError("negative off-diagonal " + entry(i, j) + " = " + std::to_string(k(i, j)));
      }
      if (i == j && k(i, j) > 0.0) {
        throw ValidationError("positive diagonal " + entry(i, j) + " = " + std::to_string(k(i, j)));
      }
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < r; ++i) s += k(i, j);
    if (std::abs(s) > kColumnSumTol) {
      throw ValidationError("column " + std::to_string(j + 1) + " sums to " + std::to_string(s) +
                            ", expected 0");
    }
  }
  return RateMatrix(k);
}

ReactionNetwork::ReactionNetwork(RateMatrix rates, Vector h0) : rates_(std::move(rates)), h0_(std::move(h0)) {
  if (h0_.size() != rates_.species()) {
    throw ValidationError("h0 has " + std::to_string(h0_.size()) + " entries for " +
                          std::to_string(rates_.species()) + " species");
  }
  double sum = 0.0;
  for (std::size_t s = 0; s < h0_.size(); ++s) {
    if (!(h0_[s] >= 0.0) || !std::isfinite(h0_[s])) {
      throw ValidationError("h0[" + std::to_string(s + 1) + "] must be non-negative");
    }
    sum += h0_[s];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("h0 entries sum to " + std::to_string(sum) + ", expected 1");
  }
}

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw ValidationError("TimeGrid: need at least 2 time points");
  if (!all_finite(points_)) throw ValidationError("TimeGrid: non-finite time");
  if (points_.front() != 0.0) throw ValidationError("TimeGrid: first time point must be 0");
  for (std::size_t j = 1; j < points_.size(); ++j) {
    if (!(points_[j] > points_[j - 1])) {
      throw ValidationError("TimeGrid: times must be strictly increasing (index " + std::to_string(j) + ")");
    }
  }
}

TimeGrid TimeGrid::uniform(double duration, std::size_t count) {
  if (count < 2) throw ValidationError("TimeGrid: need at least 2 time points");
  if (!(duration > 0.0)) throw ValidationError("TimeGrid: duration must be positive");
  std::vector<double> pts(count);
  for (std::size_t j = 0; j < count; ++j) {
    pts[j] = duration * static_cast<double>(j) / static_cast<double>(count - 1);
  }
  pts.back() = duration;
  return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::scaled(double factor) const {
  if (!(factor > 0.0)) throw ValidationError("TimeGrid::scaled: factor must be positive");
  std::vector<double> pts(points_);
  for (double& t : pts) t *= factor;
  return TimeGrid(std::move(pts));
}

Vector propagate_unchecked(const Matrix& k, std::span<const double> h0, double t) {
  if (k.rows() != h0.size()) throw DimensionError("propagate: h0 length does not match K");
  return expm(t * Matrix(k)) * h0;
}

Vector propagate(const ReactionNetwork& net, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("propagate: t must be >= 0");
  if (t == 0.0) return Vector(net.h0().begin(), net.h0().end());
  Vector h = propagate_unchecked(net.rates().matrix(), net.h0(), t);
  const double sum = std::accumulate(h.begin(), h.end(), 0.0);
  if (std::abs(sum - 1.0) > kConservationTol) {
    throw NumericalError("propagate: concentrations sum to " + std::to_string(sum) + " at t = " +
                         std::to_string(t));
  }
  for (double& v : h) {
    if (v < -kConservationTol) {
      throw NumericalError("propagate: negative concentration " + std::to_string(v));
    }
    if (v < 0.0) v = 0.0;
  }
  return h;
}

KineticsMatrix discretize_kinetics(const ReactionNetwork& net, const TimeGrid& grid) {
  Matrix h(net.species(), grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) h.set_column(j, propagate(net, grid[j]));
  return {std::move(h), grid};
}

}  // namespace specsep
