#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "specsep/error.hpp"
#include "specsep/kinetics.hpp"
#include "specsep/matrix.hpp"

namespace specsep {

struct RateFitOptions {
  std::size_t max_iterations = 2000;
  double gradient_tol = 1e-7;         // on ||grad||_inf
  std::optional<Matrix> initial_guess;  // zero matrix when absent
};

enum class StopReason { Gradient, MaxIterations, LineSearch };

std::string to_string(StopReason reason);

struct RateFitResult {
  Matrix k_hat;
  Vector h0_used;
  double objective = 0.0;
  double initial_objective = 0.0;
  double gradient_norm = 0.0;  // infinity norm at k_hat
  std::size_t iterations = 0;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxIterations;
  KineticsMatrix fitted_kinetics;
};

/// Raised when every line-search trial from an iterate gives a
/// non-finite objective; carries that iterate.
class RateFitError : public NumericalError {
 public:
  RateFitError(const std::string& what, Matrix last_iterate)
      : NumericalError(what), last_iterate_(std::move(last_iterate)) {}
  const Matrix& last_iterate() const noexcept { return last_iterate_; }

 private:
  Matrix last_iterate_;
};

/// sum_j ||H_j - e^{K t_j} h0||^2. Infinity when e^{K t_j} cannot be formed.
double rate_objective(const KineticsMatrix& h, std::span<const double> h0, const Matrix& k);

/// Gradient of rate_objective, 2 J^T res, with the residual Jacobian J
/// taken by forward differences (step sqrt(eps) * max(1, |k_ij|)).
/// Entry order matches the row-major layout of k.
Vector rate_objective_gradient(const KineticsMatrix& h, std::span<const double> h0, const Matrix& k);

/// BFGS on the r^2 entries of K with Armijo backtracking. Conservation
/// is not imposed. An empty h0 means "use the first column of H".
RateFitResult fit_rates(const KineticsMatrix& h, std::span<const double> h0,
                        const RateFitOptions& options = {});

/// Columns e^{K t_j} h0 on grid, without structural checks on K.
KineticsMatrix regenerate_kinetics(const Matrix& k_hat, std::span<const double> h0, const TimeGrid& grid);

/// ||H_true - H_est||_F / ||H_true||_F.
double kinetics_error(const Matrix& h_true, const Matrix& h_est);
/// ||W_true - W_est||_F / ||W_true||_F.
double spectra_error(const Matrix& w_true, const Matrix& w_est);

struct RecoveryScore {
  std::vector<std::size_t> permutation;  // estimated species for each true species
  double kinetics_error = 0.0;
  double spectra_error = 0.0;
};

/// Aligns the estimate to the truth via align_species on W, then scores.
RecoveryScore score_recovery(const Matrix& w_true, const Matrix& h_true, const Matrix& w_est,
                             const Matrix& h_est);

}  // namespace specsep
