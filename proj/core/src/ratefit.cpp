#include "specsep/ratefit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specsep/expm.hpp"
#include "specsep/sepnmf.hpp"

namespace specsep {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

void check_inputs(const KineticsMatrix& h, std::span<const double> h0, const Matrix& k) {
  if (h.h.cols() != h.grid.size()) throw DimensionError("rate fit: H columns do not match the time grid");
  if (h0.size() != h.h.rows()) throw DimensionError("rate fit: h0 length does not match H rows");
  if (k.rows() != h.h.rows() || k.cols() != h.h.rows()) {
    throw DimensionError("rate fit: K must be r x r");
  }
}

bool is_uniform(const TimeGrid& grid) {
  const double dt = grid.duration() / static_cast<double>(grid.size() - 1);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (std::abs(grid[j] - static_cast<double>(j) * dt) > 1e-12 * grid.duration()) return false;
  }
  return true;
}

// Residual H_j - e^{K t_j} h0 stacked column after column; nullopt when
// the exponential cannot be formed or is non-finite.
std::optional<Vector> residual(const KineticsMatrix& h, std::span<const double> h0, const Matrix& k) {
  const std::size_t r = h.h.rows();
  const std::size_t n = h.h.cols();
  Vector res(r * n);
  try {
    if (is_uniform(h.grid)) {
      // h(t_j) = (e^{K dt})^j h0 on an equispaced grid.
      const Matrix step = expm((h.grid.duration() / static_cast<double>(n - 1)) * Matrix(k));
      Vector p(h0.begin(), h0.end());
      for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) p = step * p;
        for (std::size_t s = 0; s < r; ++s) res[j * r + s] = h.h(s, j) - p[s];
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        const Vector p = expm(h.grid[j] * Matrix(k)) * h0;
        for (std::size_t s = 0; s < r; ++s) res[j * r + s] = h.h(s, j) - p[s];
      }
    }
  } catch (const NumericalError&) {
    return std::nullopt;
  }
  if (!all_finite(res)) return std::nullopt;
  return res;
}

double sum_squares(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Vector gradient_at(const KineticsMatrix& h, std::span<const double> h0, const Matrix& k,
                   const Vector& res0) {
  const double eps = std::sqrt(std::numeric_limits<double>::epsilon());
  Vector g(k.size(), 0.0);
  Matrix kp = k;
  for (std::size_t e = 0; e < k.size(); ++e) {
    const double orig = k.data()[e];
    const double step = eps * std::max(1.0, std::abs(orig));
    kp.data()[e] = orig + step;
    const double actual = kp.data()[e] - orig;
    auto res1 = residual(h, h0, kp);
    kp.data()[e] = orig;
    if (!res1) {
      g[e] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < res0.size(); ++i) s += ((*res1)[i] - res0[i]) / actual * res0[i];
    g[e] = 2.0 * s;
  }
  return g;
}

Matrix as_matrix(std::span<const double> x, std::size_t r) {
  Matrix k(r, r);
  std::copy(x.begin(), x.end(), k.data().begin());
  return k;
}

}  // namespace

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Gradient: return "gradient";
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::LineSearch: return "line_search";
  }
  return "unknown";
}

double rate_objective(const KineticsMatrix& h, std::span<const double> h0, const Matrix& k) {
  check_inputs(h, h0, k);
  auto res = residual(h, h0, k);
  return res ? sum_squares(*res) : std::numeric_limits<double>::infinity();
}

Vector rate_objective_gradient(const KineticsMatrix& h, std::span<const double> h0, const Matrix& k) {
  check_inputs(h, h0, k);
  auto res = residual(h, h0, k);
  if (!res) throw NumericalError("rate_objective_gradient: objective is not finite at K");
  return gradient_at(h, h0, k, *res);
}

RateFitResult fit_rates(const KineticsMatrix& h, std::span<const double> h0_in,
                        const RateFitOptions& options) {
  const std::size_t r = h.h.rows();
  const std::size_t n = h.h.cols();
  Vector h0 = h0_in.empty() ? h.h.column(0) : Vector(h0_in.begin(), h0_in.end());
  if (n < r) throw ValidationError("fit_rates: need at least as many time points as species");
  if (!(options.gradient_tol > 0.0)) throw ValidationError("fit_rates: gradient tolerance must be > 0");
  Matrix k0 = options.initial_guess.value_or(Matrix(r, r));
  check_inputs(h, h0, k0);
  if (!h0_in.empty()) {
    const double sum = std::accumulate(h0.begin(), h0.end(), 0.0);
    if (std::any_of(h0.begin(), h0.end(), [](double v) { return v < 0.0; }) ||
        std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError("fit_rates: h0 must be non-negative and sum to 1");
    }
  }

  const std::size_t dim = r * r;
  Vector x(k0.data().begin(), k0.data().end());
  auto res = residual(h, h0, k0);
  if (!res) throw RateFitError("fit_rates: objective is not finite at the initial guess", k0);
  double f = sum_squares(*res);
  Vector g = gradient_at(h, h0, k0, *res);

  const double f_initial = f;

  // Inverse Hessian approximation, row-major dim x dim.
  std::vector<double> hinv(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) hinv[i * dim + i] = 1.0;
  bool first_step = true;

  std::size_t iter = 0;
  StopReason reason = StopReason::MaxIterations;
  for (; iter < options.max_iterations; ++iter) {
    if (!all_finite(g)) {
      reason = StopReason::LineSearch;
      break;
    }
    if (inf_norm(g) <= options.gradient_tol) {
      reason = StopReason::Gradient;
      break;
    }
    Vector p(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) p[i] -= hinv[i * dim + j] * g[j];
    double slope = std::inner_product(g.begin(), g.end(), p.begin(), 0.0);
    if (!(slope < 0.0)) {
      // Lost descent: reset to steepest descent.
      std::fill(hinv.begin(), hinv.end(), 0.0);
      for (std::size_t i = 0; i < dim; ++i) hinv[i * dim + i] = 1.0;
      for (std::size_t i = 0; i < dim; ++i) p[i] = -g[i];
      slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
      first_step = true;
    }
    if (first_step) {
      // Keep the first trial step modest: K enters through exponentials.
      const double pn = inf_norm(p);
      if (pn > 1.0) {
        for (double& v : p) v /= pn;
        slope /= pn;
      }
    }

    double alpha = 1.0;
    bool accepted = false;
    bool saw_finite = false;
    Vector x_new(dim);
    std::optional<Vector> res_new;
    double f_new = 0.0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt, alpha *= 0.5) {
      for (std::size_t i = 0; i < dim; ++i) x_new[i] = x[i] + alpha * p[i];
      res_new = residual(h, h0, as_matrix(x_new, r));
      if (!res_new) continue;
      saw_finite = true;
      f_new = sum_squares(*res_new);
      if (f_new <= f + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (!saw_finite) {
        throw RateFitError("fit_rates: objective not finite along the search direction",
                           as_matrix(x, r));
      }
      reason = StopReason::LineSearch;
      break;
    }

    const Vector g_new = gradient_at(h, h0, as_matrix(x_new, r), *res_new);
    Vector s(dim), y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = x_new[i] - x[i];
      y[i] = g_new[i] - g[i];
    }
    x = x_new;
    f = f_new;
    g = g_new;

    const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
    if (sy > 1e-12 * norm2(s) * norm2(y) && all_finite(g)) {
      if (first_step) {
        const double yy = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
        std::fill(hinv.begin(), hinv.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) hinv[i * dim + i] = sy / yy;
        first_step = false;
      }
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / sy;
      Vector hy(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) hy[i] += hinv[i * dim + j] * y[j];
      const double yhy = std::inner_product(y.begin(), y.end(), hy.begin(), 0.0);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          hinv[i * dim + j] +=
              rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
        }
      }
    }
  }

  Matrix k_hat = as_matrix(x, r);
  KineticsMatrix fitted = regenerate_kinetics(k_hat, h0, h.grid);
  return RateFitResult{
      .k_hat = std::move(k_hat),
      .h0_used = std::move(h0),
      .objective = f,
      .initial_objective = f_initial,
      .gradient_norm = all_finite(g) ? inf_norm(g) : std::numeric_limits<double>::infinity(),
      .iterations = iter,
      .converged = reason == StopReason::Gradient,
      .stop_reason = reason,
      .fitted_kinetics = std::move(fitted),
  };
}

KineticsMatrix regenerate_kinetics(const Matrix& k_hat, std::span<const double> h0, const TimeGrid& grid) {
  if (k_hat.rows() != k_hat.cols() || k_hat.rows() != h0.size()) {
    throw DimensionError("regenerate_kinetics: K and h0 sizes disagree");
  }
  Matrix h(h0.size(), grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) h.set_column(j, propagate_unchecked(k_hat, h0, grid[j]));
  return {std::move(h), grid};
}

double kinetics_error(const Matrix& h_true, const Matrix& h_est) {
  if (h_true.rows() != h_est.rows() || h_true.cols() != h_est.cols()) {
    throw DimensionError("kinetics_error: shape mismatch");
  }
  return frobenius_norm(h_true - h_est) / frobenius_norm(h_true);
}

double spectra_error(const Matrix& w_true, const Matrix& w_est) {
  if (w_true.rows() != w_est.rows() || w_true.cols() != w_est.cols()) {
    throw DimensionError("spectra_error: shape mismatch");
  }
  return frobenius_norm(w_true - w_est) / frobenius_norm(w_true);
}

RecoveryScore score_recovery(const Matrix& w_true, const Matrix& h_true, const Matrix& w_est,
                             const Matrix& h_est) {
  RecoveryScore s;
  s.permutation = align_species(w_true, w_est);
  s.kinetics_error = kinetics_error(h_true, permute_rows(h_est, s.permutation));
  s.spectra_error = spectra_error(w_true, permute_columns(w_est, s.permutation));
  return s;
}

}  // namespace specsep
