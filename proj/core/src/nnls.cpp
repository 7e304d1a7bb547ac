#include "specsep/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dense.hpp"
#include "specsep/error.hpp"

namespace specsep {

namespace {

Vector gradient(const Matrix& a, std::span<const double> b, std::span<const double> x) {
  // w = A^T (b - A x)
  Vector resid(b.begin(), b.end());
  const Vector ax = a * x;
  for (std::size_t i = 0; i < resid.size(); ++i) resid[i] -= ax[i];
  Vector w(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) w[j] += ai[j] * resid[i];
  }
  return w;
}

// Unconstrained LS restricted to the passive set; nullopt if the passive
// columns are numerically dependent.
std::optional<Vector> solve_passive(const Matrix& a, std::span<const double> b,
                                    const std::vector<std::size_t>& passive) {
  Matrix sub(a.rows(), passive.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < passive.size(); ++k) sub(i, k) = a(i, passive[k]);
  return detail::least_squares(sub, b);
}

}  // namespace

Vector nnls_solve(const Matrix& a, std::span<const double> b, double tol) {
  const std::size_t p = a.rows();
  const std::size_t q = a.cols();
  if (p == 0 || q == 0) throw DimensionError("nnls_solve: empty matrix");
  if (b.size() != p) {
    throw DimensionError("nnls_solve: A has " + std::to_string(p) + " rows but b has " +
                         std::to_string(b.size()) + " entries");
  }
  if (!(tol > 0.0)) throw NumericalError("nnls_solve: tol must be positive");
  if (!all_finite(a) || !all_finite(b)) throw NumericalError("nnls_solve: non-finite input");

  const double scale = std::max(1.0, frobenius_norm(a) * norm2(b));
  const double kkt_tol = tol * scale;

  Vector x(q, 0.0);
  std::vector<bool> is_passive(q, false);
  std::vector<std::size_t> passive;
  std::vector<bool> blocked(q, false);  // columns rejected as dependent this round

  const std::size_t max_outer = 3 * q + 30;
  for (std::size_t outer = 0; outer < max_outer; ++outer) {
    Vector w = gradient(a, b, x);
    std::size_t t = q;
    double best = kkt_tol;
    for (std::size_t j = 0; j < q; ++j) {
      if (is_passive[j] || blocked[j]) continue;
      if (w[j] > best) {
        best = w[j];
        t = j;
      }
    }
    if (t == q) break;

    is_passive[t] = true;
    passive.push_back(t);

    // Inner loop: restore feasibility of the passive-set solution.
    bool accepted = false;
    for (std::size_t inner = 0; inner <= q + 1; ++inner) {
      auto z = solve_passive(a, b, passive);
      if (!z) {
        // Newly added column is dependent on the passive set: undo and block it.
        is_passive[t] = false;
        passive.erase(std::find(passive.begin(), passive.end(), t));
        blocked[t] = true;
        break;
      }
      bool feasible = true;
      for (std::size_t k = 0; k < passive.size(); ++k) {
        if ((*z)[k] <= 0.0) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t k = 0; k < passive.size(); ++k) x[passive[k]] = (*z)[k];
        accepted = true;
        break;
      }
      if (inner == 0 && (*z)[passive.size() - 1] <= 0.0 && passive.back() == t) {
        // Lawson-Hanson safeguard: the entering variable cannot move off the bound.
        is_passive[t] = false;
        passive.pop_back();
        blocked[t] = true;
        break;
      }
      // Step towards z until the first passive variable hits zero.
      double alpha = 1.0;
      std::size_t blocking = passive.size();
      for (std::size_t k = 0; k < passive.size(); ++k) {
        const double zk = (*z)[k];
        if (zk <= 0.0) {
          const double xk = x[passive[k]];
          const double step = xk - zk > 0.0 ? xk / (xk - zk) : 0.0;
          if (step < alpha || blocking == passive.size()) {
            alpha = std::min(alpha, step);
            blocking = k;
          }
        }
      }
      for (std::size_t k = 0; k < passive.size(); ++k) {
        const std::size_t j = passive[k];
        x[j] += alpha * ((*z)[k] - x[j]);
      }
      if (blocking < passive.size()) x[passive[blocking]] = 0.0;
      std::vector<std::size_t> kept;
      for (const std::size_t j : passive) {
        if (x[j] <= 0.0) {
          x[j] = 0.0;
          is_passive[j] = false;
        } else {
          kept.push_back(j);
        }
      }
      passive.swap(kept);
      if (passive.empty()) break;
    }
    if (accepted) std::fill(blocked.begin(), blocked.end(), false);
  }
  return x;
}

Matrix nnls_solve_multi(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows()) {
    throw DimensionError("nnls_solve_multi: A has " + std::to_string(a.rows()) + " rows but B has " +
                         std::to_string(b.rows()));
  }
  Matrix x(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_column(j, nnls_solve(a, b.column(j), tol));
  return x;
}

}  // namespace specsep
