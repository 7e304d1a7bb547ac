#include "dense.hpp"

#include <cmath>
#include <utility>

#include "specsep/error.hpp"

namespace specsep::detail {

std::optional<Vector> least_squares(const Matrix& a, std::span<const double> b, double rank_tol) {
  const std::size_t p = a.rows();
  const std::size_t q = a.cols();
  if (b.size() != p) throw DimensionError("least_squares: rhs length mismatch");
  if (q > p) return std::nullopt;

  Matrix r = a;
  Vector y(b.begin(), b.end());
  const double threshold = rank_tol * std::max(frobenius_norm(a), 1e-300);

  Vector v(p);
  for (std::size_t k = 0; k < q; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k; i < p; ++i) alpha = std::hypot(alpha, r(i, k));
    if (alpha <= threshold) return std::nullopt;
    if (r(k, k) > 0) alpha = -alpha;

    // v = x - alpha e1, normalised implicitly through vtv.
    double vtv = 0.0;
    for (std::size_t i = k; i < p; ++i) {
      v[i] = r(i, k) - (i == k ? alpha : 0.0);
      vtv += v[i] * v[i];
    }
    if (vtv == 0.0) continue;
    for (std::size_t j = k; j < q; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < p; ++i) s += v[i] * r(i, j);
      s = 2.0 * s / vtv;
      for (std::size_t i = k; i < p; ++i) r(i, j) -= s * v[i];
    }
    double s = 0.0;
    for (std::size_t i = k; i < p; ++i) s += v[i] * y[i];
    s = 2.0 * s / vtv;
    for (std::size_t i = k; i < p; ++i) y[i] -= s * v[i];
  }

  Vector x(q);
  for (std::size_t k = q; k-- > 0;) {
    double s = y[k];
    for (std::size_t j = k + 1; j < q; ++j) s -= r(k, j) * x[j];
    x[k] = s / r(k, k);
  }
  return x;
}

Matrix lu_solve(Matrix a, Matrix b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw DimensionError("lu_solve: shape mismatch");
  const std::size_t m = b.cols();
  const double scale = max_abs(a);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) <= 1e-300 || std::abs(a(piv, k)) <= 1e-15 * scale) {
      throw NumericalError("lu_solve: matrix is singular to working precision");
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(b(k, j), b(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < m; ++j) b(i, j) -= f * b(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = b(k, j);
      for (std::size_t i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
      b(k, j) = s / a(k, k);
    }
  }
  return b;
}

}  // namespace specsep::detail
