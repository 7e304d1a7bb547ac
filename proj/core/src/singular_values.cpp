#include "specsep/singular_values.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "specsep/error.hpp"

namespace specsep {

Vector singular_values(const Matrix& a) {
  if (a.empty()) throw DimensionError("singular_values: empty matrix");
  if (!all_finite(a)) throw NumericalError("singular_values: non-finite input");

  // Columns of `work` (stored as rows for contiguous access) get orthogonalised.
  Matrix work = a.cols() <= a.rows() ? a.transposed() : a;
  const std::size_t ncol = work.rows();
  const std::size_t len = work.cols();

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < ncol; ++p) {
      for (std::size_t q = p + 1; q < ncol; ++q) {
        auto up = work.row(p);
        auto uq = work.row(q);
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
          alpha += up[i] * up[i];
          beta += uq[i] * uq[i];
          gamma += up[i] * uq[i];
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < len; ++i) {
          const double x = up[i];
          const double y = uq[i];
          up[i] = c * x - s * y;
          uq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  Vector sv(ncol);
  for (std::size_t j = 0; j < ncol; ++j) sv[j] = norm2(work.row(j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

Vector singular_values(const Matrix& a, std::size_t k) {
  const std::size_t kmax = std::min(a.rows(), a.cols());
  if (k == 0 || k > kmax) {
    throw DimensionError("singular_values: k = " + std::to_string(k) + " outside [1, " +
                         std::to_string(kmax) + "]");
  }
  Vector all = singular_values(a);
  all.resize(k);
  return all;
}

}  // namespace specsep
