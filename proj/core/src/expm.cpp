#include "specsep/expm.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>

#include "dense.hpp"
#include "specsep/error.hpp"

namespace specsep {

namespace {

// c_k = (2q - k)! q! / ((2q)! k! (q - k)!) for q = 6.
constexpr std::array<double, 7> kPade6 = {
    1.0,
    1.0 / 2.0,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
};

}  // namespace

Matrix expm(const Matrix& k) {
  const std::size_t n = k.rows();
  if (n == 0 || k.cols() != n) throw DimensionError("expm: matrix must be square");
  if (!all_finite(k)) throw NumericalError("expm: non-finite entry");
  const double nrm = norm1(k);
  if (nrm > kExpmMaxNorm) {
    throw NumericalError("expm: ||K||_1 = " + std::to_string(nrm) + " exceeds the supported range");
  }

  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  Matrix a = std::ldexp(1.0, -squarings) * k;

  // Even and odd parts: N = U + V, D = U - V with U even powers, V odd powers.
  const Matrix eye = Matrix::identity(n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  Matrix even = kPade6[0] * eye;
  even += kPade6[2] * a2;
  even += kPade6[4] * a4;
  even += kPade6[6] * a6;
  Matrix odd_inner = kPade6[1] * eye;
  odd_inner += kPade6[3] * a2;
  odd_inner += kPade6[5] * a4;
  const Matrix odd = a * odd_inner;

  Matrix result = detail::lu_solve(even - odd, even + odd);
  for (int s = 0; s < squarings; ++s) result = result * result;
  if (!all_finite(result)) throw NumericalError("expm: result overflowed");
  return result;
}

}  // namespace specsep
