#pragma once

#include "specsep/matrix.hpp"

namespace specsep {

/// Largest 1-norm accepted by expm (caps the number of squarings).
inline constexpr double kExpmMaxNorm = 1e12;

/// Matrix exponential e^K by scaling and squaring with a diagonal [6/6]
/// Pade approximant. K is scaled by 2^-s so that ||K / 2^s||_1 <= 0.5,
/// where the approximant's truncation error is below double rounding.
///
/// Throws DimensionError for non-square input and NumericalError for
/// non-finite entries, ||K||_1 > kExpmMaxNorm or a result outside double range.
Matrix expm(const Matrix& k);

}  // namespace specsep
