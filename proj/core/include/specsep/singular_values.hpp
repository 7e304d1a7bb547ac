#pragma once

#include <cstddef>

#include "specsep/matrix.hpp"

namespace specsep {

/// Top-k singular values of A in descending order.
///
/// Cyclic one-sided Jacobi on the narrower orientation of A (columns are
/// rotated until mutually orthogonal, which diagonalises the smaller Gram
/// matrix implicitly). Working on A rather than A^T A keeps small
/// singular values accurate relative to the largest one.
///
/// Throws DimensionError if k == 0 or k > min(rows, cols).
Vector singular_values(const Matrix& a, std::size_t k);

/// All min(rows, cols) singular values, descending.
Vector singular_values(const Matrix& a);

}  // namespace specsep
