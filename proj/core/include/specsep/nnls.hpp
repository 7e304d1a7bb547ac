#pragma once

#include <span>

#include "specsep/matrix.hpp"

namespace specsep {

inline constexpr double kDefaultNnlsTol = 1e-10;

/// Non-negative least squares: x >= 0 minimising ||A x - b||_2.
///
/// Lawson-Hanson active-set method. Terminates when every inactive
/// coordinate has gradient component w_i = (A^T (b - A x))_i <= tol * s,
/// where s = max(1, ||A||_F * ||b||_2) makes the test scale-free for
/// the intensity ranges used here. Active coordinates satisfy w_i = 0 up
/// to rounding.
///
/// Throws DimensionError on shape mismatch and NumericalError on
/// non-finite input or tol <= 0.
Vector nnls_solve(const Matrix& a, std::span<const double> b, double tol = kDefaultNnlsTol);

/// Column-wise NNLS: column j of the result solves nnls_solve(a, B(:, j)).
Matrix nnls_solve_multi(const Matrix& a, const Matrix& b, double tol = kDefaultNnlsTol);

}  // namespace specsep
