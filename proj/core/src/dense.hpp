#pragma once

#include <optional>
#include <span>

#include "specsep/matrix.hpp"

namespace specsep::detail {

// Least-squares solution of min ||A x - b|| for a full-column-rank A via
// Householder QR. Returns nullopt when a diagonal entry of R falls below
// rank_tol * ||A||_F, i.e. A is numerically rank deficient.
std::optional<Vector> least_squares(const Matrix& a, std::span<const double> b,
                                    double rank_tol = 1e-13);

// Solves A X = B for square A with partial pivoting. Throws NumericalError
// when A is singular to working precision.
Matrix lu_solve(Matrix a, Matrix b);

}  // namespace specsep::detail
