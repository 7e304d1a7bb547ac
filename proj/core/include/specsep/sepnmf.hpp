#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specsep/matrix.hpp"
#include "specsep/nnls.hpp"

namespace specsep {

inline constexpr double kDefaultDropRatio = 0.01;
inline constexpr std::size_t kMaxSpeciesCount = 10;

/// Smallest r with sigma_{r+1} < drop_ratio * sigma_1, capped at
/// min(10, rows, cols). Returns 0 for the zero matrix.
std::size_t estimate_species_count(const Matrix& m, double drop_ratio = kDefaultDropRatio);

struct SelectedIndices {
  std::vector<std::size_t> indices;           // filtered coordinates, selection order
  std::vector<std::size_t> original_indices;  // through the preprocess row map
  std::vector<double> residual_norms;         // residual of each pick when chosen
};

/// Closest point to b in conv({rows of vertices} U {0}).
Vector hull_projection(const Matrix& vertices, std::span<const double> b);

/// Successive non-negative projection on row-normalized data. Each step
/// picks the row with the largest residual after projection onto the
/// hull of the rows picked so far and the origin; ties go to the lowest
/// index. original_indices equals indices.
SelectedIndices snpa_select(const NonNegMatrix& mn, std::size_t r);

struct RescaledKinetics {
  NonNegMatrix h;
  Vector d;
  std::vector<std::string> warnings;
};

/// d = argmin_{d >= 0} ||Hhat^T d - e||, H = diag(d) Hhat. A zero d_i is
/// reported in `warnings`.
RescaledKinetics rescale_kinetics(const NonNegMatrix& hhat);

/// Row-wise NNLS: W(i, :) = argmin_{w >= 0} ||H^T w - M(i, :)^T||.
NonNegMatrix recover_spectra(const NonNegMatrix& m, const NonNegMatrix& h,
                             double tol = kDefaultNnlsTol);

struct UnmixResult {
  NonNegMatrix h;  // r x n, columns sum to about 1
  NonNegMatrix w;  // m x r
  SelectedIndices selected;
  Vector scaling;
  double relative_residual = 0.0;  // ||M - W H||_F / ||M||_F
  std::vector<std::string> warnings;
};

/// Selection on the row-normalized copy of m, pseudo-kinetics from the
/// selected rows of m itself, then rescaling and spectra recovery.
UnmixResult unmix(const NonNegMatrix& m, std::size_t r);

/// perm[i] = estimated column matched to true column i, by greedy
/// maximal cosine similarity over all (true, estimated) pairs.
std::vector<std::size_t> align_species(const Matrix& w_true, const Matrix& w_est);

/// Columns of w reordered by perm.
Matrix permute_columns(const Matrix& w, std::span<const std::size_t> perm);
/// Rows of h reordered by perm.
Matrix permute_rows(const Matrix& h, std::span<const std::size_t> perm);

}  // namespace specsep
