#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "specsep/matrix.hpp"

namespace test_support {

struct Separable {
  specsep::Matrix m;
  specsep::Matrix w;
  specsep::Matrix h;
  std::vector<std::size_t> characteristic;  // row of M for species s
};

// M = W H where row characteristic[s] of W is a positive multiple of e_s
// and every other row mixes at least two species.
inline Separable make_separable(oracle::Rng& rng, std::size_t m, std::size_t r, std::size_t n) {
  Separable s{specsep::Matrix(m, n), specsep::Matrix(m, r), rng.matrix(r, n, 0.05, 1.0), {}};
  // Mass-conserving kinetics: unit column sums.
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    for (std::size_t k = 0; k < r; ++k) total += s.h(k, j);
    for (std::size_t k = 0; k < r; ++k) s.h(k, j) /= total;
  }
  std::vector<std::size_t> rows(m);
  std::iota(rows.begin(), rows.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng.engine);
  s.characteristic.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(r));
  for (std::size_t k = 0; k < r; ++k) s.w(s.characteristic[k], k) = rng.uniform(0.5, 3.0);
  for (std::size_t k = r; k < m; ++k) {
    std::size_t nonzero = 0;
    while (nonzero < std::min<std::size_t>(2, r)) {
      nonzero = 0;
      for (std::size_t c = 0; c < r; ++c) {
        s.w(rows[k], c) = rng.uniform() < 0.7 ? rng.uniform(0.1, 2.0) : 0.0;
        nonzero += s.w(rows[k], c) > 0.0 ? 1 : 0;
      }
    }
  }
  s.m = s.w * s.h;
  return s;
}

// Largest distance from a row of mn to the cone of the rows in `subset`,
// by support enumeration. Rows have unit sums, so the cone and the hull
// with the origin agree on them.
inline double max_cone_residual(const specsep::Matrix& mn, const std::vector<std::size_t>& subset) {
  const specsep::Matrix a = mn.select_rows(subset).transposed();
  double worst = 0.0;
  for (std::size_t i = 0; i < mn.rows(); ++i) {
    const auto b = mn.row(i);
    const specsep::Vector x = oracle::nnls_enumerate(a, b);
    specsep::Vector p = a * x;
    for (std::size_t j = 0; j < p.size(); ++j) p[j] -= b[j];
    worst = std::max(worst, specsep::norm2(p));
  }
  return worst;
}

// Every r-subset of rows whose cone contains all rows of mn, up to tol.
inline std::vector<std::vector<std::size_t>> zero_residual_supports(const specsep::Matrix& mn, std::size_t r,
                                                                     double tol = 1e-9) {
  std::vector<std::vector<std::size_t>> found;
  std::vector<bool> pick(mn.rows(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
  do {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < pick.size(); ++i)
      if (pick[i]) subset.push_back(i);
    if (max_cone_residual(mn, subset) < tol) found.push_back(subset);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return found;
}

}  // namespace test_support
