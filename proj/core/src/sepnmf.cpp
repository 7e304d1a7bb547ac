#include "specsep/sepnmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "specsep/error.hpp"
#include "specsep/preprocess.hpp"
#include "specsep/singular_values.hpp"

namespace specsep {

namespace {

// Weight of the appended sum row that pins the coefficients to the simplex
// face when the unconstrained NNLS coefficients sum past one.
constexpr double kSumRowWeight = 1e3;
constexpr double kAugmentedTol = 1e-14;
constexpr double kTieTol = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::size_t estimate_species_count(const Matrix& m, double drop_ratio) {
  if (!(drop_ratio > 0.0 && drop_ratio < 1.0)) {
    throw ValidationError("estimate_species_count: drop ratio must lie in (0, 1)");
  }
  const Vector s = singular_values(m);
  if (s.front() == 0.0) return 0;
  const std::size_t cap = std::min(kMaxSpeciesCount, s.size());
  for (std::size_t r = 1; r < cap; ++r) {
    if (s[r] < drop_ratio * s.front()) return r;
  }
  return cap;
}

Vector hull_projection(const Matrix& vertices, std::span<const double> b) {
  const Matrix a = vertices.transposed();  // n x k
  Vector lambda = nnls_solve(a, b);
  if (std::accumulate(lambda.begin(), lambda.end(), 0.0) > 1.0 + kTieTol) {
    // Append the origin as a slack vertex and a weighted row sum(lambda) + slack = 1.
    const std::size_t n = a.rows();
    const std::size_t k = a.cols();
    Matrix aug(n + 1, k + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j <= k; ++j) aug(n, j) = kSumRowWeight;
    Vector rhs(b.begin(), b.end());
    rhs.push_back(kSumRowWeight);
    Vector full = nnls_solve(aug, rhs, kAugmentedTol);
    lambda.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return a * lambda;
}

SelectedIndices snpa_select(const NonNegMatrix& mn, std::size_t r) {
  const std::size_t m = mn.rows();
  if (r == 0) throw ValidationError("snpa_select: r must be >= 1");
  if (r > m) {
    throw ValidationError("snpa_select: r = " + std::to_string(r) + " exceeds the " +
                          std::to_string(m) + " available rows");
  }
  SelectedIndices sel;
  std::vector<bool> taken(m, false);
  std::vector<double> resid(m);
  for (std::size_t i = 0; i < m; ++i) resid[i] = norm2(mn.row(i));

  for (std::size_t step = 0; step < r; ++step) {
    double best = -1.0;
    std::size_t pick = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (taken[i]) continue;
      if (pick == m || resid[i] > best * (1.0 + kTieTol)) {
        best = resid[i];
        pick = i;
      }
    }
    taken[pick] = true;
    sel.indices.push_back(pick);
    sel.residual_norms.push_back(best);
    if (step + 1 == r) break;

    const Matrix vertices = mn.get().select_rows(sel.indices);
    for (std::size_t i = 0; i < m; ++i) {
      if (taken[i]) continue;
      auto row = mn.row(i);
      const Vector p = hull_projection(vertices, row);
      double ss = 0.0;
      for (std::size_t j = 0; j < row.size(); ++j) ss += (row[j] - p[j]) * (row[j] - p[j]);
      resid[i] = std::sqrt(ss);
    }
  }
  sel.original_indices = sel.indices;
  return sel;
}

RescaledKinetics rescale_kinetics(const NonNegMatrix& hhat) {
  const std::size_t r = hhat.rows();
  const std::size_t n = hhat.cols();
  for (std::size_t s = 0; s < r; ++s) {
    auto row = hhat.row(s);
    if (std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; })) {
      throw ValidationError("rescale_kinetics: pseudo-kinetics row " + std::to_string(s) + " is zero");
    }
  }
  const Vector e(n, 1.0);
  Vector d = nnls_solve(hhat.get().transposed(), e);
  RescaledKinetics out{NonNegMatrix(Matrix::diagonal(d) * hhat.get()), d, {}};
  for (std::size_t s = 0; s < r; ++s) {
    if (d[s] == 0.0) {
      out.warnings.push_back("species " + std::to_string(s) + " received zero scale (degenerate row)");
    }
  }
  return out;
}

NonNegMatrix recover_spectra(const NonNegMatrix& m, const NonNegMatrix& h, double tol) {
  if (m.cols() != h.cols()) {
    throw DimensionError("recover_spectra: M has " + std::to_string(m.cols()) + " columns but H has " +
                         std::to_string(h.cols()));
  }
  const Matrix ht = h.get().transposed();
  Matrix w(m.rows(), h.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Vector x = nnls_solve(ht, m.row(i), tol);
    std::copy(x.begin(), x.end(), w.row(i).begin());
  }
  return NonNegMatrix(std::move(w));
}

UnmixResult unmix(const NonNegMatrix& m, std::size_t r) {
  const NormalizedRows norm = normalize_rows(m);
  SelectedIndices sel = snpa_select(norm.m, r);
  NonNegMatrix hhat(m.get().select_rows(sel.indices));
  RescaledKinetics resc = rescale_kinetics(hhat);
  NonNegMatrix w = recover_spectra(m, resc.h);
  const double denom = frobenius_norm(m.get());
  const double resid = frobenius_norm(m.get() - w.get() * resc.h.get());
  return UnmixResult{std::move(resc.h), std::move(w), std::move(sel), std::move(resc.d),
                     denom > 0.0 ? resid / denom : 0.0, std::move(resc.warnings)};
}

std::vector<std::size_t> align_species(const Matrix& w_true, const Matrix& w_est) {
  if (w_true.rows() != w_est.rows() || w_true.cols() != w_est.cols()) {
    throw DimensionError("align_species: shape mismatch");
  }
  const std::size_t r = w_true.cols();
  std::vector<Vector> ct(r), ce(r);
  std::vector<double> nt(r), ne(r);
  for (std::size_t s = 0; s < r; ++s) {
    ct[s] = w_true.column(s);
    ce[s] = w_est.column(s);
    nt[s] = norm2(ct[s]);
    ne[s] = norm2(ce[s]);
  }
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const double denom = nt[i] * ne[j];
      pairs.emplace_back(denom > 0.0 ? dot(ct[i], ce[j]) / denom : 0.0, i, j);
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::vector<std::size_t> perm(r, r);
  std::vector<bool> used(r, false);
  for (const auto& [c, i, j] : pairs) {
    if (perm[i] == r && !used[j]) {
      perm[i] = j;
      used[j] = true;
    }
  }
  return perm;
}

Matrix permute_columns(const Matrix& w, std::span<const std::size_t> perm) {
  if (perm.size() != w.cols()) throw DimensionError("permute_columns: permutation length mismatch");
  Matrix out(w.rows(), w.cols());
  for (std::size_t s = 0; s < perm.size(); ++s) out.set_column(s, w.column(perm[s]));
  return out;
}

Matrix permute_rows(const Matrix& h, std::span<const std::size_t> perm) {
  if (perm.size() != h.rows()) throw DimensionError("permute_rows: permutation length mismatch");
  return h.select_rows(perm);
}

}  // namespace specsep
