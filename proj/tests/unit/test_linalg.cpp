#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "specsep/error.hpp"
#include "specsep/expm.hpp"
#include "specsep/nnls.hpp"
#include "specsep/singular_values.hpp"

using namespace specsep;

namespace {

double residual_norm(const Matrix& a, const Vector& x, const Vector& b) {
  Vector r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return norm2(r);
}

Vector gradient(const Matrix& a, const Vector& x, const Vector& b) {
  Vector r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return a.transposed() * r;
}

const Matrix kReferenceK{{-0.53, 0.02, 0, 0, 0},
                     {0.53, -0.66, 0.25, 0, 0},
                     {0, 0.43, -0.36, 0, 0.1},
                     {0, 0.21, 0, 0, 0},
                     {0, 0, 0.11, 0, -0.1}};

}  // namespace

TEST(Matrix, RejectsEmptyShape) {
  EXPECT_THROW(Matrix(0, 3), DimensionError);
  EXPECT_THROW(Matrix(2, 0), DimensionError);
}

TEST(Matrix, ProductAndTranspose) {
  const Matrix a{{1, 2}, {3, 4}, {5, 6}};
  const Matrix b{{1, 0, 2}, {0, 1, 1}};
  const Matrix c = a * b;
  EXPECT_EQ(c, (Matrix{{1, 2, 4}, {3, 4, 10}, {5, 6, 16}}));
  EXPECT_EQ(a.transposed().transposed(), a);
  EXPECT_THROW(a * a, DimensionError);
}

TEST(Matrix, NonNegRejectsNegativeAndNaN) {
  EXPECT_THROW(NonNegMatrix(Matrix{{1, -1e-300}}), ValidationError);
  EXPECT_THROW(NonNegMatrix(Matrix{{std::nan("")}}), ValidationError);
  EXPECT_NO_THROW(NonNegMatrix(Matrix{{0, 2}}));
}

TEST(Matrix, NormsAreScaleSafe) {
  const Vector v{3e200, 4e200};
  EXPECT_DOUBLE_EQ(norm2(v), 5e200);
  EXPECT_DOUBLE_EQ(norm1(Matrix{{1, -2}, {-3, 1}}), 4.0);
}

TEST(Nnls, IdentityWithNonNegativeRhs) {
  const Vector x = nnls_solve(Matrix::identity(2), Vector{3, 5});
  EXPECT_DOUBLE_EQ(x[0], 3.0);
  EXPECT_DOUBLE_EQ(x[1], 5.0);
}

TEST(Nnls, NegativeComponentClipped) {
  const Vector x = nnls_solve(Matrix::identity(2), Vector{-1, 2});
  EXPECT_DOUBLE_EQ(x[0], 0.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(Nnls, SeededSixByFourMatchesEnumeration) {
  oracle::Rng rng(604);
  const Matrix a = rng.matrix(6, 4, -1, 1);
  const Vector b = rng.vector(6, -1, 1);
  const Vector ref = oracle::nnls_enumerate(a, b);
  const Vector x = nnls_solve(a, b);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(x[j], ref[j], 1e-10);
}

TEST(Nnls, Errors) {
  EXPECT_THROW(nnls_solve(Matrix::identity(2), Vector{1, 2, 3}), DimensionError);
  EXPECT_THROW(nnls_solve(Matrix::identity(2), Vector{1, std::nan("")}), NumericalError);
  EXPECT_THROW(nnls_solve(Matrix{{std::numeric_limits<double>::infinity(), 0}, {0, 1}}, Vector{1, 1}),
               NumericalError);
  EXPECT_THROW(nnls_solve(Matrix::identity(2), Vector{1, 2}, 0.0), NumericalError);
}

TEST(Nnls, DependentColumnsStillOptimal) {
  // Columns 0 and 2 coincide; the solver must not stall on the duplicate.
  const Matrix a{{1, 0, 1}, {1, 1, 1}, {0, 1, 0}};
  const Vector b{1, 2, 1};
  const Vector x = nnls_solve(a, b);
  EXPECT_NEAR(residual_norm(a, x, b), 0.0, 1e-12);
  for (double v : x) EXPECT_GE(v, 0.0);
}

TEST(NnlsProperty, MatchesEnumerationOn200Instances) {
  oracle::Rng rng(2024);
  for (int c = 0; c < 200; ++c) {
    const std::size_t q = 1 + rng.index(5);
    const std::size_t p = q + rng.index(6);
    const Matrix a = rng.matrix(p, q, -1, 1);
    const Vector b = rng.vector(p, -1, 1);
    const Vector ref = oracle::nnls_enumerate(a, b);
    const Vector x = nnls_solve(a, b);
    for (std::size_t j = 0; j < q; ++j) ASSERT_NEAR(x[j], ref[j], 1e-8) << "case " << c;
  }
}

TEST(NnlsProperty, FeasibleKktAndNoWorseThanZero) {
  oracle::Rng rng(77);
  for (int c = 0; c < 200; ++c) {
    const std::size_t q = 1 + rng.index(8);
    const std::size_t p = 1 + rng.index(12);
    const Matrix a = rng.matrix(p, q, -2, 2);
    const Vector b = rng.vector(p, -3, 3);
    const Vector x = nnls_solve(a, b);
    const Vector g = gradient(a, x, b);
    const double tol = 1e-8 * std::max(1.0, frobenius_norm(a) * norm2(b));
    for (std::size_t j = 0; j < q; ++j) {
      ASSERT_GE(x[j], 0.0);
      if (x[j] > 0.0) {
        ASSERT_LE(std::abs(g[j]), tol) << "case " << c;
      } else {
        ASSERT_GE(g[j], -tol) << "case " << c;
      }
    }
    ASSERT_LE(residual_norm(a, x, b), norm2(b) + 1e-12);
  }
}

TEST(NnlsProperty, AgreesWithLeastSquaresWhenInterior) {
  oracle::Rng rng(91);
  int checked = 0;
  for (int c = 0; c < 400 && checked < 100; ++c) {
    const std::size_t q = 1 + rng.index(4);
    const Matrix a = rng.matrix(q + 4, q, 0.5, 2.0);
    Vector x0 = rng.vector(q, 0.1, 1.0);
    Vector b = a * x0;
    for (double& v : b) v += 0.01 * rng.normal();
    const Vector ls = oracle::least_squares(a, b);
    if (std::any_of(ls.begin(), ls.end(), [](double v) { return v <= 0.0; })) continue;
    ++checked;
    const Vector x = nnls_solve(a, b);
    for (std::size_t j = 0; j < q; ++j) ASSERT_NEAR(x[j], ls[j], 1e-9);
  }
  EXPECT_GE(checked, 100);
}

TEST(NnlsMulti, IdentityReturnsB) {
  const Matrix b{{1, 2}, {3, 4}};
  EXPECT_EQ(nnls_solve_multi(Matrix::identity(2), b), b);
}

TEST(NnlsMulti, ColumnsMatchSingleSolves) {
  oracle::Rng rng(53);
  const Matrix a = rng.matrix(5, 3, -1, 1);
  const Matrix b = rng.matrix(5, 2, -1, 1);
  const Matrix x = nnls_solve_multi(a, b);
  for (std::size_t j = 0; j < 2; ++j) {
    const Vector xj = nnls_solve(a, b.column(j));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(x(i, j), xj[i]);
  }
  const Matrix one = nnls_solve_multi(a, Matrix::from_columns({b.column(0)}));
  EXPECT_EQ(one.column(0), nnls_solve(a, b.column(0)));
}

TEST(Expm, ZeroGivesIdentity) { EXPECT_EQ(expm(Matrix(3, 3)), Matrix::identity(3)); }

TEST(Expm, Diagonal) {
  const Matrix e = expm(Matrix{{-1, 0}, {0, -2}});
  EXPECT_NEAR(e(0, 0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(e(1, 1), std::exp(-2.0), 1e-15);
  EXPECT_EQ(e(0, 1), 0.0);
}

TEST(Expm, RateMatrixMatchesTaylor) {
  const Matrix e = expm(kReferenceK);
  const Matrix ref = oracle::expm_taylor(kReferenceK);
  EXPECT_LE(frobenius_norm(e - ref) / frobenius_norm(ref), 1e-10);
}

TEST(Expm, Errors) {
  EXPECT_THROW(expm(Matrix(2, 3)), DimensionError);
  EXPECT_THROW(expm(Matrix{{std::nan("")}}), NumericalError);
  EXPECT_THROW(expm(Matrix{{800.0}}), NumericalError);
  // Large but dissipative: fine.
  EXPECT_NO_THROW(expm(1e4 * kReferenceK));
}

TEST(ExpmProperty, TaylorOracleForNormUpToTwo) {
  oracle::Rng rng(11);
  for (int c = 0; c < 150; ++c) {
    const std::size_t n = 1 + rng.index(6);
    Matrix k = rng.matrix(n, n, -1, 1);
    k *= rng.uniform(0.0, 2.0) / std::max(norm1(k), 1e-300);
    const Matrix ref = oracle::expm_taylor(k);
    ASSERT_LE(frobenius_norm(expm(k) - ref) / frobenius_norm(ref), 1e-10) << "case " << c;
  }
}

TEST(ExpmProperty, InverseForNormUpToTen) {
  oracle::Rng rng(12);
  for (int c = 0; c < 150; ++c) {
    const std::size_t n = 1 + rng.index(6);
    Matrix k = rng.matrix(n, n, -1, 1);
    k *= rng.uniform(0.0, 10.0) / std::max(norm1(k), 1e-300);
    const Matrix p = expm(k) * expm(-1.0 * k);
    ASSERT_LE(frobenius_norm(p - Matrix::identity(n)), 1e-8) << "case " << c;
  }
}

TEST(ExpmProperty, Semigroup) {
  oracle::Rng rng(13);
  for (int c = 0; c < 150; ++c) {
    const std::size_t n = 1 + rng.index(6);
    Matrix k = rng.matrix(n, n, -1, 1);
    k *= rng.uniform(0.0, 10.0) / std::max(norm1(k), 1e-300);
    const double s = rng.uniform(0, 2), t = rng.uniform(0, 2);
    const Matrix lhs = expm((s + t) * k);
    const Matrix rhs = expm(s * k) * expm(t * k);
    ASSERT_LE(frobenius_norm(lhs - rhs) / std::max(1.0, frobenius_norm(lhs)), 1e-8) << "case " << c;
  }
}

TEST(SingularValues, Diagonal) {
  const Vector s = singular_values(Matrix{{3, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 3);
  EXPECT_NEAR(s[0], 3, 1e-14);
  EXPECT_NEAR(s[1], 2, 1e-14);
  EXPECT_NEAR(s[2], 1, 1e-14);
}

TEST(SingularValues, RankOne) {
  const Vector u{1, 2, 2}, v{3, 4};
  Matrix a(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) a(i, j) = u[i] * v[j];
  const Vector s = singular_values(a);
  EXPECT_NEAR(s[0], 15.0, 1e-13);
  EXPECT_NEAR(s[1], 0.0, 1e-13);
}

TEST(SingularValues, RangeErrors) {
  const Matrix a(4, 3);
  EXPECT_THROW(singular_values(a, 0), DimensionError);
  EXPECT_THROW(singular_values(a, 4), DimensionError);
}

TEST(SingularValues, EightBySixMatchesGramOracle) {
  oracle::Rng rng(86);
  const Matrix a = rng.matrix(8, 6, -1, 1);
  const Vector s = singular_values(a, 6);
  const Vector ref = oracle::gram_singular_values(a);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(s[i], ref[i], 1e-8 * ref[0]);
}

TEST(SingularValuesProperty, GramOracleAndTranspose) {
  oracle::Rng rng(87);
  for (int c = 0; c < 120; ++c) {
    const std::size_t r = 1 + rng.index(12), k = 1 + rng.index(12);
    const Matrix a = rng.matrix(r, k, -1, 1);
    const Vector s = singular_values(a);
    const Vector st = singular_values(a.transposed());
    const Vector ref = oracle::gram_singular_values(a);
    ASSERT_EQ(s.size(), ref.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      ASSERT_NEAR(s[i], ref[i], 1e-8 * ref[0]) << "case " << c;
      ASSERT_NEAR(s[i], st[i], 1e-10 * s[0]) << "case " << c;
      if (i > 0) {
        ASSERT_LE(s[i], s[i - 1]);
      }
    }
  }
}
