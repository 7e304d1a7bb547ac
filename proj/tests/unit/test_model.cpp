#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "specsep/error.hpp"
#include "specsep/expm.hpp"
#include "specsep/kinetics.hpp"
#include "specsep/spectral.hpp"
#include "test_support.hpp"

using namespace specsep;

namespace {

Peak lorentz(double x0, double g, double i) { return Peak{PeakShape::Lorentzian, x0, g, i}; }

}  // namespace

TEST(Peak, LorentzianMaximumAndHalfHeight) {
  const Peak p = lorentz(1000, 8, 5);
  EXPECT_DOUBLE_EQ(peak_eval(p, 1000), 5.0);
  EXPECT_DOUBLE_EQ(peak_eval(p, 1008), 2.5);
  EXPECT_DOUBLE_EQ(peak_eval(lorentz(0, 1, 1), 3), 0.1);
}

TEST(Peak, GaussianSharesHalfWidthConvention) {
  const Peak g{PeakShape::Gaussian, 500, 4, 3};
  EXPECT_DOUBLE_EQ(peak_eval(g, 500), 3.0);
  EXPECT_NEAR(peak_eval(g, 504), 1.5, 1e-15);
  EXPECT_NEAR(peak_eval(g, 496), 1.5, 1e-15);
}

TEST(Peak, Validation) {
  EXPECT_THROW(validate_peak(lorentz(1000, 0, 1), 400, 1800), ValidationError);
  EXPECT_THROW(validate_peak(lorentz(1000, 1, -1), 400, 1800), ValidationError);
  EXPECT_THROW(validate_peak(lorentz(2000, 1, 1), 400, 1800), ValidationError);
  EXPECT_THROW(validate_fingerprint(Fingerprint{"X", {}}, 400, 1800), ValidationError);
}

TEST(FrequencyGrid, Invariants) {
  EXPECT_THROW(FrequencyGrid({1.0}), ValidationError);
  EXPECT_THROW(FrequencyGrid({1.0, 1.0}), ValidationError);
  const auto g = FrequencyGrid::uniform(400, 1800, 701);
  EXPECT_EQ(g.lower(), 400);
  EXPECT_EQ(g.upper(), 1800);
  EXPECT_EQ(g.nearest_index(1001.1), 301u);
}

TEST(Fingerprint, SinglePeakAndLinearity) {
  const auto grid = FrequencyGrid::uniform(400, 600, 21);
  const Fingerprint one{"A", {lorentz(500, 5, 2)}};
  const Fingerprint two{"A", {lorentz(500, 5, 2), lorentz(500, 5, 2)}};
  const Vector a = fingerprint_eval(one, grid), b = fingerprint_eval(two, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a[i], peak_eval(one.peaks[0], grid[i]));
    EXPECT_EQ(b[i], 2.0 * a[i]);
  }
}

TEST(Fingerprint, ThreePeaksMatchTermwiseSum) {
  const auto grid = FrequencyGrid::uniform(0, 10, 11);
  const Fingerprint w{"A", {lorentz(2, 1, 3), lorentz(5, 0.5, 1), {PeakShape::Gaussian, 8, 2, 2}}};
  const Vector v = fingerprint_eval(w, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long double x = grid[i];
    const long double ref = 3.0L / ((x - 2) * (x - 2) + 1) * 1 + 1.0L * 0.25L / ((x - 5) * (x - 5) + 0.25L) +
                            2.0L * std::exp(-std::log(2.0L) * (x - 8) * (x - 8) / 4.0L);
    EXPECT_NEAR(v[i], static_cast<double>(ref), 1e-14);
    EXPECT_GT(v[i], 0.0);
  }
}

TEST(AssembleSpectra, ColumnsAndPermutation) {
  const auto fps = test_support::canonical_fingerprints();
  const auto grid = FrequencyGrid::uniform(400, 1800, 700);
  const Matrix w = assemble_spectra(fps, grid);
  ASSERT_EQ(w.cols(), 5u);
  for (double v : w.data()) EXPECT_GT(v, 0.0);
  std::vector<Fingerprint> rev(fps.rbegin(), fps.rend());
  const Matrix wr = assemble_spectra(rev, grid);
  for (std::size_t s = 0; s < 5; ++s) EXPECT_EQ(wr.column(s), w.column(4 - s));
  const Matrix w1 = assemble_spectra(std::span(fps).first(1), grid);
  EXPECT_EQ(w1.column(0), fingerprint_eval(fps[0], grid));
}

TEST(AssembleSpectra, EachSpeciesMaximumRowDistinct) {
  const auto fps = test_support::canonical_fingerprints();
  const auto grid = FrequencyGrid::uniform(400, 1800, 700);
  const Matrix w = assemble_spectra(fps, grid);
  std::vector<std::size_t> argmax;
  for (std::size_t s = 0; s < 5; ++s) {
    const Vector c = w.column(s);
    argmax.push_back(static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin()));
  }
  std::sort(argmax.begin(), argmax.end());
  EXPECT_EQ(std::adjacent_find(argmax.begin(), argmax.end()), argmax.end());
}

TEST(SpectralProperty, HalfHeightAndIntensityLinearity) {
  oracle::Rng rng(31);
  const auto grid = FrequencyGrid::uniform(400, 1800, 141);
  for (int c = 0; c < 150; ++c) {
    // Dyadic base and width so that base +- width is exact.
    const double base = std::round(rng.uniform(400, 1800) * 64) / 64;
    const double width = std::round(rng.uniform(0.5, 30) * 64) / 64;
    const Peak p = lorentz(base, width, rng.uniform(0.1, 100));
    ASSERT_EQ(peak_eval(p, p.base + p.width), p.intensity / 2);
    ASSERT_EQ(peak_eval(p, p.base - p.width), p.intensity / 2);
    Fingerprint w{"X", {p, lorentz(rng.uniform(400, 1800), rng.uniform(0.5, 30), rng.uniform(0.1, 100))}};
    const double k = rng.uniform(0.1, 10);
    Fingerprint scaled = w;
    for (auto& q : scaled.peaks) q.intensity *= k;
    const Vector a = fingerprint_eval(w, grid), b = fingerprint_eval(scaled, grid);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_GT(a[i], 0.0);
      ASSERT_NEAR(b[i], k * a[i], 1e-13 * b[i]);
    }
  }
}

TEST(RateMatrix, PaperMatrixAccepted) { EXPECT_NO_THROW(validate_rate_matrix(test_support::reference_k())); }

TEST(RateMatrix, ViolationsNamed) {
  Matrix k = test_support::reference_k();
  k(1, 0) = -0.53;
  try {
    validate_rate_matrix(k);
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("negative off-diagonal (2,1)"), std::string::npos) << e.what();
  }
  Matrix d = test_support::reference_k();
  d(0, 0) = 0.1;
  EXPECT_THROW(validate_rate_matrix(d), ValidationError);
  Matrix s = test_support::reference_k();
  s(1, 0) = 0.5;
  try {
    validate_rate_matrix(s);
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("column 1"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(validate_rate_matrix(Matrix(3, 3)));
  EXPECT_THROW(validate_rate_matrix(Matrix(2, 3)), ValidationError);
}

TEST(Network, InitialCompositionChecked) {
  const RateMatrix k = validate_rate_matrix(Matrix(2, 2));
  EXPECT_THROW(ReactionNetwork(k, {0.5, 0.4}), ValidationError);
  EXPECT_THROW(ReactionNetwork(k, {1.5, -0.5}), ValidationError);
  EXPECT_THROW(ReactionNetwork(k, {1.0}), ValidationError);
}

TEST(TimeGrid, Invariants) {
  EXPECT_THROW(TimeGrid({0.0}), ValidationError);
  EXPECT_THROW(TimeGrid({0.1, 1.0}), ValidationError);
  EXPECT_THROW(TimeGrid({0.0, 1.0, 1.0}), ValidationError);
  const TimeGrid g = TimeGrid::uniform(20, 100);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g.duration(), 20.0);
  EXPECT_DOUBLE_EQ(g.scaled(10)[99], 200.0);
}

TEST(Propagate, TimeZeroReturnsInitial) {
  const ReactionNetwork net = test_support::reference_network();
  const Vector h = propagate(net, 0.0);
  EXPECT_EQ(h, Vector(net.h0().begin(), net.h0().end()));
  EXPECT_THROW(propagate(net, -1.0), ValidationError);
}

TEST(Propagate, LongHorizonEndsInAbsorbingSpecies) {
  const ReactionNetwork net = test_support::reference_network();
  const Vector h = propagate(net, 1e4);
  const Vector ref = oracle::integrate_linear_ode(net.rates().matrix(), net.h0(), 1e4, 1e-10);
  const Vector expected{0, 0, 0, 1, 0};
  for (std::size_t s = 0; s < 5; ++s) {
    EXPECT_NEAR(h[s], expected[s], 1e-9);
    EXPECT_NEAR(ref[s], expected[s], 1e-6);
  }
}

TEST(Discretize, TwoPointsAndInertNetwork) {
  const ReactionNetwork net = test_support::reference_network();
  const KineticsMatrix h = discretize_kinetics(net, TimeGrid({0.0, 3.0}));
  EXPECT_EQ(h.h.column(0), Vector(net.h0().begin(), net.h0().end()));
  EXPECT_EQ(h.h.column(1), propagate(net, 3.0));
  const ReactionNetwork inert(validate_rate_matrix(Matrix(3, 3)), {0.2, 0.3, 0.5});
  const KineticsMatrix hi = discretize_kinetics(inert, TimeGrid::uniform(5, 7));
  for (std::size_t j = 0; j < 7; ++j) {
    for (std::size_t s = 0; s < 3; ++s) EXPECT_NEAR(hi.h(s, j), inert.h0()[s], 1e-15);
  }
}

TEST(Discretize, PaperNetworkMatchesOdeAndAbsorbingRowMonotone) {
  const ReactionNetwork net = test_support::reference_network();
  const TimeGrid grid = TimeGrid::uniform(20, 100);
  const KineticsMatrix h = discretize_kinetics(net, grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Vector ref = oracle::integrate_linear_ode(net.rates().matrix(), net.h0(), grid[j]);
    for (std::size_t s = 0; s < 5; ++s) ASSERT_NEAR(h.h(s, j), ref[s], 1e-6);
    if (j > 0) {
      EXPECT_GE(h.h(3, j), h.h(3, j - 1));
      EXPECT_LE(h.h(0, j), h.h(0, j - 1));
    }
  }
}

TEST(KineticsProperty, ConservationNonNegativityAndOde) {
  oracle::Rng rng(41);
  for (int c = 0; c < 120; ++c) {
    const std::size_t r = 1 + rng.index(6);
    const Matrix k = rng.rate_matrix(r, 2.0);
    const ReactionNetwork net(validate_rate_matrix(k), rng.simplex(r));
    const double t_end = rng.uniform(0.1, 20);
    const TimeGrid grid = TimeGrid::uniform(t_end, 12);
    const KineticsMatrix h = discretize_kinetics(net, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      double sum = 0.0;
      for (std::size_t s = 0; s < r; ++s) {
        ASSERT_GE(h.h(s, j), 0.0);
        sum += h.h(s, j);
      }
      ASSERT_NEAR(sum, 1.0, 1e-9);
      // Pre-clamp values stay above -1e-9.
      const Vector raw = propagate_unchecked(k, net.h0(), grid[j]);
      for (double v : raw) ASSERT_GE(v, -1e-9);
    }
    const Vector ref = oracle::integrate_linear_ode(k, net.h0(), t_end);
    for (std::size_t s = 0; s < r; ++s) ASSERT_NEAR(h.h(s, grid.size() - 1), ref[s], 1e-6) << "case " << c;
  }
}

TEST(KineticsProperty, Semigroup) {
  oracle::Rng rng(42);
  for (int c = 0; c < 120; ++c) {
    const std::size_t r = 2 + rng.index(5);
    const Matrix k = rng.rate_matrix(r, 1.5);
    const ReactionNetwork net(validate_rate_matrix(k), rng.simplex(r));
    const double s = rng.uniform(0, 5), t = rng.uniform(0, 5);
    const Vector lhs = propagate(net, s + t);
    const Vector pt = propagate(net, t);
    const Vector rhs = expm(s * Matrix(k)) * std::span<const double>(pt);
    for (std::size_t i = 0; i < r; ++i) ASSERT_NEAR(lhs[i], rhs[i], 1e-8) << "case " << c;
  }
}
