#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "evdom/errors.hpp"
#include "evdom/fixtures.hpp"
#include "evdom/linalg.hpp"
#include "evdom/operators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace evdom {
namespace {

constexpr double kPi = std::numbers::pi;

Matrix random_matrix(std::mt19937_64& rng, int n, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = d(rng);
  }
  return a;
}

TEST(WeightVector, RejectsNonPositive) {
  EXPECT_THROW(WeightVector(Vector::Zero(2)), Error);
  Vector w(2);
  w << 1.0, -1.0;
  EXPECT_THROW(WeightVector{w}, Error);
}

TEST(EigWeightedSymmetric, DiagonalCase) {
  Matrix a = Matrix::Zero(3, 3);
  a(1, 1) = -1.0;
  a(2, 2) = -1.0;
  const auto eig = eig_weighted_symmetric(a, WeightVector::ones(3));
  EXPECT_NEAR(eig.values[0], 0.0, 1e-14);
  EXPECT_NEAR(eig.values[1], -1.0, 1e-14);
  EXPECT_NEAR(eig.values[2], -1.0, 1e-14);
  EXPECT_NEAR(std::abs(eig.vectors(0, 0)), 1.0, 1e-14);
}

TEST(EigWeightedSymmetric, SymmetrizedRotatingFixture) {
  const Generator a = fixture("ex35A");
  const auto eig = eig_weighted_symmetric(a.matrix, *a.weight);
  EXPECT_NEAR(eig.values[0], 0.0, 1e-12);
  EXPECT_NEAR(eig.values[1], -1.0, 1e-12);
  EXPECT_NEAR(eig.values[2], -1.0, 1e-12);
  const Vector top = eig.vectors.col(0) * (eig.vectors(0, 0) > 0 ? 1.0 : -1.0);
  EXPECT_LE((top - Vector::Constant(3, 1.0 / std::sqrt(3.0))).norm(), 1e-12);
}

TEST(EigWeightedSymmetric, MixedIntervalMatchesSturmOracle) {
  IntervalSpec spec;
  spec.n = 200;
  spec.bc = BoundaryCondition::kMixedDN;
  const Generator g = assemble_interval(spec);
  const auto eig = eig_weighted_symmetric(g.matrix, *g.weight);
  EXPECT_NEAR(eig.values[0], -kPi * kPi / 4, 1e-3 * kPi * kPi / 4);
  const auto ref = oracle::weighted_tridiagonal_eigenvalues(g.matrix, g.weight->values());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    EXPECT_NEAR(eig.values[k], ref[static_cast<std::size_t>(k)],
                1e-9 * (1.0 + std::abs(ref[static_cast<std::size_t>(k)])));
  }
}

TEST(EigWeightedSymmetric, OrthonormalAndSmallResidual) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 9;
    Vector w(n);
    for (int i = 0; i < n; ++i) w[i] = 0.5 + (i % 3);
    const Matrix s = random_matrix(rng, n);
    const Matrix a = w.cwiseInverse().asDiagonal() * (s + s.transpose());
    const WeightVector wv(w);
    const auto eig = eig_weighted_symmetric(a, wv);
    const Matrix gram = eig.vectors.transpose() * w.asDiagonal() * eig.vectors;
    EXPECT_LE(max_abs(gram - Matrix::Identity(n, n)), 1e-10);
    EXPECT_LE(eig.residual, 1e-8 * (1.0 + eig.values.cwiseAbs().maxCoeff()));
  }
}

TEST(EigWeightedSymmetric, RejectsNonSymmetric) {
  Matrix a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_EVDOM_ERROR(eig_weighted_symmetric(a, WeightVector::ones(2)), ErrorCode::kNotSelfAdjoint);
}

TEST(GeneralSpectrum, RotatingFixture) {
  const auto gs = general_spectrum(fixture("ex35B").matrix);
  ASSERT_EQ(gs.values.size(), 3u);
  EXPECT_LE(std::abs(gs.values[0] - Complex(0, 0)), 1e-9);
  EXPECT_LE(std::abs(gs.values[1] - Complex(-1, 1)), 1e-9);
  EXPECT_LE(std::abs(gs.values[2] - Complex(-1, -1)), 1e-9);
}

TEST(GeneralSpectrum, Diagonal) {
  Vector d(4);
  d << 3, -1, 0.5, 2;
  const auto gs = general_spectrum(d.asDiagonal().toDenseMatrix());
  EXPECT_NEAR(gs.values[0].real(), 3, 1e-14);
  EXPECT_NEAR(gs.values[1].real(), 2, 1e-14);
  EXPECT_NEAR(gs.values[2].real(), 0.5, 1e-14);
  EXPECT_NEAR(gs.values[3].real(), -1, 1e-14);
}

TEST(GeneralSpectrum, MatchesCharacteristicPolynomialRoots) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(rng, 6);
    const auto gs = general_spectrum(a);
    const auto roots = oracle::polynomial_roots(oracle::charpoly(a));
    std::vector<Complex> left(roots.begin(), roots.end());
    for (const auto& v : gs.values) {
      auto best = left.begin();
      for (auto it = left.begin(); it != left.end(); ++it) {
        if (std::abs(*it - v) < std::abs(*best - v)) best = it;
      }
      EXPECT_LE(std::abs(*best - v), 1e-7) << "trial " << trial;
      left.erase(best);
    }
  }
}

TEST(Expm, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(5);
  const Matrix a = random_matrix(rng, 5);
  EXPECT_EQ(expm(a, 0.0), Matrix::Identity(5, 5));
}

TEST(Expm, ProjectionClosedForm) {
  const Generator a = fixture("ex34A");
  const Matrix p = a.matrix + Matrix::Identity(2, 2);
  for (double t : {0.5, 1.0, 5.0}) {
    EXPECT_LE(max_abs(expm(a.matrix, t) - oracle::projection_semigroup(p, t)), 1e-10);
  }
}

TEST(Expm, MatchesTaylorOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(rng, 4);
    const Matrix ref = oracle::taylor_expm(a, 0.3);
    EXPECT_LE(max_abs(expm(a, 0.3) - ref), 1e-9 * std::max(1.0, max_abs(ref)));
  }
}

TEST(Expm, RotatingClosedForm) {
  const Matrix u = ex35_basis();
  const Matrix b = fixture("ex35B").matrix;
  for (double t : {0.3, 2.0, 1.5 * kPi}) {
    EXPECT_LE(max_abs(expm(b, t) - oracle::rotating_semigroup(u, t)), 1e-10);
  }
}

TEST(Expm, OverflowIsReported) {
  Matrix a(1, 1);
  a << 1.0;
  EXPECT_EVDOM_ERROR(expm(a, 1e4), ErrorCode::kOverflow);
}

TEST(ExpmSpectral, AgreesWithPade) {
  IntervalSpec spec;
  spec.n = 40;
  spec.bc = BoundaryCondition::kNonLocalRobin;
  const Generator g = assemble_interval(spec);
  const auto eig = eig_weighted_symmetric(g.matrix, *g.weight);
  for (double t : {0.01, 0.1, 1.0}) {
    const Matrix pade = expm(g.matrix, t);
    EXPECT_LE(max_abs(expm_spectral(eig, t) - pade), 1e-8 * std::max(1.0, max_abs(pade)));
  }
}

TEST(LinalgProperties, SemigroupLaw) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> time(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_matrix(rng, 1 + trial % 12);
    const double s = time(rng);
    const double t = time(rng);
    const Matrix whole = expm(a, s + t);
    const double inf = whole.cwiseAbs().rowwise().sum().maxCoeff();
    const Matrix diff = whole - expm(a, s) * expm(a, t);
    EXPECT_LE(diff.cwiseAbs().rowwise().sum().maxCoeff(), 1e-8 * inf);
  }
}

TEST(LinalgProperties, ShiftCovariance) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 8;
    const Matrix a = random_matrix(rng, n);
    const auto base = general_spectrum(a).values;
    for (double alpha : {-3.0, 0.5, 10.0}) {
      const auto moved = general_spectrum(a + alpha * Matrix::Identity(n, n)).values;
      double top_base = base[0].real();
      double top_moved = moved[0].real();
      EXPECT_NEAR(top_moved, top_base + alpha, 1e-9 * (1.0 + std::abs(alpha)));
    }
  }
}

}  // namespace
}  // namespace evdom
