#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lzep/analytic.hpp"
#include "lzep/combinatorics.hpp"
#include "lzep/errors.hpp"
#include "lzep/model.hpp"
#include "lzep/repr_lift.hpp"
#include "oracles.hpp"

using namespace lzep;

namespace {
// High-precision reference values, evaluated independently at 30 digits.
constexpr double kExpMinusPi = 0.0432139182637722497744;
constexpr double kPt2P00 = 0.511042065013419650446;
constexpr double kPt2P01 = 0.488957934986580349554;
constexpr double kPt3Column0[] = {0.26116399221318024, 0.49975614560047883, 0.23907986218634094};
constexpr double kHerm3M[3][3] = {
    {0.04321391826377225, 0.32933131617397932, 0.62745476556224843},
    {0.32933131617397932, 0.34133736765204136, 0.32933131617397932},
    {0.62745476556224843, 0.32933131617397932, 0.04321391826377225},
};

double max_abs(const RealMatrix& m) { return m.cwiseAbs().maxCoeff(); }

RealMatrix squared_moduli(const OperatorMatrix& m) { return m.cwiseAbs2(); }
}  // namespace

TEST(LZ2, Survival) {
  EXPECT_EQ(lz2_survival(0.0, 1.0), 1.0);
  EXPECT_NEAR(lz2_survival(1.0, 1.0), kExpMinusPi, 1e-16);
  EXPECT_NEAR(lz2_survival(1.0, 1e12), 1.0, 1e-11);
  EXPECT_THROW(lz2_survival(1.0, 0.0), InvalidParameter);
}

TEST(HermitianM, TwoLevel) {
  const TransitionMatrix m = hermitian_M(SpinSpace(2), 1.0, 1.0);
  EXPECT_EQ(m.flavor, Flavor::RawM);
  EXPECT_NEAR(m(0, 0), kExpMinusPi, 1e-15);
  EXPECT_NEAR(m(1, 1), kExpMinusPi, 1e-15);
  EXPECT_NEAR(m(0, 1), 1.0 - kExpMinusPi, 1e-15);
  EXPECT_NEAR(m(1, 0), 1.0 - kExpMinusPi, 1e-15);
}

TEST(HermitianM, ThreeLevelReference) {
  const TransitionMatrix m = hermitian_M(SpinSpace(3), 1.0, 2.0);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(m(j, k), kHerm3M[j][k], 1e-14) << j << k;
  const double a = std::exp(-kPi / 2.0), b = 1.0 - a;
  EXPECT_NEAR(m(0, 0), a * a, 1e-15);
  EXPECT_NEAR(m(1, 0), 2 * a * b, 1e-15);
  EXPECT_NEAR(m(2, 0), b * b, 1e-15);
}

TEST(HermitianM, DoublyStochasticAndSymmetric) {
  for (int dim = 2; dim <= 12; ++dim) {
    for (double alpha : {0.05, 0.4, 1.0, 3.0, 50.0}) {
      const TransitionMatrix m = hermitian_M(SpinSpace(dim), 1.0, alpha);
      EXPECT_LT((m.entries.colwise().sum().array() - 1.0).abs().maxCoeff(), 1e-10);
      EXPECT_LT((m.entries.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-10);
      EXPECT_TRUE(m.entries == m.entries.transpose());
      EXPECT_GE(m.entries.minCoeff(), 0.0);
      // Already stochastic: normalization leaves it alone.
      EXPECT_LT(max_abs(normalize(m).entries - m.entries), 1e-10);
    }
  }
}

TEST(HermitianM, EqualsSquaredModuliOfLiftedPropagator) {
  for (int dim = 2; dim <= 8; ++dim) {
    for (double alpha : {0.3, 1.0, 4.0}) {
      const double a = lz2_survival(1.0, alpha);
      OperatorMatrix u(2, 2);
      u << std::sqrt(a), std::sqrt(1 - a), -std::sqrt(1 - a), std::sqrt(a);
      const RealMatrix ref = squared_moduli(lift(u, SpinSpace(dim)));
      EXPECT_LT(max_abs(hermitian_M(SpinSpace(dim), 1.0, alpha).entries - ref), 1e-12) << dim;
    }
  }
}

TEST(HermitianM, AdiabaticLimitSwapsLevels) {
  const TransitionMatrix m = hermitian_M(SpinSpace(5), 1.0, 1e-3);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(m(j, 0), j == 4 ? 1.0 : 0.0, 1e-12);
}

TEST(PtM, TwoLevelShape) {
  const double r = pt_ratio(1.0, 1.0);
  EXPECT_NEAR(r, 1.0 - kExpMinusPi, 1e-15);
  const TransitionMatrix m = pt_M(SpinSpace(2), 1.0, 1.0);
  EXPECT_DOUBLE_EQ(m(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(m(1, 1), 1.0);
  EXPECT_NEAR(m(0, 1), r, 1e-15);
  EXPECT_NEAR(m(1, 0), r, 1e-15);
}

TEST(PtM, CornerIsUnitAndSymmetricExactly) {
  for (int dim = 2; dim <= 12; ++dim) {
    const TransitionMatrix m = pt_M(SpinSpace(dim), 1.0, 0.7);
    EXPECT_EQ(m(0, 0), 1.0);
    EXPECT_TRUE(m.entries == m.entries.transpose());
    // Reflection through the centre of the ladder.
    const int n = dim - 1;
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k) EXPECT_NEAR(m(j, k), m(n - j, n - k), 1e-12 * m(j, k));
  }
}

TEST(PtM, EqualsScaledSquaredModuliOfLift) {
  // Same double sum without alternating signs: |D(u)|^2 with u real symmetric,
  // rescaled to unit determinant.
  for (int dim = 2; dim <= 8; ++dim) {
    for (double alpha : {0.5, 2.0, 8.0}) {
      const double r = pt_ratio(1.0, alpha);
      const double s = std::sqrt(r);
      OperatorMatrix u(2, 2);
      u << 1.0, s, s, 1.0;
      u /= std::sqrt(1.0 - r);
      const RealMatrix ref = squared_moduli(lift(u, SpinSpace(dim))) * std::pow(1.0 - r, dim - 1);
      const TransitionMatrix m = pt_M(SpinSpace(dim), 1.0, alpha);
      EXPECT_LT(max_abs(m.entries - ref) / max_abs(ref), 1e-10) << dim << " " << alpha;
    }
  }
}

TEST(PtM, WeakCouplingIsIdentity) {
  const TransitionMatrix p = normalize(pt_M(SpinSpace(5), 1e-6, 1.0));
  EXPECT_LT(max_abs(p.entries - RealMatrix::Identity(5, 5)), 1e-10);
}

TEST(Normalize, TwoLevelPt) {
  const TransitionMatrix p = normalize(pt_M(SpinSpace(2), 1.0, 1.0));
  EXPECT_EQ(p.flavor, Flavor::NormalizedP);
  EXPECT_NEAR(p(0, 0), kPt2P00, 1e-15);
  EXPECT_NEAR(p(1, 0), kPt2P01, 1e-15);
  EXPECT_NEAR(p(0, 0), 1.0 / (2.0 - kExpMinusPi), 1e-15);
  const double e = std::exp(-kPi / 3.0);
  const TransitionMatrix q = normalize(pt_M(SpinSpace(2), 1.0, 3.0));
  EXPECT_NEAR(q(0, 1), (1 - e) / (2 - e), 1e-15);
}

TEST(Normalize, ScaleInvariantAndErrors) {
  TransitionMatrix m = pt_M(SpinSpace(4), 0.9, 1.3);
  TransitionMatrix scaled = m;
  scaled.entries *= 37.5;
  EXPECT_LT(max_abs(normalize(m).entries - normalize(scaled).entries), 1e-15);
  EXPECT_EQ(normalize(normalize(m)).entries, normalize(m).entries);

  TransitionMatrix zero{RealMatrix::Zero(3, 3), Flavor::RawM};
  EXPECT_THROW(normalize(zero), DegenerateNormalization);
  TransitionMatrix lopsided{RealMatrix::Identity(2, 2), Flavor::RawM};
  lopsided.entries(0, 1) = 0.5;
  EXPECT_THROW(normalize(lopsided), InvalidParameter);
}

TEST(PtColumn0, ReferenceValues) {
  const RealVector c3 = pt_P_column0(SpinSpace(3), 1.0, 1.0);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(c3(j), kPt3Column0[j], 1e-15);
  const double r = 1.0 - kExpMinusPi;
  EXPECT_NEAR(c3(0), 1.0 / ((1 + r) * (1 + r)), 1e-15);
  const RealVector c2 = pt_P_column0(SpinSpace(2), 1.0, 1.0);
  EXPECT_NEAR(c2(0), kPt2P00, 1e-15);
}

TEST(PtColumn0, MatchesNormalizedMatrix) {
  for (int dim = 2; dim <= 12; ++dim)
    for (double alpha : {0.05, 0.3, 1.0, 5.0, 100.0}) {
      const RealVector col = pt_P_column0(SpinSpace(dim), 1.0, alpha);
      const TransitionMatrix p = normalize(pt_M(SpinSpace(dim), 1.0, alpha));
      EXPECT_LT((col - p.entries.col(0)).cwiseAbs().maxCoeff(), 1e-13) << dim << " " << alpha;
    }
}

TEST(AnalyticMatrix, DispatchesByKind) {
  const TransitionMatrix h = analytic_transition_matrix(ModelParams::hermitian(2, 1.0, 1.0));
  EXPECT_NEAR(h(0, 0), kExpMinusPi, 1e-15);
  const TransitionMatrix p = analytic_transition_matrix(ModelParams::pt_symmetric(2, 1.0, 1.0));
  EXPECT_NEAR(p(0, 0), kPt2P00, 1e-15);
  EXPECT_EQ(p.flavor, Flavor::NormalizedP);
}

TEST(Adiabatic, BinomialWeights) {
  const RealVector p3 = adiabatic_P(SpinSpace(3));
  EXPECT_EQ(p3(0), 0.25);
  EXPECT_EQ(p3(1), 0.5);
  EXPECT_EQ(p3(2), 0.25);
  const RealVector p6 = adiabatic_P(SpinSpace(6));
  const double expected[] = {1, 5, 10, 10, 5, 1};
  for (int k = 0; k < 6; ++k) EXPECT_EQ(p6(k), expected[k] / 32.0);
  const RealVector p2 = adiabatic_P(SpinSpace(2));
  EXPECT_EQ(p2(0), 0.5);
  EXPECT_EQ(p2(1), 0.5);
}

TEST(Adiabatic, ExactRationals) {
  const auto p4 = adiabatic_P_exact(SpinSpace(4));
  ASSERT_EQ(p4.size(), 4u);
  EXPECT_EQ(p4[0], (Rational{1, 8}));
  EXPECT_EQ(p4[1], (Rational{3, 8}));
  EXPECT_EQ(p4[2], (Rational{3, 8}));
  EXPECT_EQ(p4[3], (Rational{1, 8}));
  const auto p3 = adiabatic_P_exact(SpinSpace(3));
  EXPECT_EQ(p3[1], (Rational{1, 2}));
  for (int dim = 2; dim <= 10; ++dim) {
    const auto p = adiabatic_P_exact(SpinSpace(dim));
    const int n = dim - 1;
    std::uint64_t sum_scaled = 0;
    for (int k = 0; k <= n; ++k) {
      // In lowest terms the denominator is a power of two dividing 2^n.
      EXPECT_EQ((std::uint64_t{1} << n) % p[k].den, 0u);
      EXPECT_TRUE(p[k].num % 2 == 1 || p[k].den == 1);
      sum_scaled += p[k].num * ((std::uint64_t{1} << n) / p[k].den);
      EXPECT_EQ(p[k].num * ((std::uint64_t{1} << n) / p[k].den), comb::binomial_u64(n, k));
    }
    EXPECT_EQ(sum_scaled, std::uint64_t{1} << n);
  }
}

TEST(Adiabatic, EveryColumnConvergesToBinomial) {
  for (int dim = 2; dim <= 10; ++dim) {
    const double gamma = 1.0;
    const TransitionMatrix p = normalize(pt_M(SpinSpace(dim), gamma, gamma * gamma / 20.0));
    const RealVector target = adiabatic_P(SpinSpace(dim));
    for (int k = 0; k < dim; ++k) EXPECT_LT((p.entries.col(k) - target).cwiseAbs().maxCoeff(), 1e-3);
  }
}

TEST(Quench, BothModelsApproachIdentity) {
  for (int dim = 2; dim <= 6; ++dim) {
    const RealMatrix id = RealMatrix::Identity(dim, dim);
    EXPECT_LT(max_abs(analytic_transition_matrix(ModelParams::pt_symmetric(dim, 1e6, 1.0)).entries - id), 1e-4);
    EXPECT_LT(max_abs(analytic_transition_matrix(ModelParams::hermitian(dim, 1e6, 1.0)).entries - id), 1e-4);
  }
}

TEST(ChuVandermonde, HoldsThroughTwelve) { EXPECT_TRUE(chu_vandermonde_holds(12)); }

TEST(AdiabaticProjection, NormalizedIsBinomial) {
  for (int dim = 2; dim <= 10; ++dim) {
    const ModelParams p = ModelParams::pt_symmetric(dim, 1.0, 1.0);
    for (double t : {1.01, 2.0, 50.0}) {
      const AdiabaticProjection proj = adiabatic_projection(p, t);
      EXPECT_LT((proj.normalized - adiabatic_P(p.space)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT(proj.x.real(), 0.0);
      EXPECT_EQ(proj.x.imag(), 0.0);
    }
  }
  const AdiabaticProjection two = adiabatic_projection(ModelParams::pt_symmetric(2, 1.0, 1.0), 3.0);
  EXPECT_EQ(two.raw(0), two.raw(1));
}

TEST(AdiabaticProjection, MatchesInnerProducts) {
  for (int dim = 2; dim <= 6; ++dim) {
    const ModelParams p = ModelParams::pt_symmetric(dim, 1.0, 1.0);
    const EPData ep = ep_data(p);
    for (double t : {1.5, 4.0}) {
      const AdiabaticProjection proj = adiabatic_projection(p, t);
      const EigenSystem es = eigensystem_at(p, t);
      for (int j = 0; j < dim; ++j) {
        const double c2 = std::norm(es.left_vectors.col(j).dot(ep.ep_vector_plus));
        EXPECT_NEAR(c2, proj.raw(j), 1e-8) << dim << " " << j;
      }
    }
  }
}

TEST(AdiabaticProjection, Errors) {
  EXPECT_THROW(adiabatic_projection(ModelParams::pt_symmetric(3, 1.0, 1.0), 1.0), InvalidParameter);
  EXPECT_THROW(adiabatic_projection(ModelParams::pt_symmetric(3, 1.0, 1.0), 0.2), InvalidParameter);
  EXPECT_THROW(adiabatic_projection(ModelParams::hermitian(3, 1.0, 1.0), 2.0), NoExceptionalPoint);
}
