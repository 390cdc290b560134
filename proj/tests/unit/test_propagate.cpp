#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "lzep/analytic.hpp"
#include "lzep/errors.hpp"
#include "lzep/propagate.hpp"
#include "oracles.hpp"

using namespace lzep;

namespace {
const Complex I(0.0, 1.0);

StateVector basis(int dim, int k) { return StateVector::Unit(dim, k); }

// Unnormalized final amplitude exp(log_norm) * final_state.
StateVector amplitude(const PropagationResult& r) { return std::exp(r.log_norm) * r.final_state; }
}  // namespace

TEST(Config, Validation) {
  IntegratorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.rel_tol = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidParameter);
  cfg = {};
  cfg.renorm_threshold = 0.5;
  EXPECT_THROW(cfg.validate(), InvalidParameter);
  cfg = {};
  cfg.max_doublings = -1;
  EXPECT_THROW(cfg.validate(), InvalidParameter);

  const ModelParams p = ModelParams::hermitian(2, 1.0, 1.0);
  EXPECT_THROW(evolve(p, basis(3, 0), -1.0, 1.0), InvalidDimension);
  EXPECT_THROW(evolve(p, StateVector::Zero(2), -1.0, 1.0), InvalidParameter);
  EXPECT_THROW(evolve(p, basis(2, 0), 1.0, 1.0), InvalidParameter);
  EXPECT_THROW(numeric_transition_column(p, 2), IndexOutOfRange);
}

TEST(Evolve, DiagonalHamiltonianKeepsBasisState) {
  const ModelParams p = ModelParams::hermitian(4, 1.0, 0.0);
  for (int k = 0; k < 4; ++k) {
    const PropagationResult r = evolve(p, basis(4, k), -10.0, 7.0);
    EXPECT_NEAR(std::abs(r.final_state(k)), 1.0, 1e-12);
    EXPECT_NEAR(r.final_state.norm(), 1.0, 1e-12);
    EXPECT_NEAR(r.log_norm, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.t_final, 7.0);
  }
}

TEST(Evolve, DiagonalHamiltonianPhase) {
  // H = -2 alpha t J_z: psi_0(t) = exp(i alpha J (t^2 - t0^2)) psi_0(t0).
  const ModelParams p = ModelParams::hermitian(3, 0.5, 0.0);
  const PropagationResult r = evolve(p, basis(3, 0), -2.0, 3.0);
  const Complex expected = std::exp(I * 0.5 * 1.0 * (9.0 - 4.0));
  EXPECT_LT(std::abs(r.final_state(0) - expected), 1e-9);
}

TEST(Evolve, HermitianNormConserved) {
  for (int dim : {2, 3, 5}) {
    const ModelParams p = ModelParams::hermitian(dim, 0.8, 1.0);
    for (double t1 : {-3.0, 0.0, 2.0, 20.0}) {
      const PropagationResult r = evolve(p, basis(dim, 0), -20.0, t1);
      EXPECT_LT(std::abs(std::exp(r.log_norm) * r.final_state.norm() - 1.0), 1e-8) << dim << " " << t1;
    }
  }
}

TEST(Evolve, ForwardBackwardRoundTrip) {
  for (const ModelParams& p : {ModelParams::hermitian(3, 1.0, 1.0), ModelParams::pt_symmetric(3, 1.0, 0.7),
                               ModelParams::pt_symmetric(2, 1.0, 1.0)}) {
    StateVector psi0(p.space.levels());
    psi0.setZero();
    psi0(0) = Complex(0.6, 0.1);
    psi0(1) = Complex(-0.2, 0.5);
    const PropagationResult fwd = evolve(p, psi0, -6.0, 5.0);
    const PropagationResult back = evolve(p, amplitude(fwd), 5.0, -6.0);
    EXPECT_DOUBLE_EQ(back.t_final, -6.0);
    EXPECT_LT((amplitude(back) - psi0).norm() / psi0.norm(), 1e-6) << to_string(p.kind);
  }
}

TEST(Evolve, Linearity) {
  const ModelParams p = ModelParams::pt_symmetric(4, 1.0, 1.0);
  const StateVector psi0 = basis(4, 1);
  const Complex c(3.0, -4.0);
  const PropagationResult a = evolve(p, psi0, -8.0, 8.0);
  const PropagationResult b = evolve(p, c * psi0, -8.0, 8.0);
  EXPECT_NEAR(b.log_norm - a.log_norm, std::log(std::abs(c)), 1e-8);
  EXPECT_LT((b.final_state - (c / std::abs(c)) * a.final_state).norm(), 1e-8);
}

TEST(Evolve, Superposition) {
  const ModelParams p = ModelParams::pt_symmetric(3, 0.7, 1.0);
  const Complex c0(0.3, 0.4), c2(-1.2, 0.5);
  const PropagationResult r0 = evolve(p, basis(3, 0), -10.0, 10.0);
  const PropagationResult r2 = evolve(p, basis(3, 2), -10.0, 10.0);
  const PropagationResult rs = evolve(p, c0 * basis(3, 0) + c2 * basis(3, 2), -10.0, 10.0);
  const StateVector combined = c0 * amplitude(r0) + c2 * amplitude(r2);
  EXPECT_LT((amplitude(rs) - combined).norm() / combined.norm(), 1e-6);
}

TEST(Evolve, NormStrippingKeepsAmplitudesFinite) {
  // Between the exceptional points the norm grows; a low threshold forces
  // many strips, which must not change the answer.
  const ModelParams p = ModelParams::pt_symmetric(4, 0.2, 1.0);
  IntegratorConfig loose;
  IntegratorConfig tight;
  tight.renorm_threshold = 1.5;
  const PropagationResult a = evolve(p, basis(4, 0), -20.0, 20.0, loose);
  const PropagationResult b = evolve(p, basis(4, 0), -20.0, 20.0, tight);
  EXPECT_GT(a.log_norm, 1.0);
  EXPECT_NEAR(a.log_norm, b.log_norm, 1e-6 * a.log_norm);
  EXPECT_LT((a.final_state - b.final_state).norm(), 1e-6);
}

TEST(Evolve, ConvergesMonotonicallyInTolerance) {
  const ModelParams p = ModelParams::hermitian(3, 1.0, 1.0);
  IntegratorConfig ref_cfg;
  ref_cfg.rel_tol = 1e-13;
  ref_cfg.abs_tol = 1e-15;
  const StateVector ref = amplitude(evolve(p, basis(3, 0), -10.0, 10.0, ref_cfg));
  double previous = INFINITY;
  for (double tol = 1e-5; tol > 1e-9; tol /= 2.0) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-2;
    const double dev = (amplitude(evolve(p, basis(3, 0), -10.0, 10.0, cfg)) - ref).norm();
    EXPECT_LT(dev, previous) << tol;
    previous = dev;
  }
}

TEST(Evolve, StepLimitRaisesIntegrationFailure) {
  const ModelParams p = ModelParams::pt_symmetric(3, 1.0, 1.0);
  IntegratorConfig cfg;
  cfg.max_steps = 50;
  try {
    evolve(p, basis(3, 0), -50.0, 50.0, cfg);
    FAIL() << "expected IntegrationFailure";
  } catch (const IntegrationFailure& e) {
    EXPECT_GT(e.last_good_t(), -50.0);
    EXPECT_LT(e.last_good_t(), 50.0);
  }
}

TEST(NumericColumn, TwoLevelHermitianMatchesLZ) {
  const NumericColumn col = numeric_transition_column(ModelParams::hermitian(2, 1.0, 1.0), 0);
  EXPECT_NEAR(col.populations(0), lz2_survival(1.0, 1.0), 1e-3);
  EXPECT_NEAR(col.populations.sum(), 1.0, 1e-12);
  EXPECT_GT(col.span, 0.0);
  EXPECT_LT(col.last_change, 1e-4);
}

TEST(NumericColumn, TwoLevelPtMatchesAnalytic) {
  const NumericColumn col = numeric_transition_column(ModelParams::pt_symmetric(2, 1.0, 1.0), 0);
  EXPECT_NEAR(col.populations(0), 0.511042065013419650446, 1e-3);
  EXPECT_NEAR(col.populations(1), 0.488957934986580349554, 1e-3);
}

TEST(NumericColumn, DiabaticProjectionAgreesAsymptotically) {
  IntegratorConfig cfg;
  cfg.basis = AsymptoticBasis::Diabatic;
  const NumericColumn col = numeric_transition_column(ModelParams::pt_symmetric(3, 1.0, 1.0), 0, cfg);
  const RealVector ref = pt_P_column0(SpinSpace(3), 1.0, 1.0);
  EXPECT_LT((col.populations - ref).cwiseAbs().maxCoeff(), 1e-2);
}

TEST(NumericMatrix, PtReflectionSymmetry) {
  const ModelParams p = ModelParams::pt_symmetric(3, 1.0, 1.0);
  const TransitionMatrix m = numeric_transition_matrix(p);
  EXPECT_EQ(m.flavor, Flavor::NormalizedP);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(m(j, k), m(2 - j, 2 - k), 1e-3);
  const TransitionMatrix a = analytic_transition_matrix(p);
  EXPECT_LT((m.entries - a.entries).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(NumericMatrix, HermitianThreeLevel) {
  const ModelParams p = ModelParams::hermitian(3, 2.0, 1.0);
  const TransitionMatrix m = numeric_transition_matrix(p);
  const TransitionMatrix a = analytic_transition_matrix(p);
  EXPECT_LT((m.entries - a.entries).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Sweep, RowsCarryAnalyticAndNumeric) {
  const ModelParams base = ModelParams::pt_symmetric(2, 1.0, 1.0);
  const std::vector<double> alphas{0.5, 2.0};
  const std::vector<int> cols{0};
  const auto rows = alpha_sweep(base, alphas, {}, cols);
  ASSERT_EQ(rows.size(), 2u);
  for (const SweepRow& row : rows) {
    EXPECT_TRUE(row.ok) << row.status;
    EXPECT_EQ(row.status, "ok");
    EXPECT_LT(row.max_deviation, 1e-3);
    EXPECT_TRUE(std::isnan(row.numeric(0, 1)));
    EXPECT_FALSE(std::isnan(row.numeric(0, 0)));
  }
  EXPECT_DOUBLE_EQ(rows[1].alpha, 2.0);
}

TEST(Sweep, FailuresAreRecordedPerRow) {
  IntegratorConfig cfg;
  cfg.max_steps = 10;
  const std::vector<double> alphas{1.0};
  const auto rows = alpha_sweep(ModelParams::hermitian(2, 1.0, 1.0), alphas, cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].ok);
  EXPECT_NE(rows[0].status, "ok");
  EXPECT_NEAR(rows[0].analytic(0, 0), lz2_survival(1.0, 1.0), 1e-15);
}
