#include <cmath>

#include <gtest/gtest.h>

#include "qce/cycle.hpp"
#include "qce/error.hpp"
#include "qce/optimizer.hpp"
#include "qce/perturbation.hpp"
#include "random_config.hpp"

namespace {

using qce::EngineConfig;
using qce::SpectrumModel;

SpectrumModel reference(double alpha) { return SpectrumModel::from_text("n+1", "(n+1)^2", alpha, 5); }
const EngineConfig kEngine(1.0, 2.0, 1.0, 3.0);

TEST(Perturbation, ZerothOrderLambdas) {
  const auto z = qce::zeroth_order_lambdas(kEngine);
  EXPECT_DOUBLE_EQ(z.lambda_c0, 0.5);
  EXPECT_DOUBLE_EQ(z.lambda_a0, 6.0);

  const auto close = qce::zeroth_order_lambdas(EngineConfig(2.0 - 1e-9, 2.0, 1.0, 3.0));
  EXPECT_NEAR(close.lambda_c0, 1.0, 1e-8);
  EXPECT_NEAR(close.lambda_a0, 3.0, 1e-8);
}

TEST(PerturbationProperty, ZerothOrderOrdering) {
  qce::testing::CaseGenerator gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = gen.next();
    const auto z = qce::zeroth_order_lambdas(c.engine);
    EXPECT_LT(z.lambda_c0, c.engine.lambda_b());
    EXPECT_GT(z.lambda_a0, c.engine.lambda_d());
  }
}

TEST(Perturbation, ReferenceMoments) {
  const auto ctx = qce::build_context(reference(0.01), kEngine);
  constexpr double tol = 1e-13;
  EXPECT_NEAR(ctx.b.mean_f, 2.0943666333675382172, tol);
  EXPECT_NEAR(ctx.b.mean_g, 5.8685094823491304314, tol);
  EXPECT_NEAR(ctx.b.ff, 1.4821378873858541853, tol);
  EXPECT_NEAR(ctx.b.fg, 7.8483825578781431001, tol);
  EXPECT_NEAR(ctx.b.gg, 43.665319512399294263, 1e-12);
  EXPECT_NEAR(ctx.b.fg2, 162.71769050809603709, 1e-11);
  EXPECT_NEAR(ctx.b.log_z, 0.34710164582515039072, tol);
  EXPECT_NEAR(ctx.d.mean_f, 1.0523941669791855616, tol);
  EXPECT_NEAR(ctx.d.mean_g, 1.1626668406311823057, tol);
  EXPECT_NEAR(ctx.d.ff, 0.055133357939368403973, tol);
  EXPECT_NEAR(ctx.d.fg, 0.17692511904495983998, tol);
  EXPECT_NEAR(ctx.d.gg, 0.57980406670159740532, tol);
  EXPECT_NEAR(ctx.d.fg2, 1.1419501720391774987, 1e-12);
  EXPECT_NEAR(ctx.d.log_z, -2.9489311249596657034, tol);
}

TEST(Perturbation, CollinearObservablesSaturateCauchySchwarz) {
  const auto ctx = qce::build_context(SpectrumModel::from_text("n+1", "3*(n+1)", 0.01, 6), kEngine);
  for (const auto* m : {&ctx.b, &ctx.d}) {
    EXPECT_NEAR(m->fg * m->fg, m->ff * m->gg, 1e-12 * m->ff * m->gg);
    EXPECT_NEAR(m->projected_gg, 0.0, 1e-12 * m->gg);
  }
}

TEST(Perturbation, TwoLevelSaturatesCauchySchwarz) {
  const auto ctx = qce::build_context(SpectrumModel::from_text("n^3 + 2", "exp(n) - 7", 0.02, 2), kEngine);
  for (const auto* m : {&ctx.b, &ctx.d}) {
    EXPECT_NEAR(m->fg * m->fg, m->ff * m->gg, 1e-12 * m->ff * m->gg);
    EXPECT_EQ(m->projected_gg, 0.0);
  }
}

TEST(Perturbation, ZeroAlphaExpansionIsFirstBracket) {
  const auto ctx = qce::build_context(reference(0.0), kEngine);
  const auto q1 = qce::q1_expansion(ctx, 0.7);
  EXPECT_EQ(q1.first, 0.0);
  EXPECT_EQ(q1.second, 0.0);
  const double b1 = 1.0, b2 = 0.5;
  EXPECT_NEAR(q1.zeroth, b2 / b1 * 1.0 * ctx.b.mean_f - 3.0 * ctx.d.mean_f + (ctx.b.log_z - ctx.d.log_z) / b1, 1e-15);
  const auto exact = qce::run_cycle(reference(0.0), kEngine, 0.5, 6.0);
  EXPECT_NEAR(q1.total(), exact.q_cold, 1e-13);
  EXPECT_NEAR(qce::q2_expansion(ctx, -0.3).total(), exact.q_hot, 1e-13);
}

TEST(Perturbation, ShiftDerivativeOfQ1) {
  const double alpha = 0.01;
  const auto ctx = qce::build_context(reference(alpha), kEngine);
  const double h = 1e-4;
  const double numeric = (qce::q1_expansion(ctx, h).total() - qce::q1_expansion(ctx, -h).total()) / (2 * h);
  EXPECT_NEAR(numeric, -alpha * alpha * (0.5 - 1.0) * ctx.b.fg, 1e-12);
}

TEST(Perturbation, ReferenceExpansionValues) {
  const auto ctx = qce::build_context(reference(0.01), kEngine);
  EXPECT_NEAR(qce::q1_expansion(ctx, 0.0).total(), 1.1720810495983681062, 1e-14);
  EXPECT_NEAR(qce::q2_expansion(ctx, 0.0).total(), 2.3430559711072586902, 1e-14);
}

double expansion_error(double alpha, double shift, bool cold) {
  const auto m = reference(alpha);
  const auto ctx = qce::build_context(m, kEngine);
  if (cold) return std::abs(qce::q1_expansion(ctx, shift).total() - qce::heat_cold(m, kEngine, 0.5 + alpha * shift));
  return std::abs(qce::q2_expansion(ctx, shift).total() - qce::heat_hot(m, kEngine, 6.0 + alpha * shift));
}

TEST(Perturbation, ExpansionMatchesExactToThirdOrder) {
  for (const bool cold : {true, false}) {
    for (const double shift : {0.0, -2.5, 3.0}) {
      const double ratio = expansion_error(0.01, shift, cold) / expansion_error(0.005, shift, cold);
      EXPECT_GE(ratio, 6.0) << cold << " " << shift;
      EXPECT_LE(ratio, 10.0) << cold << " " << shift;
    }
  }
}

TEST(Perturbation, ReferenceShifts) {
  const auto shifts = qce::optimal_first_order_shifts(qce::build_context(reference(0.01), kEngine));
  EXPECT_NEAR(shifts.lambda_c1, -2.6476560057852852114, 1e-13);
  EXPECT_NEAR(shifts.lambda_a1, 3.2090394210983670139, 1e-13);
}

TEST(Perturbation, ShiftsMinimizeQuadraticBrackets) {
  const auto ctx = qce::build_context(reference(0.01), kEngine);
  const auto s = qce::optimal_first_order_shifts(ctx);
  for (const double d : {-0.1, 0.1}) {
    EXPECT_GT(qce::q1_expansion(ctx, s.lambda_c1 + d).total(), qce::q1_expansion(ctx, s.lambda_c1).total());
    EXPECT_LT(qce::q2_expansion(ctx, s.lambda_a1 + d).total(), qce::q2_expansion(ctx, s.lambda_a1).total());
  }
}

TEST(Perturbation, CollinearShiftsAndZeroCorrection) {
  const double c = 2.5;
  const auto m = SpectrumModel::from_text("n+1", "2.5*(n+1)", 0.01, 5);
  const auto ctx = qce::build_context(m, kEngine);
  const auto s = qce::optimal_first_order_shifts(ctx);
  EXPECT_NEAR(s.lambda_c1, c * (0.5 - 1.0) / 1.0, 1e-12);
  EXPECT_NEAR(s.lambda_a1, -c * (0.5 - 1.0) / 0.5, 1e-12);
  // mirror structure: beta1 * shift_c = -beta2 * shift_a
  EXPECT_NEAR(1.0 * s.lambda_c1, -0.5 * s.lambda_a1, 1e-12);
  EXPECT_NEAR(qce::optimized_efficiency(ctx, kEngine).eta_correction, 0.0, 1e-16);
}

TEST(Perturbation, EqualTemperatureShiftsVanish) {
  auto ctx = qce::build_context(reference(0.01), kEngine);
  ctx.beta_hot = ctx.beta_cold;
  const auto s = qce::optimal_first_order_shifts(ctx);
  EXPECT_EQ(s.lambda_c1, 0.0);
  EXPECT_EQ(s.lambda_a1, 0.0);
}

TEST(Perturbation, ZeroAlphaIsCarnot) {
  const auto r = qce::optimized_efficiency(reference(0.0), kEngine);
  EXPECT_EQ(r.eta_optimized, 0.5);
  EXPECT_EQ(r.eta_correction, 0.0);
}

TEST(Perturbation, TwoLevelCorrectionVanishes) {
  const auto r = qce::optimized_efficiency(SpectrumModel::from_text("n^2 + 1", "sqrt(n + 2)", 0.05, 2), kEngine);
  EXPECT_EQ(r.eta_correction, 0.0);
}

TEST(Perturbation, ReferenceOptimizedEfficiency) {
  const auto r = qce::optimized_efficiency(reference(0.01), kEngine);
  EXPECT_NEAR(r.eta_correction, -1.115972542546227742e-5, 1e-17);
  EXPECT_NEAR(r.eta_optimized, 0.49998884027457453772, 1e-15);
  EXPECT_EQ(r.lambda_c0, 0.5);
  EXPECT_EQ(r.lambda_a0, 6.0);
}

TEST(Perturbation, FirstOrderCheck) {
  const auto zero = qce::first_order_efficiency_check(reference(0.0), kEngine);
  EXPECT_TRUE(zero.skipped);
  EXPECT_LE(zero.residual, 1e-12);
  const auto ref = qce::first_order_efficiency_check(reference(0.01), kEngine);
  EXPECT_FALSE(ref.skipped);
  EXPECT_TRUE(ref.passed);
  EXPECT_GE(ref.ratio, 3.2);
  EXPECT_LE(ref.ratio, 4.8);
}

TEST(Perturbation, CollinearResidualIsSecondOrderButOptimumIsCarnot) {
  const auto m = SpectrumModel::from_text("n+1", "2*(n+1)", 0.01, 5);
  const auto check = qce::first_order_efficiency_check(m, kEngine);
  EXPECT_TRUE(check.passed);
  EXPECT_FALSE(check.skipped);
  EXPECT_NEAR(qce::maximize_efficiency(m, kEngine, {}).efficiency_star, 0.5, 1e-12);
}

double slope_q1(const SpectrumModel& m, double lambda) {
  const double h = 1e-6 * lambda;
  return (qce::heat_cold(m, kEngine, lambda + h) - qce::heat_cold(m, kEngine, lambda - h)) / (2 * h);
}

TEST(Perturbation, StationarityIsSecondOrder) {
  double at_shift[2];
  double at_zeroth[2];
  int k = 0;
  for (const double alpha : {0.01, 0.005}) {
    const auto m = reference(alpha);
    const auto s = qce::optimal_first_order_shifts(qce::build_context(m, kEngine));
    at_shift[k] = std::abs(slope_q1(m, 0.5 + alpha * s.lambda_c1));
    at_zeroth[k] = std::abs(slope_q1(m, 0.5));
    ++k;
  }
  const double shift_ratio = at_shift[0] / at_shift[1];
  const double zeroth_ratio = at_zeroth[0] / at_zeroth[1];
  EXPECT_GE(shift_ratio, 3.2);
  EXPECT_LE(shift_ratio, 4.8);
  EXPECT_GE(zeroth_ratio, 1.6);
  EXPECT_LE(zeroth_ratio, 2.4);
}

TEST(Perturbation, DegenerateDenominatorRejected) {
  // populations collapse onto the ground state at both corners
  const EngineConfig frozen(1.0, 2.0, 4000.0, 3000.0);
  EXPECT_THROW(qce::optimized_efficiency(reference(0.01), frozen), qce::ConfigError);
}

TEST(PerturbationProperty, SecondOrderCorrectionNeverPositive) {
  qce::testing::CaseGenerator gen(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = gen.next();
    const auto r = qce::optimized_efficiency(c.model, c.engine);
    EXPECT_LE(r.eta_correction, 0.0) << c.f_text << " | " << c.g_text;
    if (c.model.levels() == 2 || c.kind != qce::testing::RandomCase::Kind::Generic) {
      EXPECT_LE(std::abs(r.eta_correction), 1e-14);
    }
  }
}

}  // namespace
