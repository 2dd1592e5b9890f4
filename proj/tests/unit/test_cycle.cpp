#include <cmath>

#include <gtest/gtest.h>

#include "qce/cycle.hpp"
#include "qce/error.hpp"
#include "qce/perturbation.hpp"
#include "random_config.hpp"

namespace {

using qce::EngineConfig;
using qce::SpectrumModel;

SpectrumModel reference(double alpha) { return SpectrumModel::from_text("n+1", "(n+1)^2", alpha, 5); }
const EngineConfig kEngine(1.0, 2.0, 1.0, 3.0);

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

TEST(EngineConfig, Validation) {
  EXPECT_THROW(EngineConfig(0.0, 2.0, 1.0, 3.0), qce::ConfigError);
  EXPECT_THROW(EngineConfig(2.0, 2.0, 1.0, 3.0), qce::ConfigError);
  EXPECT_THROW(EngineConfig(3.0, 2.0, 1.0, 3.0), qce::ConfigError);
  EXPECT_THROW(EngineConfig(1.0, 2.0, -1.0, 3.0), qce::ConfigError);
  EXPECT_THROW(EngineConfig(1.0, 2.0, 1.0, 0.0), qce::ConfigError);
  EXPECT_NO_THROW(EngineConfig(1.0, 2.0, 5.9, 3.0));
}

TEST(EngineConfig, UnphysicalBoundary) {
  try {
    EngineConfig(1.0, 2.0, 6.0, 3.0);
    FAIL() << "expected ConfigError";
  } catch (const qce::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("unphysical"), std::string::npos);
  }
  EXPECT_THROW(EngineConfig(1.0, 2.0, 7.0, 3.0), qce::ConfigError);
}

TEST(Cycle, ThermalStateTwoLevel) {
  const auto m = SpectrumModel::from_text("n", "n", 0.0, 2);
  const auto s = qce::thermal_state(m, 1.0, 1.0);
  EXPECT_NEAR(s.populations[0], 0.73105857863000487925, 1e-15);
  EXPECT_NEAR(s.populations[1], 0.26894142136999512075, 1e-15);
}

TEST(Cycle, GroundStateAtLargeBeta) {
  const auto s = qce::thermal_state(reference(0.01), 1.0, 1e6);
  EXPECT_EQ(s.populations[0], 1.0);
  for (std::size_t n = 1; n < 5; ++n) EXPECT_EQ(s.populations[n], 0.0);
}

TEST(Cycle, ScaledCornersShareThermalPopulations) {
  const auto m = reference(0.0);
  const auto b = qce::thermal_state(m, 1.0, 0.5);
  const auto c = qce::thermal_state(m, 0.5, 1.0);
  for (std::size_t n = 0; n < 5; ++n) EXPECT_NEAR(b.populations[n], c.populations[n], 1e-15);
}

TEST(Cycle, AdiabaticStrokeIdentity) {
  const auto m = reference(0.01);
  const auto b = qce::thermal_state(m, 1.0, 0.5);
  const auto same = qce::adiabatic_stroke(b, m, 1.0);
  EXPECT_EQ(same.populations, b.populations);
  EXPECT_EQ(same.levels, b.levels);
  EXPECT_DOUBLE_EQ(same.mean_energy, b.mean_energy);
}

TEST(Cycle, AdiabaticStrokePreservesEquilibriumWhenScaleInvariant) {
  const auto m = reference(0.0);
  const auto b = qce::thermal_state(m, 1.0, 0.5);
  const auto c_prime = qce::adiabatic_stroke(b, m, 0.5);
  const auto relaxed = qce::relaxation_stroke(c_prime, m, 1.0);
  EXPECT_LE(relaxed.ds_total, 1e-15);
  for (std::size_t n = 0; n < 5; ++n) EXPECT_NEAR(relaxed.state.populations[n], c_prime.populations[n], 1e-15);
}

TEST(Cycle, PerturbedAdiabaticStrokeLeavesEquilibrium) {
  const auto m = reference(0.01);
  const auto c_prime = qce::adiabatic_stroke(qce::thermal_state(m, 1.0, 0.5), m, 0.5);
  const auto relaxed = qce::relaxation_stroke(c_prime, m, 1.0);
  EXPECT_NEAR(relaxed.ds_total, 0.00050851182192714012037, 1e-15);
}

TEST(Cycle, TwoLevelGapMatchedRelaxationIsFree) {
  const double alpha = 0.3;
  const auto m = SpectrumModel::from_text("2*n + 1", "n^2 + 3", alpha, 2);
  const double beta_from = 0.25;
  const double beta_to = 1.0;
  const double lambda_from = 1.7;
  // beta_to (lambda_to * df + alpha * dg) = beta_from (lambda_from * df + alpha * dg), df = 2, dg = 1
  const double lambda_to = (beta_from / beta_to * (lambda_from * 2.0 + alpha) - alpha) / 2.0;
  const auto before = qce::thermal_state(m, lambda_from, beta_from);
  const auto moved = qce::adiabatic_stroke(before, m, lambda_to);
  EXPECT_LE(qce::relaxation_stroke(moved, m, beta_to).ds_total, 1e-15);
  EXPECT_TRUE(qce::check_scale_invariance(m, lambda_from, lambda_to, beta_from, beta_to).holds);
}

TEST(Cycle, ScaleInvarianceCheck) {
  EXPECT_TRUE(qce::check_scale_invariance(reference(0.0), 1.0, 0.5, 0.5, 1.0).holds);
  EXPECT_TRUE(qce::check_scale_invariance(reference(0.0), 3.0, 7.5, 2.5, 1.0).holds);
  const auto broken = qce::check_scale_invariance(reference(0.01), 1.0, 0.5, 0.5, 1.0);
  EXPECT_FALSE(broken.holds);
  EXPECT_GT(broken.max_residual, 1e-4);
  // g proportional to f: levels are (lambda + c alpha) f, matched by a shifted lambda
  const auto collinear = SpectrumModel::from_text("n+1", "2*(n+1)", 0.1, 5);
  EXPECT_FALSE(qce::check_scale_invariance(collinear, 1.0, 0.5, 0.5, 1.0).holds);
  EXPECT_TRUE(qce::check_scale_invariance(collinear, 1.0, 0.5 * 1.2 - 0.2, 0.5, 1.0).holds);
}

TEST(Cycle, ZerothOrderEngineIsCarnot) {
  const auto m = reference(0.0);
  const auto r = qce::run_cycle(m, kEngine, 0.5, 6.0);
  EXPECT_NEAR(r.efficiency, 0.5, 1e-12);
  const auto b = qce::thermal_state(m, 1.0, 0.5);
  const auto d = qce::thermal_state(m, 3.0, 1.0);
  EXPECT_NEAR(r.q_cold, 1.0 * (b.entropy - d.entropy), 1e-13);
  EXPECT_NEAR(r.q_hot, 2.0 * (b.entropy - d.entropy), 1e-13);
  EXPECT_LE(r.ds_total_cold, 1e-15);
  EXPECT_LE(r.ds_total_hot, 1e-15);
}

TEST(Cycle, ReferenceCycleValues) {
  const auto r = qce::run_cycle(reference(0.01), kEngine, 0.5, 6.0);
  EXPECT_NEAR(r.q_cold, 1.1720596088621819664, 1e-14);
  EXPECT_NEAR(r.q_hot, 2.3430882398322237623, 1e-14);
  EXPECT_NEAR(r.efficiency, 0.49977999593130688211, 1e-14);
  EXPECT_LT(r.efficiency, 0.5);
  EXPECT_NEAR(r.ds_total_cold, 0.00050851182192714012037, 1e-16);
  EXPECT_NEAR(r.ds_total_hot, 6.9771241429451157158e-6, 1e-17);
  EXPECT_LE(r.clausius_residual, 1e-12);
}

TEST(Cycle, TraceExposesSixStates) {
  const auto t = qce::trace_cycle(reference(0.01), kEngine, 0.5, 6.0);
  EXPECT_EQ(t.a.lambda, 6.0);
  EXPECT_EQ(t.b.lambda, 1.0);
  EXPECT_EQ(t.c_prime.lambda, 0.5);
  EXPECT_EQ(t.c.lambda, 0.5);
  EXPECT_EQ(t.d.lambda, 3.0);
  EXPECT_EQ(t.a_prime.lambda, 6.0);
  EXPECT_EQ(t.c_prime.populations, t.b.populations);
  EXPECT_EQ(t.a_prime.populations, t.d.populations);
  EXPECT_EQ(t.a.beta, 0.5);
  EXPECT_EQ(t.c.beta, 1.0);
}

TEST(Cycle, HeatFormulasMatchStrokeAccountingOnReference) {
  const auto m = reference(0.01);
  const auto s = qce::stroke_heats(m, kEngine, 0.47, 6.1);
  EXPECT_LE(rel(s.q_cold, qce::heat_cold(m, kEngine, 0.47)), 1e-12);
  EXPECT_LE(rel(s.q_hot, qce::heat_hot(m, kEngine, 6.1)), 1e-12);
}

TEST(Cycle, NotAnEngine) {
  const auto m = reference(0.0);
  // lambda_a far below its zeroth-order value drains Q2
  EXPECT_THROW(qce::run_cycle(m, kEngine, 0.5, 0.01), qce::NotAnEngine);
  // so does a hot corner far above its zeroth-order value
  EXPECT_THROW(qce::run_cycle(m, kEngine, 0.5, 60.0), qce::NotAnEngine);
  // Q1 >= T1 (S_B - S_D) > 0 always; a far-off cold corner only costs work
  const auto r = qce::run_cycle(m, kEngine, 50.0, 6.0);
  EXPECT_GT(r.q_cold, 0.0);
  EXPECT_LT(r.work, 0.0);
}

TEST(Cycle, RejectsNonPositiveLambda) {
  EXPECT_THROW(qce::run_cycle(reference(0.01), kEngine, 0.0, 6.0), qce::ConfigError);
  EXPECT_THROW(qce::heat_hot(reference(0.01), kEngine, -1.0), qce::ConfigError);
}

// ---- properties over random engines and random corners ----

class CycleProperty : public ::testing::Test {
 protected:
  qce::testing::CaseGenerator gen{90210};
  std::mt19937_64 rng{4242};

  double jitter(double center, double width) {
    return center * std::exp(std::uniform_real_distribution<double>(-width, width)(rng));
  }
};

TEST_F(CycleProperty, LawsAndCarnotBoundAtRandomCorners) {
  int evaluated = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto c = gen.next();
    const auto zeroth = qce::zeroth_order_lambdas(c.engine);
    const double lambda_c = jitter(zeroth.lambda_c0, 0.3);
    const double lambda_a = jitter(zeroth.lambda_a0, 0.3);
    qce::CycleReport r{};
    try {
      r = qce::run_cycle(c.model, c.engine, lambda_c, lambda_a);
    } catch (const qce::NotAnEngine&) {
      continue;
    }
    ++evaluated;
    EXPECT_LE(rel(r.work, r.q_hot - r.q_cold), 1e-10) << c.f_text << " | " << c.g_text;
    EXPECT_NEAR(r.efficiency, 1.0 - r.q_cold / r.q_hot, 1e-12);
    EXPECT_GE(r.ds_total_cold, 0.0);
    EXPECT_GE(r.ds_total_hot, 0.0);
    EXPECT_LE(r.efficiency, c.engine.carnot_efficiency() + 1e-12);
    EXPECT_LE(r.clausius_residual, 1e-10);
    const auto s = qce::stroke_heats(c.model, c.engine, lambda_c, lambda_a);
    EXPECT_LE(rel(s.q_cold, r.q_cold), 1e-10);
    EXPECT_LE(rel(s.q_hot, r.q_hot), 1e-10);
  }
  EXPECT_GT(evaluated, 300);
}

TEST_F(CycleProperty, SeparabilityOfHeats) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = gen.next();
    const auto zeroth = qce::zeroth_order_lambdas(c.engine);
    const double lc = jitter(zeroth.lambda_c0, 0.1);
    const double la = jitter(zeroth.lambda_a0, 0.1);
    try {
      const auto r1 = qce::run_cycle(c.model, c.engine, lc, la);
      const auto r2 = qce::run_cycle(c.model, c.engine, lc, jitter(la, 0.1));
      const auto r3 = qce::run_cycle(c.model, c.engine, jitter(lc, 0.1), la);
      EXPECT_EQ(r1.q_cold, r2.q_cold);
      EXPECT_EQ(r1.q_hot, r3.q_hot);
    } catch (const qce::NotAnEngine&) {
    }
  }
}

TEST_F(CycleProperty, EquilibriumPreservedWhenScaleInvariant) {
  int matched = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto c = gen.next();
    if (c.kind != qce::testing::RandomCase::Kind::ZeroAlpha) continue;
    const auto zeroth = qce::zeroth_order_lambdas(c.engine);
    const auto check = qce::check_scale_invariance(c.model, c.engine.lambda_b(), zeroth.lambda_c0,
                                                   c.engine.beta_hot(), c.engine.beta_cold());
    ASSERT_TRUE(check.holds);
    const auto r = qce::run_cycle(c.model, c.engine, zeroth.lambda_c0, zeroth.lambda_a0);
    EXPECT_LE(r.ds_total_cold, 1e-12);
    EXPECT_LE(r.ds_total_hot, 1e-12);
    ++matched;
  }
  EXPECT_GT(matched, 10);
}

}  // namespace
