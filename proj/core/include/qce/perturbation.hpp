#pragma once

#include "qce/cycle.hpp"
#include "qce/spectrum.hpp"

namespace qce {

/// Corners C and A of the unperturbed (alpha = 0) Carnot cycle:
/// lambda_c0 = (T1/T2) lambda_b, lambda_a0 = (T2/T1) lambda_d.
struct ZerothOrderLambdas {
  double lambda_c0;
  double lambda_a0;
};

ZerothOrderLambdas zeroth_order_lambdas(const EngineConfig& config);

/// Moments at one isothermal endpoint, taken with the alpha = 0 Boltzmann
/// populations of lambda * f(n).
struct CornerMoments {
  double mean_f;
  double mean_g;
  double ff;   // <f|f>
  double fg;   // <f|g>
  double gg;   // <g|g>
  double fg2;  // <f|g^2>
  double log_z;
  double entropy;
  double projected_gg;  // <g|g> - <f|g>^2 / <f|f>, evaluated without cancellation
};

/// Everything the second-order heat expansions need.
struct ExpansionContext {
  double alpha;
  double beta_cold;
  double beta_hot;
  double lambda_b;
  double lambda_d;
  CornerMoments b;  // (lambda_b, beta_hot)
  CornerMoments d;  // (lambda_d, beta_cold)
};

/// Throws ConfigError if <f|f> vanishes at either corner.
ExpansionContext build_context(const SpectrumModel& model, const EngineConfig& config);

/// A heat split by order in alpha; `first` and `second` already carry their alpha powers.
struct HeatExpansion {
  double zeroth;
  double first;
  double second;

  double total() const noexcept { return zeroth + first + second; }
};

/// Q1 to O(alpha^2) at lambda_c = lambda_c0 + alpha * lambda_c1.
HeatExpansion q1_expansion(const ExpansionContext& ctx, double lambda_c1);

/// Q2 to O(alpha^2) at lambda_a = lambda_a0 + alpha * lambda_a1.
HeatExpansion q2_expansion(const ExpansionContext& ctx, double lambda_a1);

struct FirstOrderShifts {
  double lambda_c1;
  double lambda_a1;
};

/// Stationary points of the lambda-dependent O(alpha^2) brackets:
///   lambda_c1* =  (beta2 - beta1) <f|g>_B / (beta1 <f|f>_B)   (minimum of Q1)
///   lambda_a1* = -(beta2 - beta1) <f|g>_D / (beta2 <f|f>_D)   (maximum of Q2)
FirstOrderShifts optimal_first_order_shifts(const ExpansionContext& ctx);

struct PerturbativeReport {
  double eta_carnot;
  double lambda_c0;
  double lambda_a0;
  double lambda_c1_opt;
  double lambda_a1_opt;
  double correction_coefficient;  // eta_correction / alpha^2
  double eta_correction;
  double eta_optimized;
};

/// Second-order efficiency after optimizing lambda_c and lambda_a:
///
///   eta = 1 - T1/T2 - alpha^2 (beta2 / 2 beta1) (beta1 - beta2)^2
///         * (R_B + R_D) / (S_B^0 - S_D^0)
///
/// with R = <g|g> - <f|g>^2/<f|f>. The denominator equals beta2 * Q2^0 written
/// as beta2 lambda_b <f>_B - beta1 lambda_d <f>_D + ln Z_B^0 - ln Z_D^0. It is
/// evaluated from stable entropies and must be positive (ConfigError otherwise).
PerturbativeReport optimized_efficiency(const SpectrumModel& model, const EngineConfig& config);
PerturbativeReport optimized_efficiency(const ExpansionContext& ctx, const EngineConfig& config);

/// |eta_exact(lambda_c0, lambda_a0) - (1 - T1/T2)| at alpha and alpha/2.
/// The ratio of the two should be ~4 (residual is O(alpha^2)).
struct FirstOrderCheck {
  double residual;
  double residual_half;
  double ratio;
  bool skipped;  // alpha == 0, or residual below numerical resolution
  bool passed;
};

FirstOrderCheck first_order_efficiency_check(const SpectrumModel& model, const EngineConfig& config);

}  // namespace qce
