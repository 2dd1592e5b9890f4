#include "qce/perturbation.hpp"

#include <cmath>
#include <string>

#include "qce/error.hpp"
#include "qce/thermo.hpp"

namespace qce {

namespace {

CornerMoments corner_moments(const SpectrumModel& model, double lambda, double beta) {
  const auto f = model.f_values();
  const auto g = model.g_values();
  std::vector<double> levels(f.size());
  std::vector<double> g_squared(g.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    levels[n] = lambda * f[n];
    g_squared[n] = g[n] * g[n];
  }
  const ThermalState state = equilibrium_state(std::move(levels), lambda, beta);
  const PopulationVector& p = state.populations;

  CornerMoments m{};
  m.mean_f = weighted_mean(p, f);
  m.mean_g = weighted_mean(p, g);
  m.ff = inner_product(p, f, f);
  m.fg = inner_product(p, f, g);
  m.gg = inner_product(p, g, g);
  m.fg2 = inner_product(p, f, g_squared);
  m.log_z = state.log_z;
  m.entropy = state.entropy;
  if (!(m.ff > 0.0)) {
    throw ConfigError("<f|f> vanishes at lambda=" + std::to_string(lambda) +
                      "; the populated levels do not resolve f");
  }
  m.projected_gg = projected_variance(p, f, g);
  return m;
}

}  // namespace

ZerothOrderLambdas zeroth_order_lambdas(const EngineConfig& config) {
  return ZerothOrderLambdas{config.beta_hot() / config.beta_cold() * config.lambda_b(),
                            config.beta_cold() / config.beta_hot() * config.lambda_d()};
}

ExpansionContext build_context(const SpectrumModel& model, const EngineConfig& config) {
  return ExpansionContext{model.alpha(),
                          config.beta_cold(),
                          config.beta_hot(),
                          config.lambda_b(),
                          config.lambda_d(),
                          corner_moments(model, config.lambda_b(), config.beta_hot()),
                          corner_moments(model, config.lambda_d(), config.beta_cold())};
}

HeatExpansion q1_expansion(const ExpansionContext& ctx, double lambda_c1) {
  const double b1 = ctx.beta_cold;
  const double b2 = ctx.beta_hot;
  const double lb = ctx.lambda_b;
  const double ld = ctx.lambda_d;
  const CornerMoments& B = ctx.b;
  const CornerMoments& D = ctx.d;
  const double a = ctx.alpha;

  const double zeroth = b2 / b1 * lb * B.mean_f - ld * D.mean_f + (B.log_z - D.log_z) / b1;
  const double first = -b2 * b2 / b1 * lb * B.fg + b1 * ld * D.fg;
  const double variance = -b2 * B.gg + 0.5 * b1 * (B.gg + D.gg);
  const double skew = -b2 * b2 * b2 / b1 * lb * (B.mean_g * B.fg - 0.5 * B.fg2) +
                      b1 * b1 * ld * (D.mean_g * D.fg - 0.5 * D.fg2);
  const double shift = -(b2 - b1) * lambda_c1 * B.fg + 0.5 * b1 * lambda_c1 * lambda_c1 * B.ff;
  return HeatExpansion{zeroth, a * first, a * a * (variance + skew + shift)};
}

HeatExpansion q2_expansion(const ExpansionContext& ctx, double lambda_a1) {
  const double b1 = ctx.beta_cold;
  const double b2 = ctx.beta_hot;
  const double lb = ctx.lambda_b;
  const double ld = ctx.lambda_d;
  const CornerMoments& B = ctx.b;
  const CornerMoments& D = ctx.d;
  const double a = ctx.alpha;

  const double zeroth = lb * B.mean_f - b1 / b2 * ld * D.mean_f + (B.log_z - D.log_z) / b2;
  const double first = -b2 * lb * B.fg + b1 * b1 / b2 * ld * D.fg;
  const double variance = -0.5 * b2 * (B.gg + D.gg) + b1 * D.gg;
  const double skew = -b2 * b2 * lb * (B.mean_g * B.fg - 0.5 * B.fg2) +
                      b1 * b1 * b1 / b2 * ld * (D.mean_g * D.fg - 0.5 * D.fg2);
  const double shift = -(b2 - b1) * lambda_a1 * D.fg - 0.5 * b2 * lambda_a1 * lambda_a1 * D.ff;
  return HeatExpansion{zeroth, a * first, a * a * (variance + skew + shift)};
}

FirstOrderShifts optimal_first_order_shifts(const ExpansionContext& ctx) {
  if (!(ctx.b.ff > 0.0) || !(ctx.d.ff > 0.0)) throw ConfigError("<f|f> must be positive at B and D");
  const double b1 = ctx.beta_cold;
  const double b2 = ctx.beta_hot;
  return FirstOrderShifts{(b2 - b1) * ctx.b.fg / (b1 * ctx.b.ff), -(b2 - b1) * ctx.d.fg / (b2 * ctx.d.ff)};
}

PerturbativeReport optimized_efficiency(const ExpansionContext& ctx, const EngineConfig& config) {
  const double b1 = ctx.beta_cold;
  const double b2 = ctx.beta_hot;
  const double denominator = ctx.b.entropy - ctx.d.entropy;
  if (!(denominator > 0.0)) {
    throw ConfigError("non-positive beta2*Q2^0 = " + std::to_string(denominator) +
                      "; check beta2*lambda_b < beta1*lambda_d");
  }
  const double prefactor = -0.5 * (b2 / b1) * (b1 - b2) * (b1 - b2);
  double coefficient = prefactor * (ctx.b.projected_gg + ctx.d.projected_gg) / denominator;
  if (coefficient == 0.0) coefficient = 0.0;  // no -0 in reports

  const auto zeroth = zeroth_order_lambdas(config);
  const auto shifts = optimal_first_order_shifts(ctx);
  const double carnot = config.carnot_efficiency();
  double correction = ctx.alpha * ctx.alpha * coefficient;
  if (correction == 0.0) correction = 0.0;
  return PerturbativeReport{carnot,           zeroth.lambda_c0, zeroth.lambda_a0, shifts.lambda_c1,
                            shifts.lambda_a1, coefficient,      correction,       carnot + correction};
}

PerturbativeReport optimized_efficiency(const SpectrumModel& model, const EngineConfig& config) {
  return optimized_efficiency(build_context(model, config), config);
}

FirstOrderCheck first_order_efficiency_check(const SpectrumModel& model, const EngineConfig& config) {
  const auto zeroth = zeroth_order_lambdas(config);
  const double carnot = config.carnot_efficiency();
  const auto residual_at = [&](double alpha) {
    const auto report = run_cycle(model.with_alpha(alpha), config, zeroth.lambda_c0, zeroth.lambda_a0);
    return std::abs(report.efficiency - carnot);
  };

  FirstOrderCheck check{};
  check.residual = residual_at(model.alpha());
  if (model.alpha() == 0.0) {
    check.skipped = true;
    check.passed = check.residual <= 1e-12;
    return check;
  }
  check.residual_half = residual_at(0.5 * model.alpha());
  if (check.residual_half < 1e-13) {
    check.skipped = true;
    check.passed = true;
    return check;
  }
  check.ratio = check.residual / check.residual_half;
  check.passed = check.ratio >= 3.2 && check.ratio <= 4.8;
  return check;
}

}  // namespace qce
