#include "qce/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qce/error.hpp"
#include "qce/golden_section.hpp"
#include "qce/perturbation.hpp"
#include "qce/thermo.hpp"

namespace qce {

void SearchSettings::validate() const {
  if (!(bracket_halfwidth > 0.0 && bracket_halfwidth < 1.0)) {
    throw ConfigError("bracket_halfwidth must lie in (0, 1) so the bracket keeps lambda > 0");
  }
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (max_iterations <= 0) throw ConfigError("max_iterations must be positive");
}

namespace {

struct LineSearchOutcome {
  double x;
  int iterations;
  bool bracket_hit;
};

// `objective` is minimized; `slope_sign` is increasing in x and vanishes at the
// minimum (a derivative up to a positive factor).
template <class Objective, class SlopeSign>
LineSearchOutcome search(Objective&& objective, SlopeSign&& slope_sign, double center, const SearchSettings& settings) {
  settings.validate();
  const double lo = center * (1.0 - settings.bracket_halfwidth);
  const double hi = center * (1.0 + settings.bracket_halfwidth);
  const auto golden = golden_section_minimize(objective, lo, hi, settings.tolerance * center, settings.max_iterations);
  if (!golden.converged) {
    throw OptimizationError("golden-section search did not reach tolerance within " +
                            std::to_string(settings.max_iterations) + " iterations");
  }

  // Value comparisons stop resolving x near sqrt(eps); finish on the slope.
  double x = golden.x;
  int iterations = golden.iterations;
  double window = std::max(1e-6, 16.0 * settings.tolerance) * center;
  double a = std::max(lo, x - window);
  double b = std::min(hi, x + window);
  while (!(slope_sign(a) <= 0.0 && slope_sign(b) >= 0.0) && (a > lo || b < hi)) {
    window *= 8.0;
    a = std::max(lo, x - window);
    b = std::min(hi, x + window);
  }
  if (slope_sign(a) <= 0.0 && slope_sign(b) >= 0.0) {
    for (int k = 0; k < settings.max_iterations; ++k) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (slope_sign(mid) < 0.0) {
        a = mid;
      } else {
        b = mid;
      }
      ++iterations;
    }
    x = 0.5 * (a + b);
  }

  const double edge = std::max(1e-9, 4.0 * settings.tolerance) * center;
  const bool hit = (x - lo) <= edge || (hi - x) <= edge;
  return LineSearchOutcome{x, iterations, hit};
}

// Energy levels with the constant parts of f and g removed.
class Levels {
 public:
  explicit Levels(const SpectrumModel& model)
      : alpha_(model.alpha()), f_(centered(model.f_values())), g_(centered(model.g_values())) {}

  PopulationVector populations(double lambda, double beta) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw ConfigError("lambda must be positive and finite, got " + std::to_string(lambda));
    }
    std::vector<double> e(f_.size());
    for (std::size_t n = 0; n < f_.size(); ++n) e[n] = lambda * f_[n] + alpha_ * g_[n];
    return boltzmann_populations(e, beta);
  }

  double mean_f(const PopulationVector& p) const { return weighted_mean(p, f_); }

 private:
  double alpha_;
  std::vector<double> f_;
  std::vector<double> g_;
};

}  // namespace

// Q1 = T1 (S_B - S_D + D(B || C)), so Q1 is minimized with the relative
// entropy, which has no cancellation near the optimum.
LineOptimum minimize_q1(const SpectrumModel& model, const EngineConfig& config, const SearchSettings& settings) {
  const Levels levels(model);
  const double beta1 = config.beta_cold();
  const PopulationVector p_b = levels.populations(config.lambda_b(), config.beta_hot());
  const double mean_f_b = levels.mean_f(p_b);

  const auto relaxation = [&](double lambda_c) {
    return total_entropy_production(p_b, levels.populations(lambda_c, beta1));
  };
  // dQ1/dlambda_c = <f>_B - <f>_C(lambda_c)
  const auto slope = [&](double lambda_c) { return mean_f_b - levels.mean_f(levels.populations(lambda_c, beta1)); };

  const double center = zeroth_order_lambdas(config).lambda_c0;
  const auto out = search(relaxation, slope, center, settings);
  return LineOptimum{out.x, heat_cold(model, config, out.x), out.iterations, out.bracket_hit};
}

// Q2 = T2 (S_B - S_D - D(D || A)).
LineOptimum maximize_q2(const SpectrumModel& model, const EngineConfig& config, const SearchSettings& settings) {
  const Levels levels(model);
  const double beta2 = config.beta_hot();
  const PopulationVector p_d = levels.populations(config.lambda_d(), config.beta_cold());
  const double mean_f_d = levels.mean_f(p_d);

  const auto relaxation = [&](double lambda_a) {
    return total_entropy_production(p_d, levels.populations(lambda_a, beta2));
  };
  // d(-Q2)/dlambda_a = <f>_D - <f>_A(lambda_a)
  const auto slope = [&](double lambda_a) { return mean_f_d - levels.mean_f(levels.populations(lambda_a, beta2)); };

  const double center = zeroth_order_lambdas(config).lambda_a0;
  const auto out = search(relaxation, slope, center, settings);
  return LineOptimum{out.x, heat_hot(model, config, out.x), out.iterations, out.bracket_hit};
}

OptimumReport maximize_efficiency(const SpectrumModel& model, const EngineConfig& config,
                                  const SearchSettings& settings) {
  const LineOptimum c = minimize_q1(model, config, settings);
  const LineOptimum a = maximize_q2(model, config, settings);
  const CycleReport cycle = run_cycle(model, config, c.lambda, a.lambda);
  return OptimumReport{c.lambda,     a.lambda,      cycle.efficiency, c.iterations, a.iterations,
                       c.bracket_hit, a.bracket_hit, cycle};
}

}  // namespace qce
