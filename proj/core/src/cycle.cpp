#include "qce/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qce/error.hpp"

namespace qce {

EngineConfig::EngineConfig(double t_cold, double t_hot, double lambda_b, double lambda_d)
    : t_cold_(t_cold), t_hot_(t_hot), lambda_b_(lambda_b), lambda_d_(lambda_d) {
  const auto bad = [](double v) { return !(v > 0.0) || !std::isfinite(v); };
  if (bad(t_cold)) throw ConfigError("t_cold must be positive and finite");
  if (bad(t_hot)) throw ConfigError("t_hot must be positive and finite");
  if (!(t_cold < t_hot)) throw ConfigError("t_cold must be below t_hot");
  if (bad(lambda_b)) throw ConfigError("lambda_b must be positive and finite");
  if (bad(lambda_d)) throw ConfigError("lambda_d must be positive and finite");
  if (!(lambda_b / t_hot < lambda_d / t_cold)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "unphysical: beta2*lambda_b >= beta1*lambda_d (" << lambda_b / t_hot << " >= " << lambda_d / t_cold
        << "); the engine cannot release heat to the cold reservoir";
    throw ConfigError(msg.str());
  }
}

ThermalState thermal_state(const SpectrumModel& model, double lambda, double beta) {
  return equilibrium_state(energy_levels(model, lambda), lambda, beta);
}

NonequilibriumState adiabatic_stroke(const ThermalState& state, const SpectrumModel& model, double lambda_target) {
  auto levels = energy_levels(model, lambda_target);
  const double energy = mean_energy(levels, state.populations);
  return NonequilibriumState{lambda_target, std::move(levels), state.populations, energy};
}

NonequilibriumState adiabatic_stroke(const NonequilibriumState& state, const SpectrumModel& model,
                                     double lambda_target) {
  auto levels = energy_levels(model, lambda_target);
  const double energy = mean_energy(levels, state.populations);
  return NonequilibriumState{lambda_target, std::move(levels), state.populations, energy};
}

RelaxationResult relaxation_stroke(const NonequilibriumState& state, const SpectrumModel& model, double beta) {
  ThermalState relaxed = thermal_state(model, state.lambda, beta);
  const double ds = total_entropy_production(state.populations, relaxed.populations);
  return RelaxationResult{std::move(relaxed), ds};
}

namespace {

// Heats, work and entropy production do not change when constants are added
// to f or g. Evaluating them on offset-free levels keeps large offsets from
// swamping the small differences that make up the heats.
class ReducedLevels {
 public:
  explicit ReducedLevels(const SpectrumModel& model)
      : alpha_(model.alpha()), f_(centered(model.f_values())), g_(centered(model.g_values())) {}

  std::vector<double> at(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw ConfigError("lambda must be positive and finite, got " + std::to_string(lambda));
    }
    std::vector<double> e(f_.size());
    for (std::size_t n = 0; n < f_.size(); ++n) e[n] = lambda * f_[n] + alpha_ * g_[n];
    return e;
  }

  ThermalState state(double lambda, double beta) const { return equilibrium_state(at(lambda), lambda, beta); }

 private:
  double alpha_;
  std::vector<double> f_;
  std::vector<double> g_;
};

CycleReport evaluate_cycle(const SpectrumModel& model, const EngineConfig& config, double lambda_c, double lambda_a) {
  const ReducedLevels reduced(model);
  const double t1 = config.t_cold();
  const double t2 = config.t_hot();

  const ThermalState b = reduced.state(config.lambda_b(), config.beta_hot());
  const ThermalState c = reduced.state(lambda_c, config.beta_cold());
  const ThermalState d = reduced.state(config.lambda_d(), config.beta_cold());
  const ThermalState a = reduced.state(lambda_a, config.beta_hot());
  const auto levels_c = reduced.at(lambda_c);
  const auto levels_a = reduced.at(lambda_a);
  const double energy_c_prime = mean_energy(levels_c, b.populations);
  const double energy_a_prime = mean_energy(levels_a, d.populations);
  const double ds_cold = total_entropy_production(b.populations, c.populations);
  const double ds_hot = total_entropy_production(d.populations, a.populations);

  // Entropy balance: the cold bath receives T1 times the isothermal entropy
  // drop plus the relaxation production, the hot bath supplies T2 times the
  // isothermal entropy rise minus its relaxation production.
  const double ds_isotherm = b.entropy - d.entropy;
  const double q_cold = t1 * (ds_isotherm + ds_cold);
  const double q_hot = t2 * (ds_isotherm - ds_hot);

  if (!(q_hot > kMinHotHeat)) {
    throw NotAnEngine("not an engine: heat drawn from the hot reservoir is " + std::to_string(q_hot));
  }
  if (!(q_cold > 0.0)) {
    throw NotAnEngine("not an engine: heat released to the cold reservoir is " + std::to_string(q_cold));
  }

  // output work per stroke; relaxations exchange heat only
  const double work = (a.free_energy() - b.free_energy())     // A -> B
                      + (b.mean_energy - energy_c_prime)      // B -> C'
                      + (c.free_energy() - d.free_energy())   // C -> D
                      + (d.mean_energy - energy_a_prime);     // D -> A'

  const double efficiency = 1.0 - q_cold / q_hot;
  const double formula_cold = energy_c_prime - d.mean_energy + t1 * (c.log_z - d.log_z);
  const double formula_hot = b.mean_energy - energy_a_prime + t2 * (b.log_z - a.log_z);
  const double formula_efficiency = 1.0 - formula_cold / formula_hot;

  return CycleReport{q_cold, q_hot, work, efficiency, ds_cold, ds_hot, std::abs(efficiency - formula_efficiency)};
}

}  // namespace

double heat_cold(const SpectrumModel& model, const EngineConfig& config, double lambda_c) {
  const ReducedLevels reduced(model);
  const ThermalState b = reduced.state(config.lambda_b(), config.beta_hot());
  const ThermalState d = reduced.state(config.lambda_d(), config.beta_cold());
  const auto levels_c = reduced.at(lambda_c);
  const double energy_c_prime = mean_energy(levels_c, b.populations);
  const double log_z_c = log_partition(levels_c, config.beta_cold());
  return energy_c_prime - d.mean_energy + config.t_cold() * (log_z_c - d.log_z);
}

double heat_hot(const SpectrumModel& model, const EngineConfig& config, double lambda_a) {
  const ReducedLevels reduced(model);
  const ThermalState b = reduced.state(config.lambda_b(), config.beta_hot());
  const ThermalState d = reduced.state(config.lambda_d(), config.beta_cold());
  const auto levels_a = reduced.at(lambda_a);
  const double energy_a_prime = mean_energy(levels_a, d.populations);
  const double log_z_a = log_partition(levels_a, config.beta_hot());
  return b.mean_energy - energy_a_prime + config.t_hot() * (b.log_z - log_z_a);
}

StrokeHeats stroke_heats(const SpectrumModel& model, const EngineConfig& config, double lambda_c, double lambda_a) {
  const ReducedLevels reduced(model);
  const ThermalState b = reduced.state(config.lambda_b(), config.beta_hot());
  const ThermalState d = reduced.state(config.lambda_d(), config.beta_cold());
  const ThermalState c = reduced.state(lambda_c, config.beta_cold());
  const ThermalState a = reduced.state(lambda_a, config.beta_hot());
  const double energy_c_prime = mean_energy(reduced.at(lambda_c), b.populations);
  const double energy_a_prime = mean_energy(reduced.at(lambda_a), d.populations);

  // C' -> C releases its excess energy, C -> D releases T1 (S_C - S_D)
  const double q_cold = (energy_c_prime - c.mean_energy) +
                        config.t_cold() * (gibbs_entropy(c.populations) - gibbs_entropy(d.populations));
  // A' -> A absorbs the energy deficit, A -> B absorbs T2 (S_B - S_A)
  const double q_hot = (a.mean_energy - energy_a_prime) +
                       config.t_hot() * (gibbs_entropy(b.populations) - gibbs_entropy(a.populations));
  return StrokeHeats{q_cold, q_hot};
}

CycleTrace trace_cycle(const SpectrumModel& model, const EngineConfig& config, double lambda_c, double lambda_a) {
  const CycleReport report = evaluate_cycle(model, config, lambda_c, lambda_a);
  ThermalState b = thermal_state(model, config.lambda_b(), config.beta_hot());
  NonequilibriumState c_prime = adiabatic_stroke(b, model, lambda_c);
  ThermalState c = thermal_state(model, lambda_c, config.beta_cold());
  ThermalState d = thermal_state(model, config.lambda_d(), config.beta_cold());
  NonequilibriumState a_prime = adiabatic_stroke(d, model, lambda_a);
  ThermalState a = thermal_state(model, lambda_a, config.beta_hot());
  return CycleTrace{std::move(a), std::move(b), std::move(c_prime), std::move(c), std::move(d), std::move(a_prime),
                    report};
}

CycleReport run_cycle(const SpectrumModel& model, const EngineConfig& config, double lambda_c, double lambda_a) {
  return evaluate_cycle(model, config, lambda_c, lambda_a);
}

ScaleInvarianceCheck check_scale_invariance(const SpectrumModel& model, double lambda_from, double lambda_to,
                                            double beta_from, double beta_to) {
  if (!(beta_from > 0.0) || !(beta_to > 0.0)) throw ConfigError("inverse temperatures must be positive");
  const auto from = energy_levels(model, lambda_from);
  const auto to = energy_levels(model, lambda_to);
  const double ratio = beta_from / beta_to;  // T_to / T_from

  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t n = 0; n < from.size(); ++n) {
    for (std::size_t m = n + 1; m < from.size(); ++m) {
      const double expected = ratio * (from[n] - from[m]);
      worst = std::max(worst, std::abs((to[n] - to[m]) - expected));
      scale = std::max(scale, std::abs(expected));
    }
  }
  const double residual = scale > 0.0 ? worst / scale : worst;
  return ScaleInvarianceCheck{residual <= 1e-10, residual};
}

}  // namespace qce
