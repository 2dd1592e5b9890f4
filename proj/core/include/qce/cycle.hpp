#pragma once

#include <variant>

#include "qce/spectrum.hpp"
#include "qce/thermo.hpp"

namespace qce {

/// Reservoir temperatures and the two fixed isothermal endpoints.
///
/// Invariants, checked on construction (ConfigError otherwise):
///   0 < t_cold < t_hot, lambda_b > 0, lambda_d > 0, and
///   lambda_b / t_hot < lambda_d / t_cold. Configurations on the other side
///   of that boundary cannot release heat to the cold bath.
class EngineConfig {
 public:
  EngineConfig(double t_cold, double t_hot, double lambda_b, double lambda_d);

  double t_cold() const noexcept { return t_cold_; }
  double t_hot() const noexcept { return t_hot_; }
  double beta_cold() const noexcept { return 1.0 / t_cold_; }
  double beta_hot() const noexcept { return 1.0 / t_hot_; }
  double lambda_b() const noexcept { return lambda_b_; }
  double lambda_d() const noexcept { return lambda_d_; }
  double carnot_efficiency() const noexcept { return 1.0 - t_cold_ / t_hot_; }

 private:
  double t_cold_;
  double t_hot_;
  double lambda_b_;
  double lambda_d_;
};

/// State right after a quantum adiabatic stroke: populations inherited, levels moved.
struct NonequilibriumState {
  double lambda;
  std::vector<double> levels;
  PopulationVector populations;
  double mean_energy;
};

struct RelaxationResult {
  ThermalState state;
  double ds_total;
};

/// Heats, work and entropy production of one cycle.
///
/// q_cold > 0 is heat released to the cold bath, q_hot > 0 heat drawn from the
/// hot bath, both from the entropy balance Q1 = T1 (S_B - S_D + dS_cold) and
/// Q2 = T2 (S_B - S_D - dS_hot). `work` is summed stroke by stroke (adiabatic
/// energy drops plus isothermal free-energy drops), not derived from the heats,
/// so work == q_hot - q_cold is a genuine first-law check.
struct CycleReport {
  double q_cold;
  double q_hot;
  double work;
  double efficiency;
  double ds_total_cold;  // C' -> C
  double ds_total_hot;   // A' -> A
  /// |efficiency - (1 - Q1/Q2)| with Q1, Q2 from heat_cold and heat_hot
  double clausius_residual;
};

/// The six states A, B, C', C, D, A' together with the report.
struct CycleTrace {
  ThermalState a;
  ThermalState b;
  NonequilibriumState c_prime;
  ThermalState c;
  ThermalState d;
  NonequilibriumState a_prime;
  CycleReport report;
};

/// Heats obtained stroke by stroke: relaxation energy drop plus T * dS over the
/// isotherm, with S taken as -sum p ln p.
struct StrokeHeats {
  double q_cold;
  double q_hot;
};

struct ScaleInvarianceCheck {
  bool holds;
  double max_residual;
};

/// Q2 at or below this is treated as "not an engine".
inline constexpr double kMinHotHeat = 1e-12;

ThermalState thermal_state(const SpectrumModel& model, double lambda, double beta);

NonequilibriumState adiabatic_stroke(const ThermalState& state, const SpectrumModel& model, double lambda_target);
NonequilibriumState adiabatic_stroke(const NonequilibriumState& state, const SpectrumModel& model, double lambda_target);

/// Thermalizes at fixed lambda; ds_total is the relative entropy of the inherited populations.
RelaxationResult relaxation_stroke(const NonequilibriumState& state, const SpectrumModel& model, double beta);

/// Q1 = <E_C'> - <E_D> + T1 (ln Z_C - ln Z_D), with C' carrying B's populations on lambda_c's levels.
double heat_cold(const SpectrumModel& model, const EngineConfig& config, double lambda_c);

/// Q2 = <E_B> - <E_A'> + T2 (ln Z_B - ln Z_A), with A' carrying D's populations on lambda_a's levels.
double heat_hot(const SpectrumModel& model, const EngineConfig& config, double lambda_a);

StrokeHeats stroke_heats(const SpectrumModel& model, const EngineConfig& config, double lambda_c, double lambda_a);

/// Full evaluation of the six strokes. Throws NotAnEngine when Q2 <= kMinHotHeat or Q1 <= 0.
CycleTrace trace_cycle(const SpectrumModel& model, const EngineConfig& config, double lambda_c, double lambda_a);

CycleReport run_cycle(const SpectrumModel& model, const EngineConfig& config, double lambda_c, double lambda_a);

/// Whether E_n(to) - E_m(to) = (T_to / T_from)(E_n(from) - E_m(from)) for all
/// n, m within 1e-10 relative. The residual is the worst violation relative to
/// the largest scaled gap.
ScaleInvarianceCheck check_scale_invariance(const SpectrumModel& model, double lambda_from, double lambda_to,
                                            double beta_from, double beta_to);

}  // namespace qce
