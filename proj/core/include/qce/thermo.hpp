#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qce {

// Units: k_B = 1 throughout. Temperatures are energies, entropies are dimensionless.

/// Normalized, non-negative level populations.
class PopulationVector {
 public:
  static constexpr double kNormalizationTolerance = 1e-12;

  /// Throws std::invalid_argument if empty, negative, non-finite, or if the
  /// entries do not sum to 1 within kNormalizationTolerance.
  explicit PopulationVector(std::vector<double> p);

  std::span<const double> values() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t n) const noexcept { return p_[n]; }

  friend bool operator==(const PopulationVector&, const PopulationVector&) = default;

 private:
  std::vector<double> p_;
};

/// ln sum_n exp(-beta * levels[n]), max-shifted so it stays finite for large beta * levels.
double log_partition(std::span<const double> levels, double beta);

/// p_n = exp(-beta * levels[n] - ln Z).
PopulationVector boltzmann_populations(std::span<const double> levels, double beta);

double mean_energy(std::span<const double> levels, const PopulationVector& populations);

/// -sum p ln p, with 0 ln 0 = 0.
double gibbs_entropy(const PopulationVector& populations);

/// <O> = sum_n p_n O_n.
double weighted_mean(const PopulationVector& populations, std::span<const double> observable);

/// <O1|O2> = <(O1 - <O1>)(O2 - <O2>)>, the covariance under `populations`.
double inner_product(const PopulationVector& populations, std::span<const double> o1, std::span<const double> o2);

/// <g|g> - <f|g>^2 / <f|f>: variance of g left after regressing it on f.
///
/// g is first reduced by the affine function of f that matches it on the two
/// most populated levels (the residual is invariant under that change). The
/// leftover is then supported on weakly populated levels only, so the result
/// keeps full relative precision deep in the two-level regime where the
/// direct difference cancels catastrophically. Throws if <f|f> == 0.
double projected_variance(const PopulationVector& populations, std::span<const double> f, std::span<const double> g);

/// Entropy produced when `pre` relaxes to the equilibrium `eq` in contact with
/// the bath that defines `eq`: the relative entropy sum pre ln(pre / eq).
/// This equals (S(eq) - S(pre)) + beta (<E>_pre - <E>_eq) identically.
/// Each summand is evaluated in a form that is non-negative on its own.
double total_entropy_production(const PopulationVector& pre, const PopulationVector& eq);

/// Second-order estimate 1/2 sum (dP_n)^2 / P_n. Requires sum dP = 0 within 1e-12.
double entropy_production_quadratic(std::span<const double> delta_p, const PopulationVector& eq);

/// Equilibrium state of a spectrum at inverse temperature beta.
struct ThermalState {
  double lambda;
  double beta;
  std::vector<double> levels;
  PopulationVector populations;
  double log_z;
  double mean_energy;
  double entropy;

  double free_energy() const { return -log_z / beta; }
};

/// Builds the Boltzmann state of `levels` at `beta`; `lambda` is carried along
/// as the control parameter that produced the levels.
ThermalState equilibrium_state(std::vector<double> levels, double lambda, double beta);

}  // namespace qce
