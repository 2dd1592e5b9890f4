#pragma once

#include "qce/cycle.hpp"
#include "qce/spectrum.hpp"

namespace qce {

/// Bracket and stopping rule for the 1D searches.
///
/// The search interval is [lambda0 (1 - h), lambda0 (1 + h)] around the
/// zeroth-order corner, h = bracket_halfwidth. The default h = 0.5 is far wider
/// than the O(alpha) optimal shift; widen it for large alpha.
struct SearchSettings {
  double bracket_halfwidth = 0.5;
  double tolerance = 1e-12;  // relative to lambda0
  int max_iterations = 200;

  /// Throws ConfigError unless 0 < h < 1, tolerance > 0, max_iterations > 0.
  void validate() const;
};

struct LineOptimum {
  double lambda;
  double heat;  // Q1 at the minimum or Q2 at the maximum
  int iterations;
  bool bracket_hit;  // optimum sits on a bracket endpoint
};

struct OptimumReport {
  double lambda_c_star;
  double lambda_a_star;
  double efficiency_star;
  int iterations_c;
  int iterations_a;
  bool bracket_hit_c;
  bool bracket_hit_a;
  CycleReport cycle;  // verification run at the optimum
};

/// Minimizes exact Q1 over lambda_c by golden-section search on the relative
/// entropy D(B || C), which differs from Q1 by a positive factor and a constant,
/// then refines the point by bisection on <f>_{B populations} = <f>_C.
/// Q1 is strictly convex in lambda_c, so the stationary point is the minimum.
LineOptimum minimize_q1(const SpectrumModel& model, const EngineConfig& config, const SearchSettings& settings = {});

/// Mirror image for Q2 over lambda_a (strictly concave), refined on <f>_A = <f>_{D populations}.
LineOptimum maximize_q2(const SpectrumModel& model, const EngineConfig& config, const SearchSettings& settings = {});

/// Eta = 1 - Q1/Q2 with Q1 depending on lambda_c only and Q2 on lambda_a only,
/// so the two 1D optima compose into the 2D optimum.
OptimumReport maximize_efficiency(const SpectrumModel& model, const EngineConfig& config,
                                  const SearchSettings& settings = {});

}  // namespace qce
