#pragma once

#include <cmath>

namespace qce {

struct GoldenSectionResult {
  double x;
  double fx;
  int iterations;
  bool converged;
};

/// Minimizes a unimodal `fn` on [lo, hi] by golden-section interval reduction
/// until the bracket is narrower than `tolerance` (absolute) or `max_iterations`
/// reductions have been made. Deterministic; one new evaluation per iteration.
template <class Fn>
GoldenSectionResult golden_section_minimize(Fn&& fn, double lo, double hi, double tolerance, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = fn(x1);
  double f2 = fn(x2);
  int it = 0;
  while (hi - lo > tolerance && it < max_iterations) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = fn(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = fn(x2);
    }
    ++it;
  }
  const bool converged = hi - lo <= tolerance;
  return f1 < f2 ? GoldenSectionResult{x1, f1, it, converged} : GoldenSectionResult{x2, f2, it, converged};
}

}  // namespace qce
