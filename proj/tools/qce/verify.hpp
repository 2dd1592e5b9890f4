#pragma once

#include <string>
#include <vector>

#include "qce/cycle.hpp"
#include "qce/optimizer.hpp"
#include "qce/spectrum.hpp"

namespace qce::app {

struct CheckResult {
  enum class Status { Pass, Fail, Skipped };

  std::string name;
  Status status;
  double measured;
  std::string threshold;  // human-readable acceptance condition
  std::string detail;
};

/// Runs the invariant suite on one model/engine pair: first and second law,
/// Carnot bound, Cauchy-Schwarz, heat-formula equivalence, the efficiency cross-check,
/// alpha-scaling of the expansions, two-level exactness and the dense-grid
/// optimizer cross-check. Throws NotAnEngine if the cycle cannot be run.
std::vector<CheckResult> run_verification(const SpectrumModel& model, const EngineConfig& engine,
                                          const SearchSettings& settings);

}  // namespace qce::app
