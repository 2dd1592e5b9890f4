#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "run_config.hpp"

namespace qce::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfigError = 2,
  kExitInvariantFailure = 3,
  kExitNotAnEngine = 4,
};

struct CommandOptions {
  std::optional<std::filesystem::path> out;  // CSV destination
  bool quiet = false;                        // suppress warnings and progress
};

/// Each command writes its report to `out`, diagnostics to `err`, and returns an ExitCode.
int cmd_run(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_optimize(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Largest population of the top retained level over the four corners.
double tail_mass(const SpectrumModel& model, const EngineConfig& engine, double lambda_c, double lambda_a);

}  // namespace qce::app
