#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qce/cycle.hpp"
#include "qce/optimizer.hpp"
#include "qce/spectrum.hpp"

namespace qce::app {

/// One sweep axis in the dimensionless variable beta * lambda.
struct GridAxis {
  enum class Spacing { Geometric, Linear };

  double min = 0.0;
  double max = 0.0;
  int points = 0;
  Spacing spacing = Spacing::Geometric;

  std::vector<double> values() const;
};

/// Grid over (beta2 * lambda_b, beta1 * lambda_d); temperatures come from the engine section.
struct SweepSpec {
  GridAxis beta2_lambda_b;
  GridAxis beta1_lambda_d;
};

/// Optional explicit corners for `run`; defaults to the zeroth-order corners.
struct CycleLambdas {
  double lambda_c;
  double lambda_a;
};

struct RunConfig {
  std::string f_text;
  std::string g_text;
  SpectrumModel model;
  EngineConfig engine;
  SearchSettings search;
  std::optional<CycleLambdas> cycle;
  std::optional<SweepSpec> sweep;
};

/// Command-line overrides applied before validation.
struct Overrides {
  std::optional<long> levels;
  std::optional<double> alpha;
};

/// Parses a JSON run configuration. Every failure (syntax, missing or unknown
/// keys, expression errors, physics invariants) is reported as ConfigError
/// naming the offending key.
RunConfig parse_run_config(std::string_view json_text, const Overrides& overrides = {});

RunConfig load_run_config(const std::filesystem::path& path, const Overrides& overrides = {});

}  // namespace qce::app
