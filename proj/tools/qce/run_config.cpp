#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qce/error.hpp"

namespace qce::app {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& section, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : section.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const json& require_object(const json& parent, const std::string& key, const std::string& where) {
  if (!parent.contains(key)) throw ConfigError(where + ": missing section '" + key + "'");
  const json& section = parent.at(key);
  if (!section.is_object()) throw ConfigError((where == "config" ? key : where + "." + key) + ": expected an object");
  return section;
}

double require_number(const json& section, const std::string& key, const std::string& where) {
  if (!section.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const json& v = section.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + "." + key + ": must be finite");
  return x;
}

long require_integer(const json& section, const std::string& key, const std::string& where) {
  if (!section.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const json& v = section.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<long>();
}

std::string require_string(const json& section, const std::string& key, const std::string& where) {
  if (!section.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const json& v = section.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

LevelExpr parse_expression(const std::string& text, const std::string& where) {
  try {
    return parse_level_expr(text);
  } catch (const ParseError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

GridAxis parse_axis(const json& section, const std::string& where) {
  reject_unknown_keys(section, where, {"min", "max", "points", "spacing"});
  GridAxis axis;
  axis.min = require_number(section, "min", where);
  axis.max = require_number(section, "max", where);
  const long points = require_integer(section, "points", where);
  if (points < 1 || points > 100000) throw ConfigError(where + ".points: must be in [1, 100000]");
  axis.points = static_cast<int>(points);
  if (section.contains("spacing")) {
    const std::string spacing = require_string(section, "spacing", where);
    if (spacing == "geometric") {
      axis.spacing = GridAxis::Spacing::Geometric;
    } else if (spacing == "linear") {
      axis.spacing = GridAxis::Spacing::Linear;
    } else {
      throw ConfigError(where + ".spacing: expected 'geometric' or 'linear'");
    }
  }
  if (!(axis.min > 0.0)) throw ConfigError(where + ".min: beta*lambda must be positive");
  if (!(axis.max >= axis.min)) throw ConfigError(where + ".max: must be >= min");
  return axis;
}

}  // namespace

std::vector<double> GridAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = min;
    return out;
  }
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    out[static_cast<std::size_t>(k)] =
        spacing == Spacing::Geometric ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  out.back() = max;
  return out;
}

RunConfig parse_run_config(std::string_view json_text, const Overrides& overrides) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown_keys(root, "config", {"spectrum", "engine", "cycle", "optimizer", "sweep"});

  const json& spectrum = require_object(root, "spectrum", "config");
  reject_unknown_keys(spectrum, "spectrum", {"f", "g", "alpha", "levels"});
  const std::string f_text = require_string(spectrum, "f", "spectrum");
  const std::string g_text = require_string(spectrum, "g", "spectrum");
  const double alpha = overrides.alpha ? *overrides.alpha : require_number(spectrum, "alpha", "spectrum");
  const long levels = overrides.levels ? *overrides.levels : require_integer(spectrum, "levels", "spectrum");
  LevelExpr f = parse_expression(f_text, "spectrum.f");
  LevelExpr g = parse_expression(g_text, "spectrum.g");
  std::optional<SpectrumModel> model;
  try {
    model.emplace(std::move(f), std::move(g), alpha, levels);
  } catch (const EvaluationError& e) {
    throw ConfigError(std::string("spectrum: ") + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("spectrum: ") + e.what());
  }

  const json& engine = require_object(root, "engine", "config");
  reject_unknown_keys(engine, "engine", {"t_cold", "t_hot", "lambda_b", "lambda_d"});
  std::optional<EngineConfig> engine_config;
  try {
    engine_config.emplace(require_number(engine, "t_cold", "engine"), require_number(engine, "t_hot", "engine"),
                          require_number(engine, "lambda_b", "engine"), require_number(engine, "lambda_d", "engine"));
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    throw ConfigError(what.rfind("engine", 0) == 0 ? what : "engine: " + what);
  }

  SearchSettings search;
  if (root.contains("optimizer")) {
    const json& opt = require_object(root, "optimizer", "config");
    reject_unknown_keys(opt, "optimizer", {"bracket_halfwidth", "tolerance", "max_iterations"});
    if (opt.contains("bracket_halfwidth")) search.bracket_halfwidth = require_number(opt, "bracket_halfwidth", "optimizer");
    if (opt.contains("tolerance")) search.tolerance = require_number(opt, "tolerance", "optimizer");
    if (opt.contains("max_iterations")) search.max_iterations = static_cast<int>(require_integer(opt, "max_iterations", "optimizer"));
    try {
      search.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("optimizer: ") + e.what());
    }
  }

  std::optional<CycleLambdas> cycle;
  if (root.contains("cycle")) {
    const json& c = require_object(root, "cycle", "config");
    reject_unknown_keys(c, "cycle", {"lambda_c", "lambda_a"});
    cycle = CycleLambdas{require_number(c, "lambda_c", "cycle"), require_number(c, "lambda_a", "cycle")};
    if (!(cycle->lambda_c > 0.0) || !(cycle->lambda_a > 0.0)) throw ConfigError("cycle: lambdas must be positive");
  }

  std::optional<SweepSpec> sweep;
  if (root.contains("sweep")) {
    const json& s = require_object(root, "sweep", "config");
    reject_unknown_keys(s, "sweep", {"beta2_lambda_b", "beta1_lambda_d"});
    sweep = SweepSpec{parse_axis(require_object(s, "beta2_lambda_b", "sweep"), "sweep.beta2_lambda_b"),
                      parse_axis(require_object(s, "beta1_lambda_d", "sweep"), "sweep.beta1_lambda_d")};
  }

  return RunConfig{f_text, g_text, std::move(*model), *engine_config, search, cycle, sweep};
}

RunConfig load_run_config(const std::filesystem::path& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), overrides);
}

}  // namespace qce::app
