#include "qce/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qce/error.hpp"

namespace qce {

SpectrumModel::SpectrumModel(LevelExpr f, LevelExpr g, double alpha, long levels)
    : f_(std::move(f)), g_(std::move(g)), alpha_(alpha) {
  if (levels < 2) throw ConfigError("spectrum needs at least 2 levels, got " + std::to_string(levels));
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");

  f_values_ = eval_levels(f_, levels);
  g_values_ = eval_levels(g_, levels);

  std::vector<double> sorted = f_values_;
  std::sort(sorted.begin(), sorted.end());
  min_f_gap_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    if (gap == 0.0) {
      throw ConfigError("f is degenerate: value " + std::to_string(sorted[i]) + " repeats within the first " +
                        std::to_string(levels) + " levels");
    }
    min_f_gap_ = std::min(min_f_gap_, gap);
  }
  for (double v : g_values_) max_abs_g_ = std::max(max_abs_g_, std::abs(v));
}

SpectrumModel SpectrumModel::from_text(std::string_view f, std::string_view g, double alpha, long levels) {
  return SpectrumModel(parse_level_expr(f), parse_level_expr(g), alpha, levels);
}

SpectrumModel SpectrumModel::with_alpha(double alpha) const {
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
  SpectrumModel copy = *this;
  copy.alpha_ = alpha;
  return copy;
}

double SpectrumModel::perturbation_ratio(double lambda_min) const {
  return std::abs(alpha_) * max_abs_g_ / (lambda_min * min_f_gap_);
}

std::vector<double> energy_levels(const SpectrumModel& model, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be positive and finite, got " + std::to_string(lambda));
  }
  const auto f = model.f_values();
  const auto g = model.g_values();
  std::vector<double> e(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) e[n] = lambda * f[n] + model.alpha() * g[n];
  return e;
}

std::vector<double> centered(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  if (out.empty()) return out;
  const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
  const double mid = 0.5 * (*lo + *hi);
  for (double& x : out) x -= mid;
  return out;
}

}  // namespace qce
