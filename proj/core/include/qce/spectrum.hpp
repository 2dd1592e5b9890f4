#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qce/level_expr.hpp"

namespace qce {

/// Working medium with levels E_n(lambda) = lambda * f(n) + alpha * g(n), n = 0 .. levels-1.
///
/// Construction checks that there are at least two levels, that f and g are
/// finite at every retained level, and that the f values are pairwise
/// distinct. f need not be monotonic. The tabulated f and g values are cached;
/// the model is immutable afterwards.
class SpectrumModel {
 public:
  SpectrumModel(LevelExpr f, LevelExpr g, double alpha, long levels);

  /// Parses both expressions first; parse errors propagate as ParseError.
  static SpectrumModel from_text(std::string_view f, std::string_view g, double alpha, long levels);

  const LevelExpr& f() const noexcept { return f_; }
  const LevelExpr& g() const noexcept { return g_; }
  double alpha() const noexcept { return alpha_; }
  long levels() const noexcept { return static_cast<long>(f_values_.size()); }

  std::span<const double> f_values() const noexcept { return f_values_; }
  std::span<const double> g_values() const noexcept { return g_values_; }

  /// Same f, g and truncation with a different coupling.
  SpectrumModel with_alpha(double alpha) const;

  /// Smallest |f(n) - f(m)| over distinct levels.
  double min_f_gap() const noexcept { return min_f_gap_; }
  double max_abs_g() const noexcept { return max_abs_g_; }

  /// |alpha| * max|g| / (lambda_min * min_gap(f)). Expansions are trustworthy
  /// only when this is small; exceeding 1 is allowed.
  double perturbation_ratio(double lambda_min) const;

 private:
  LevelExpr f_;
  LevelExpr g_;
  double alpha_;
  std::vector<double> f_values_;
  std::vector<double> g_values_;
  double min_f_gap_ = 0.0;
  double max_abs_g_ = 0.0;
};

/// lambda * f(n) + alpha * g(n) for every level. Rejects lambda <= 0.
std::vector<double> energy_levels(const SpectrumModel& model, double lambda);

/// Values shifted so their minimum and maximum sit symmetrically about zero.
std::vector<double> centered(std::span<const double> values);

}  // namespace qce
