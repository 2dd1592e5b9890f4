#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qce/optimizer.hpp"
#include "qce/spectrum.hpp"
#include "run_config.hpp"

namespace qce::app {

/// One grid cell. Efficiency fields are empty when the cell is unphysical or
/// the corresponding evaluation failed; `status` says why.
struct SweepCell {
  double beta2_lambda_b;
  double beta1_lambda_d;
  std::optional<double> eta_carnot;
  std::optional<double> eta_correction_f21;
  std::optional<double> eta_exact_opt;
  std::optional<double> ds_cold;
  std::optional<double> ds_hot;
  bool valid;
  std::string status;  // ok | unphysical | not_an_engine | bracket_hit | error: ...
};

/// Evaluates one cell at fixed reservoir temperatures:
/// lambda_b = x_b * t_hot, lambda_d = x_d * t_cold.
SweepCell evaluate_cell(const SpectrumModel& model, double t_cold, double t_hot, double x_b, double x_d,
                        const SearchSettings& settings);

/// Cells ordered by beta1_lambda_d (outer), then beta2_lambda_b (inner).
/// Evaluated by a bounded pool of `workers` threads (0: hardware concurrency);
/// the result order never depends on scheduling.
std::vector<SweepCell> run_sweep(const SpectrumModel& model, double t_cold, double t_hot, const SweepSpec& spec,
                                 const SearchSettings& settings, unsigned workers = 0);

/// UTF-8, comma separated, header row, LF endings, 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

}  // namespace qce::app
