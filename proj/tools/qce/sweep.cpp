#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

#include "qce/error.hpp"
#include "qce/perturbation.hpp"

namespace qce::app {

namespace {

std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::string field(const std::optional<double>& v) { return v ? fmt::format("{:.17g}", *v) : std::string{}; }

}  // namespace

SweepCell evaluate_cell(const SpectrumModel& model, double t_cold, double t_hot, double x_b, double x_d,
                        const SearchSettings& settings) {
  SweepCell cell{x_b, x_d, {}, {}, {}, {}, {}, false, "ok"};

  std::optional<EngineConfig> config;
  try {
    config.emplace(t_cold, t_hot, x_b * t_hot, x_d * t_cold);
  } catch (const ConfigError&) {
    cell.status = "unphysical";
    return cell;
  }
  cell.valid = true;
  cell.eta_carnot = config->carnot_efficiency();

  try {
    cell.eta_correction_f21 = optimized_efficiency(model, *config).eta_correction;
  } catch (const Error& e) {
    cell.status = sanitize(std::string("error: ") + e.what());
  }

  try {
    const OptimumReport opt = maximize_efficiency(model, *config, settings);
    cell.eta_exact_opt = opt.efficiency_star;
    cell.ds_cold = opt.cycle.ds_total_cold;
    cell.ds_hot = opt.cycle.ds_total_hot;
    if ((opt.bracket_hit_c || opt.bracket_hit_a) && cell.status == "ok") cell.status = "bracket_hit";
  } catch (const NotAnEngine&) {
    if (cell.status == "ok") cell.status = "not_an_engine";
  } catch (const Error& e) {
    if (cell.status == "ok") cell.status = sanitize(std::string("error: ") + e.what());
  }
  return cell;
}

std::vector<SweepCell> run_sweep(const SpectrumModel& model, double t_cold, double t_hot, const SweepSpec& spec,
                                 const SearchSettings& settings, unsigned workers) {
  const auto xs_b = spec.beta2_lambda_b.values();
  const auto xs_d = spec.beta1_lambda_d.values();
  const std::size_t total = xs_b.size() * xs_d.size();
  std::vector<SweepCell> cells(total);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t row = k / xs_b.size();
      const std::size_t col = k % xs_b.size();
      cells[k] = evaluate_cell(model, t_cold, t_hot, xs_b[col], xs_d[row], settings);
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << "beta2_lambda_b,beta1_lambda_d,eta_carnot,eta_correction_f21,eta_exact_opt,ds_cold,ds_hot,valid_flag,status\n";
  for (const SweepCell& c : cells) {
    out << fmt::format("{:.17g},{:.17g},{},{},{},{},{},{},{}\n", c.beta2_lambda_b, c.beta1_lambda_d,
                       field(c.eta_carnot), field(c.eta_correction_f21), field(c.eta_exact_opt), field(c.ds_cold),
                       field(c.ds_hot), c.valid ? "true" : "false", c.status);
  }
}

}  // namespace qce::app
