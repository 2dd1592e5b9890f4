#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qce/error.hpp"
#include "qce/perturbation.hpp"
#include "sweep.hpp"
#include "verify.hpp"

namespace qce::app {

namespace {

constexpr double kTailMassWarning = 1e-10;

// quantity,value rows for --out on run/optimize
using KeyValues = std::vector<std::pair<std::string, double>>;

bool write_key_values(const std::filesystem::path& path, const KeyValues& rows, std::ostream& err) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) {
    fmt::print(err, "error: cannot open '{}' for writing\n", path.string());
    return false;
  }
  csv << "quantity,value\n";
  for (const auto& [key, value] : rows) csv << fmt::format("{},{:.17g}\n", key, value);
  return static_cast<bool>(csv);
}

void print_diagnostics(const RunConfig& config, double lambda_c, double lambda_a, const CommandOptions& options,
                       std::ostream& out, std::ostream& err) {
  const double lambda_min = std::min({config.engine.lambda_b(), config.engine.lambda_d(), lambda_c, lambda_a});
  const double ratio = config.model.perturbation_ratio(lambda_min);
  const double tail = tail_mass(config.model, config.engine, lambda_c, lambda_a);
  fmt::print(out, "perturbation ratio   {:.6e}\n", ratio);
  fmt::print(out, "tail mass (p[N-1])   {:.6e}\n", tail);
  if (options.quiet) return;
  if (ratio > 1.0) {
    fmt::print(err, "warning: perturbation ratio {:.3g} exceeds 1; second-order results are unreliable\n", ratio);
  }
  if (tail > kTailMassWarning) {
    fmt::print(err, "warning: top level holds population {:.3g} > {:g}; the truncation at N={} is visible\n", tail,
               kTailMassWarning, config.model.levels());
  }
}

void print_state(std::ostream& out, const char* name, const ThermalState& s) {
  fmt::print(out, "{:<3} {:>14.8g} {:>12.6g} {:>16.10g} {:>16.10g} {:>16.10g}  equilibrium\n", name, s.lambda,
             s.beta, s.mean_energy, s.entropy, s.log_z);
}

void print_state(std::ostream& out, const char* name, const NonequilibriumState& s) {
  fmt::print(out, "{:<3} {:>14.8g} {:>12} {:>16.10g} {:>16.10g} {:>16}  inherited\n", name, s.lambda, "-",
             s.mean_energy, gibbs_entropy(s.populations), "-");
}

template <class Fn>
int guarded(Fn&& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const NotAnEngine& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitNotAnEngine;
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
}

}  // namespace

double tail_mass(const SpectrumModel& model, const EngineConfig& engine, double lambda_c, double lambda_a) {
  const auto top = static_cast<std::size_t>(model.levels() - 1);
  double worst = 0.0;
  const std::pair<double, double> corners[] = {{lambda_a, engine.beta_hot()},
                                               {engine.lambda_b(), engine.beta_hot()},
                                               {lambda_c, engine.beta_cold()},
                                               {engine.lambda_d(), engine.beta_cold()}};
  for (const auto& [lambda, beta] : corners) {
    worst = std::max(worst, thermal_state(model, lambda, beta).populations[top]);
  }
  return worst;
}

int cmd_run(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto zeroth = zeroth_order_lambdas(config.engine);
        const double lambda_c = config.cycle ? config.cycle->lambda_c : zeroth.lambda_c0;
        const double lambda_a = config.cycle ? config.cycle->lambda_a : zeroth.lambda_a0;
        const CycleTrace trace = trace_cycle(config.model, config.engine, lambda_c, lambda_a);
        const CycleReport& r = trace.report;

        fmt::print(out, "spectrum  f = {}   g = {}   alpha = {:.17g}   N = {}\n", config.f_text, config.g_text,
                   config.model.alpha(), config.model.levels());
        fmt::print(out, "engine    T1 = {:.17g}   T2 = {:.17g}   lambda_b = {:.17g}   lambda_d = {:.17g}\n\n",
                   config.engine.t_cold(), config.engine.t_hot(), config.engine.lambda_b(), config.engine.lambda_d());
        fmt::print(out, "{:<3} {:>14} {:>12} {:>16} {:>16} {:>16}\n", "", "lambda", "beta", "<E>", "S", "ln Z");
        print_state(out, "A", trace.a);
        print_state(out, "B", trace.b);
        print_state(out, "C'", trace.c_prime);
        print_state(out, "C", trace.c);
        print_state(out, "D", trace.d);
        print_state(out, "A'", trace.a_prime);
        fmt::print(out, "\n");
        fmt::print(out, "q_cold               {:.17g}\n", r.q_cold);
        fmt::print(out, "q_hot                {:.17g}\n", r.q_hot);
        fmt::print(out, "work                 {:.17g}\n", r.work);
        fmt::print(out, "efficiency           {:.17g}\n", r.efficiency);
        fmt::print(out, "carnot               {:.17g}\n", config.engine.carnot_efficiency());
        fmt::print(out, "ds_total_cold        {:.17g}\n", r.ds_total_cold);
        fmt::print(out, "ds_total_hot         {:.17g}\n", r.ds_total_hot);
        fmt::print(out, "clausius_residual    {:.3e}\n", r.clausius_residual);
        print_diagnostics(config, lambda_c, lambda_a, options, out, err);

        if (options.out) {
          const KeyValues rows{{"lambda_c", lambda_c},     {"lambda_a", lambda_a},
                               {"q_cold", r.q_cold},       {"q_hot", r.q_hot},
                               {"work", r.work},           {"efficiency", r.efficiency},
                               {"ds_total_cold", r.ds_total_cold}, {"ds_total_hot", r.ds_total_hot}};
          if (!write_key_values(*options.out, rows, err)) return static_cast<int>(kExitFailure);
        }
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_optimize(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const double alpha = config.model.alpha();
        const OptimumReport opt = maximize_efficiency(config.model, config.engine, config.search);
        const PerturbativeReport pert = optimized_efficiency(config.model, config.engine);
        const double lambda_c_pert = pert.lambda_c0 + alpha * pert.lambda_c1_opt;
        const double lambda_a_pert = pert.lambda_a0 + alpha * pert.lambda_a1_opt;

        fmt::print(out, "{:<14} {:>24} {:>24} {:>14}  {}\n", "", "exact", "second order", "difference", "expected");
        fmt::print(out, "{:<14} {:>24.17g} {:>24.17g} {:>14.3e}  O(alpha^2) ~ {:.1e}\n", "lambda_c", opt.lambda_c_star,
                   lambda_c_pert, opt.lambda_c_star - lambda_c_pert, alpha * alpha);
        fmt::print(out, "{:<14} {:>24.17g} {:>24.17g} {:>14.3e}  O(alpha^2) ~ {:.1e}\n", "lambda_a", opt.lambda_a_star,
                   lambda_a_pert, opt.lambda_a_star - lambda_a_pert, alpha * alpha);
        fmt::print(out, "{:<14} {:>24.17g} {:>24.17g} {:>14.3e}  O(alpha^3) ~ {:.1e}\n", "efficiency",
                   opt.efficiency_star, pert.eta_optimized, opt.efficiency_star - pert.eta_optimized,
                   std::abs(alpha * alpha * alpha));
        fmt::print(out, "\n");
        fmt::print(out, "eta_carnot           {:.17g}\n", pert.eta_carnot);
        fmt::print(out, "eta_correction       {:.17g}\n", pert.eta_correction);
        fmt::print(out, "lambda_c0, lambda_a0 {:.17g}, {:.17g}\n", pert.lambda_c0, pert.lambda_a0);
        fmt::print(out, "lambda_c1*, lambda_a1* {:.17g}, {:.17g}\n", pert.lambda_c1_opt, pert.lambda_a1_opt);
        fmt::print(out, "ds_total_cold        {:.17g}\n", opt.cycle.ds_total_cold);
        fmt::print(out, "ds_total_hot         {:.17g}\n", opt.cycle.ds_total_hot);
        fmt::print(out, "iterations (c, a)    {}, {}\n", opt.iterations_c, opt.iterations_a);
        print_diagnostics(config, opt.lambda_c_star, opt.lambda_a_star, options, out, err);
        if ((opt.bracket_hit_c || opt.bracket_hit_a) && !options.quiet) {
          fmt::print(err, "warning: optimum on the search bracket edge; widen optimizer.bracket_halfwidth\n");
        }

        if (options.out) {
          const KeyValues rows{{"lambda_c_star", opt.lambda_c_star},
                               {"lambda_a_star", opt.lambda_a_star},
                               {"efficiency_star", opt.efficiency_star},
                               {"lambda_c_perturbative", lambda_c_pert},
                               {"lambda_a_perturbative", lambda_a_pert},
                               {"eta_carnot", pert.eta_carnot},
                               {"eta_correction", pert.eta_correction},
                               {"eta_optimized", pert.eta_optimized},
                               {"ds_total_cold", opt.cycle.ds_total_cold},
                               {"ds_total_hot", opt.cycle.ds_total_hot}};
          if (!write_key_values(*options.out, rows, err)) return static_cast<int>(kExitFailure);
        }
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_sweep(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        if (!config.sweep) throw ConfigError("sweep: the config has no 'sweep' section");
        const auto cells = run_sweep(config.model, config.engine.t_cold(), config.engine.t_hot(), *config.sweep,
                                     config.search);
        if (options.out) {
          std::ofstream csv(*options.out, std::ios::binary);
          if (!csv) {
            fmt::print(err, "error: cannot open '{}' for writing\n", options.out->string());
            return static_cast<int>(kExitFailure);
          }
          write_sweep_csv(csv, cells);
          if (!options.quiet) {
            const auto valid = std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) { return c.valid; });
            fmt::print(err, "wrote {} cells ({} physical) to {}\n", cells.size(), valid, options.out->string());
          }
        } else {
          write_sweep_csv(out, cells);
        }
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto results = run_verification(config.model, config.engine, config.search);
        bool failed = false;
        for (const CheckResult& r : results) {
          const char* tag = r.status == CheckResult::Status::Pass   ? "PASS"
                            : r.status == CheckResult::Status::Fail ? "FAIL"
                                                                    : "SKIP";
          failed = failed || r.status == CheckResult::Status::Fail;
          if (r.status == CheckResult::Status::Skipped) {
            fmt::print(out, "[{}] {:<26} {}\n", tag, r.name, r.detail);
          } else {
            fmt::print(out, "[{}] {:<26} measured {:>12.4e}  threshold {:<22} {}\n", tag, r.name, r.measured,
                       r.threshold, r.detail);
          }
        }
        if (options.out) {
          std::ofstream csv(*options.out, std::ios::binary);
          csv << "check,status,measured,threshold\n";
          for (const CheckResult& r : results) {
            const char* status = r.status == CheckResult::Status::Pass   ? "pass"
                                 : r.status == CheckResult::Status::Fail ? "fail"
                                                                         : "skipped";
            csv << fmt::format("{},{},{:.17g},{}\n", r.name, status, r.measured, r.threshold);
          }
        }
        if (failed && !options.quiet) fmt::print(err, "verification failed\n");
        return static_cast<int>(failed ? kExitInvariantFailure : kExitOk);
      },
      err);
}

}  // namespace qce::app
