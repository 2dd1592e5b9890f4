#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qce/commands.hpp"
#include "qce/error.hpp"

namespace {

struct Args {
  std::string config;
  std::string out;
  std::optional<long> levels;
  std::optional<double> alpha;
  bool quiet = false;
};

void add_common(CLI::App* sub, Args& args) {
  sub->add_option("--config", args.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", args.out, "write CSV output to this path");
  sub->add_option("--levels", args.levels, "override spectrum.levels")->check(CLI::PositiveNumber);
  sub->add_option("--alpha", args.alpha, "override spectrum.alpha");
  sub->add_flag("--quiet", args.quiet, "suppress warnings");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qce::app;

  CLI::App app{"Quantum Carnot-like engine calculator"};
  app.require_subcommand(1);
  Args args;
  CLI::App* run = app.add_subcommand("run", "evaluate one cycle and print the state table");
  CLI::App* optimize = app.add_subcommand("optimize", "exact optimum next to the second-order prediction");
  CLI::App* sweep = app.add_subcommand("sweep", "efficiency correction over a (beta*lambda) grid");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant checks");
  for (CLI::App* sub : {run, optimize, sweep, verify}) add_common(sub, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  RunConfig config = [&]() -> RunConfig {
    try {
      return load_run_config(args.config, Overrides{args.levels, args.alpha});
    } catch (const qce::Error& e) {
      fmt::print(std::cerr, "error: {}\n", e.what());
      std::exit(kExitConfigError);
    }
  }();

  CommandOptions options;
  if (!args.out.empty()) options.out = args.out;
  options.quiet = args.quiet;

  if (run->parsed()) return cmd_run(config, options, std::cout, std::cerr);
  if (optimize->parsed()) return cmd_optimize(config, options, std::cout, std::cerr);
  if (sweep->parsed()) return cmd_sweep(config, options, std::cout, std::cerr);
  return cmd_verify(config, options, std::cout, std::cerr);
}
