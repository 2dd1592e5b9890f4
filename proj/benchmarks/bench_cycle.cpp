#include <benchmark/benchmark.h>

#include "qce/qce.hpp"
#include "qce/sweep.hpp"

namespace {

qce::SpectrumModel reference_model(long levels) {
  return qce::SpectrumModel::from_text("n+1", "(n+1)^2", 0.01, levels);
}

const qce::EngineConfig kEngine(1.0, 2.0, 1.0, 3.0);

void BM_ParseAndEvaluate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qce::SpectrumModel::from_text("n+1", "(n+1)^2", 0.01, state.range(0)));
  }
}
BENCHMARK(BM_ParseAndEvaluate)->Arg(5)->Arg(64);

void BM_RunCycle(benchmark::State& state) {
  const auto model = reference_model(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qce::run_cycle(model, kEngine, 0.47, 6.03));
}
BENCHMARK(BM_RunCycle)->Arg(2)->Arg(5)->Arg(64);

void BM_SecondOrderCorrection(benchmark::State& state) {
  const auto model = reference_model(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qce::optimized_efficiency(model, kEngine));
}
BENCHMARK(BM_SecondOrderCorrection)->Arg(5)->Arg(64);

void BM_MaximizeEfficiency(benchmark::State& state) {
  const auto model = reference_model(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qce::maximize_efficiency(model, kEngine));
}
BENCHMARK(BM_MaximizeEfficiency)->Arg(5)->Arg(64);

void BM_SweepCell(benchmark::State& state) {
  const auto model = reference_model(5);
  for (auto _ : state) benchmark::DoNotOptimize(qce::app::evaluate_cell(model, 1.0, 2.0, 0.3, 2.0, {}));
}
BENCHMARK(BM_SweepCell);

void BM_Sweep(benchmark::State& state) {
  const auto model = reference_model(5);
  const qce::app::GridAxis axis{1e-3, 100.0, static_cast<int>(state.range(0))};
  const qce::app::SweepSpec spec{axis, axis};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qce::app::run_sweep(model, 1.0, 2.0, spec, {}, static_cast<unsigned>(state.range(1))));
  }
}
BENCHMARK(BM_Sweep)->Args({20, 1})->Args({20, 0})->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
