// Serial reference against the OpenMP paths.
//
//   ./bench_engine --benchmark_filter=Pressure

#include <benchmark/benchmark.h>

#include "casimir/engine.hpp"
#include "casimir/sweep.hpp"

namespace {

casimir::PlatePairConfig co_pair(double separation) {
  casimir::PlatePairConfig cfg;
  cfg.plate1 = casimir::builtin_material("Co");
  cfg.plate2 = casimir::builtin_material("Au");
  cfg.separation = separation;
  return cfg;
}

void BM_Pressure(benchmark::State& state, casimir::Execution exec) {
  // Small separations need hundreds of Matsubara terms.
  const casimir::PlatePairConfig cfg = co_pair(static_cast<double>(state.range(0)) / 1000.0);
  casimir::NumericsPolicy policy;
  std::size_t terms = 0;
  for (auto _ : state) {
    const auto r = casimir::pressure(cfg, policy, exec);
    terms = r.terms_used;
    benchmark::DoNotOptimize(r.pressure);
  }
  state.counters["terms"] = static_cast<double>(terms);
}

void BM_Sweep(benchmark::State& state, casimir::Execution exec) {
  casimir::SweepSpec spec;
  spec.config = co_pair(1.0);
  spec.start = 0.05;
  spec.stop = 6.0;
  spec.points = static_cast<std::size_t>(state.range(0));
  spec.grid = casimir::GridKind::logarithmic;
  const auto v = casimir::standard_variants();
  spec.variants.assign(v.begin(), v.end());
  for (auto _ : state) {
    const auto r = casimir::run_sweep(spec, exec);
    benchmark::DoNotOptimize(r.cells.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Pressure, serial, casimir::Execution::serial)->Arg(20)->Arg(100)->Arg(1000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Pressure, parallel, casimir::Execution::parallel)->Arg(20)->Arg(100)->Arg(1000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, serial, casimir::Execution::serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, casimir::Execution::parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
