// Serial reference sweep against the OpenMP sweep on the same grid.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "symopt/sweep.hpp"

using namespace symopt;

namespace {

RunConfig bench_config() {
  RunConfig c;
  c.problem.name = "logbarrier";
  c.cfg = BregmanConfig::poly(4, 1);
  c.kind = IntegratorKind::HTVI;
  c.restart = {RestartKind::Gradient, 0};
  c.looping = LoopingStrategy::off();
  c.delta = 1e-8;
  c.max_iters = 2000;
  return c;
}

SweepGrid bench_grid(int n) {
  SweepGrid g;
  g.axes = {Axis{AxisName::C, 1e-8, 1e4, n, true}, Axis{AxisName::h, 1e-4, 1e2, n, true}};
  return g;
}

void BM_SweepSerial(benchmark::State& state) {
  const SweepGrid g = bench_grid(static_cast<int>(state.range(0)));
  const RunConfig base = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(g, base));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.cell_count()));
}

void BM_SweepParallel(benchmark::State& state) {
  const SweepGrid g = bench_grid(static_cast<int>(state.range(0)));
  const RunConfig base = bench_config();
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(g, base, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.cell_count()));
  state.counters["threads"] = threads;
}

void parallel_args(benchmark::internal::Benchmark* b) {
  const int max_threads = omp_get_max_threads();
  for (int n : {16, 32})
    for (int t = 1; t <= max_threads; t *= 2) b->Args({n, t});
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Apply(parallel_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
