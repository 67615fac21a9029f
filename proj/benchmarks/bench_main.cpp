#include <benchmark/benchmark.h>

#include "rys/rys.hpp"

using namespace rys;

static void BM_MomentTable(benchmark::State& state) {
  const WeightParams w(1.0, 1.0, static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(moment_table(w, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_MomentTable)->Args({20, 50})->Args({40, 50})->Args({40, 100})->Unit(benchmark::kMillisecond);

static void BM_Recurrence(benchmark::State& state) {
  const WeightParams w(1.0, 1.0, static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(recurrence(w, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Recurrence)->Args({10, 50})->Args({30, 50})->Args({60, 100})->Unit(benchmark::kMillisecond);

static void BM_GolubWelsch(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const RecurrenceTable rt = recurrence(WeightParams(1.0, 1.0, 80), N);
  const JacobiMatrix jm = jacobi_matrix(rt, N);
  for (auto _ : state) benchmark::DoNotOptimize(golub_welsch(jm, rt.h(0)));
}
BENCHMARK(BM_GolubWelsch)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

static void BM_TodaStep(benchmark::State& state) {
  const FlowState st = flow_state(WeightParams(1.0, 1.0), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(toda_integrate(st, 0.01, 1));
}
BENCHMARK(BM_TodaStep)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Zeros(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RecurrenceTable rt = recurrence(WeightParams(1.0, 1.0), n);
  for (auto _ : state) benchmark::DoNotOptimize(zeros(rt, n));
}
BENCHMARK(BM_Zeros)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
