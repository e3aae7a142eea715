// Serial reference vs OpenMP kernels.  On a single core the parallel rows
// measure scheduling overhead only.
#include <benchmark/benchmark.h>

#include "fncohom/oracle.hpp"
#include "fncohom/tc_bounds.hpp"

using namespace fncohom;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(2) != 0 ? ExecPolicy::Parallel : ExecPolicy::Serial;
}

void BM_OracleDimensions(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  OracleOptions opts;
  opts.policy = policy_of(state);
  const AlgebraContext ctx(m, n, 2, RingMode::TwoCopy);
  for (auto _ : state) {
    // fresh oracle each iteration: no cache hits
    auto r = oracle_dimensions(ctx, ctx.top_step() + 1, opts);
    benchmark::DoNotOptimize(r);
  }
}

void BM_IdealPower(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const AlgebraContext ctx(m, n, 2, RingMode::TwoCopy);
  for (auto _ : state) {
    auto r = ideal_power_vanishes(ctx, 2 * n + m - 1, kDefaultBudget, policy_of(state));
    benchmark::DoNotOptimize(r);
  }
}

void BM_Psi(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const AlgebraContext ctx(m, n, 2, RingMode::TwoCopy);
  for (auto _ : state) {
    auto r = psi(ctx, policy_of(state));
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_OracleDimensions)->ArgsProduct({{2, 3}, {2}, {0, 1}})->Args({3, 3, 0})->Args({3, 3, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdealPower)->ArgsProduct({{3}, {2}, {0, 1}})->Args({2, 4, 0})->Args({2, 4, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Psi)->ArgsProduct({{2, 3}, {3}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
