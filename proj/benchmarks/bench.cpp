#include <benchmark/benchmark.h>

#include "harmonet/averaging.hpp"
#include "harmonet/scenario.hpp"
#include "harmonet/symspace.hpp"

using namespace harmonet;

static void BM_EnergyAndResiduals(benchmark::State& state) {
  Scenario s = load_scenario("s2-meridian-theta");
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy(s.initial, s.p));
    benchmark::DoNotOptimize(first_variation_residuals(s.initial, s.p).max());
  }
}
BENCHMARK(BM_EnergyAndResiduals);

static void BM_SolveTorus(benchmark::State& state) {
  Scenario s = load_scenario("torus-hexagonal");
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_solve(s.initial, s.p, s.solver).iterations);
}
BENCHMARK(BM_SolveTorus)->Unit(benchmark::kMillisecond);

static void BM_HessianMatrix(benchmark::State& state) {
  Scenario s = load_scenario("s2-meridian-theta");
  HessianContext ctx(s.initial, s.p);
  for (auto _ : state) benchmark::DoNotOptimize(hessian_matrix(ctx).matrix.trace());
}
BENCHMARK(BM_HessianMatrix)->Unit(benchmark::kMillisecond);

static void BM_TraceDirect(benchmark::State& state) {
  Scenario s = load_scenario("s2-great-circle");
  HessianContext ctx(s.initial, 1);
  for (auto _ : state) benchmark::DoNotOptimize(trace_q_direct(ctx));
}
BENCHMARK(BM_TraceDirect)->Unit(benchmark::kMillisecond);

static void BM_G2FullReport(benchmark::State& state) {
  SymSpaceContext ctx;
  for (auto _ : state) benchmark::DoNotOptimize(g2_full_report(ctx, 100, 7).passed());
}
BENCHMARK(BM_G2FullReport)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
