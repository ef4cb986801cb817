// Microbenchmarks for the hot paths: the counter-based generator, the chain
// Monte Carlo samplers, the closed-form evaluators, and the tridiagonal
// finite-difference solves.

#include <benchmark/benchmark.h>

#include <cmath>

#include "skewlab/closed_form.hpp"
#include "skewlab/fd_oracle.hpp"
#include "skewlab/function_catalog.hpp"
#include "skewlab/model.hpp"
#include "skewlab/philox.hpp"
#include "skewlab/walk_engine.hpp"

namespace {

using namespace skewlab;

ModelSpec line_spec() {
  return validate(ModelSpec{ModelKind::Line, Geometry{0.0, 1.0, 0.25}, SkewParams{0.3, 2.0}});
}

ModelSpec bessel_spec() {
  return validate(ModelSpec{ModelKind::Bessel2, Geometry{0.5, 1.0, 0.25}, SkewParams{0.6, 0.5}});
}

void BM_PhiloxU64(benchmark::State& state) {
  Philox4x32 rng(42, 7);
  std::uint64_t acc = 0;
  for (auto _ : state) acc += rng.next_u64();
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxU64);

void BM_PhiloxDouble(benchmark::State& state) {
  Philox4x32 rng(42, 7);
  double acc = 0.0;
  for (auto _ : state) acc += rng.next_double();
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxDouble);

void BM_ClosedFormMeanExit(benchmark::State& state) {
  const ModelSpec spec = state.range(0) ? bessel_spec() : line_spec();
  double x = spec.geometry.l + 0.6 * (spec.geometry.ell - spec.geometry.l);
  double acc = 0.0;
  for (auto _ : state) acc += mean_exit(spec, x);
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClosedFormMeanExit)->Arg(0)->Arg(1);

void BM_ChainPaths(benchmark::State& state) {
  const ModelSpec spec = state.range(0) ? bessel_spec() : line_spec();
  const ChainSpec chain = build_chain(spec, 0.01);
  const double x0 = spec.geometry.l + 0.5 * (spec.geometry.ell - spec.geometry.l);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const ExitStats stats = simulate_exit(chain, x0, 1000, seed++, 1);
    benchmark::DoNotOptimize(stats.time.mean);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ChainPaths)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ElasticPaths(benchmark::State& state) {
  const ModelSpec spec = line_spec();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const EstimatorResult r =
        simulate_reflected_elastic(spec, 1.0, FunctionSpec::one(), 0.5, 1000, seed++, 0.01, 1);
    benchmark::DoNotOptimize(r.mean);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ElasticPaths)->Unit(benchmark::kMillisecond);

void BM_FdSolve(benchmark::State& state) {
  const ModelSpec spec = state.range(0) ? bessel_spec() : line_spec();
  for (auto _ : state) {
    const FdSolution sol = solve_exit_bvp(spec, FunctionSpec::one(), 1e-3);
    benchmark::DoNotOptimize(sol.v.back());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FdSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
