#include <benchmark/benchmark.h>

#include "relaxlab/bony.hpp"
#include "relaxlab/dyadic.hpp"
#include "relaxlab/euler.hpp"
#include "relaxlab/pme.hpp"
#include "relaxlab/random_fields.hpp"

using namespace relaxlab;

namespace {

PeriodicGrid grid_for(const benchmark::State& state) {
  return PeriodicGrid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
}

void BM_FieldRoundTrip(benchmark::State& state) {
  const PeriodicGrid g = grid_for(state);
  Rng rng(1);
  const ScalarField f = random_smooth_field(g, rng);
  for (auto _ : state) {
    std::vector<double> v(f.values().begin(), f.values().end());
    benchmark::DoNotOptimize(ScalarField(g, std::move(v)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_FieldRoundTrip)->Args({1, 256})->Args({1, 4096})->Args({2, 128})->Args({2, 512});

void BM_BesovNorm(benchmark::State& state) {
  const PeriodicGrid g = grid_for(state);
  const DyadicPartition P(g);
  Rng rng(2);
  const ScalarField f = random_smooth_field(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(P, f, 1.5, 2.0, 1.0, false).value);
}
BENCHMARK(BM_BesovNorm)->Args({1, 256})->Args({1, 4096})->Args({2, 128});

void BM_BonySplit(benchmark::State& state) {
  const PeriodicGrid g = grid_for(state);
  const DyadicPartition P(g);
  Rng rng(3);
  const ScalarField f = random_smooth_field(g, rng);
  const ScalarField h = random_smooth_field(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bony_split(P, f, h).residual);
}
BENCHMARK(BM_BonySplit)->Args({1, 512})->Args({2, 128});

void BM_EulerStep(benchmark::State& state) {
  SolverConfig cfg;
  cfg.grid = grid_for(state);
  cfg.tau = 0.25;
  cfg.data.kind = DataKind::multi_mode;
  const EulerState st = initialize(cfg);
  const double h = 0.5 * std::min(step_caps(st, cfg).transport, step_caps(st, cfg).acoustic);
  for (auto _ : state) benchmark::DoNotOptimize(step(st, h, cfg));
}
BENCHMARK(BM_EulerStep)->Args({1, 256})->Args({1, 1024})->Args({2, 64});

void BM_PmeStep(benchmark::State& state) {
  const PeriodicGrid g = grid_for(state);
  Rng rng(4);
  const ScalarField N = add_constant(0.1 * random_smooth_field(g, rng), 1.0);
  const PressureLaw law(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(pme_step(N, 1e-3, law, 1.0));
}
BENCHMARK(BM_PmeStep)->Args({1, 256})->Args({1, 1024});

}  // namespace
BENCHMARK_MAIN();
