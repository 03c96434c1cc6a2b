#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "timo/besov.hpp"
#include "timo/decay.hpp"
#include "timo/evolution.hpp"
#include "timo/filter_bank.hpp"

using namespace timo;

namespace {

Grid1D grid_for(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  return make_grid(n, 0.05 * static_cast<double>(n));
}

void BM_ForwardInverse(benchmark::State& state) {
  const Grid1D g = grid_for(state);
  const RealField f = RealField::sample(g, [](double x) { return std::exp(-x * x); });
  for (auto _ : state) benchmark::DoNotOptimize(inverse_transform(forward_transform(f)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardInverse)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_BesovNorm(benchmark::State& state) {
  const Grid1D g = grid_for(state);
  const LPFilterBank bank = build_filter_bank(g);
  const SpectralField F = forward_transform(RealField::sample(g, [](double x) { return std::exp(-x * x); }));
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(F, BesovSpec{1.5, 2.0, 1.0, false}, bank));
}
BENCHMARK(BM_BesovNorm)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_BesovNormL1(benchmark::State& state) {
  const Grid1D g = grid_for(state);
  const LPFilterBank bank = build_filter_bank(g);
  const SpectralField F = forward_transform(RealField::sample(g, [](double x) { return std::exp(-x * x); }));
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(F, BesovSpec{1.5, 1.0, 2.0, false}, bank));
}
BENCHMARK(BM_BesovNormL1)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_PropagatorSetup(benchmark::State& state) {
  const Grid1D g = grid_for(state);
  const MaterialLaw law = MaterialLaw::cubic(2.0, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ModalPropagator(g, law));
}
BENCHMARK(BM_PropagatorSetup)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_Propagate(benchmark::State& state) {
  const Grid1D g = grid_for(state);
  const ModalPropagator prop(g, MaterialLaw::cubic(2.0, 1.0, 1.0));
  const SpectralState U0 = gaussian_state(g, 1.0);
  double t = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(prop.propagate(U0, t += 0.5));
}
BENCHMARK(BM_Propagate)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_StrangStep(benchmark::State& state) {
  SimConfig cfg;
  cfg.n_points = static_cast<std::size_t>(state.range(0));
  cfg.length = 0.05 * static_cast<double>(cfg.n_points);
  cfg.mode = EvolutionMode::nonlinear;
  cfg.dt = cfg.cfl_limit();
  const NonlinearIntegrator step(cfg);
  SpectralState S = gaussian_state(cfg.grid(), 0.01);
  for (auto _ : state) {
    step.step(S);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_StrangStep)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

}  // namespace
BENCHMARK_MAIN();
