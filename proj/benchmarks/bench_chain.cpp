#include <benchmark/benchmark.h>

#include <awq/chain.hpp>

using namespace awq;

static void BM_BuildChainHamiltonian(benchmark::State& state) {
  const ChainGeometry geom{static_cast<int>(state.range(0)), 0.25};
  for (auto _ : state) benchmark::DoNotOptimize(build_chain_hamiltonian(geom));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildChainHamiltonian)->Arg(100)->Arg(200)->Arg(400)->Complexity();

static void BM_DiagonalizeChain(benchmark::State& state) {
  const ChainGeometry geom{static_cast<int>(state.range(0)), 0.25};
  const ChainHamiltonian h = build_chain_hamiltonian(geom);
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize_chain(h, geom));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DiagonalizeChain)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_BandEdgeFit(benchmark::State& state) {
  const ChainGeometry geom{200, 0.25};
  const ModeSpectrum sp = diagonalize_chain(build_chain_hamiltonian(geom), geom);
  for (auto _ : state) benchmark::DoNotOptimize(fit_band_edge(sp));
}
BENCHMARK(BM_BandEdgeFit);

BENCHMARK_MAIN();
