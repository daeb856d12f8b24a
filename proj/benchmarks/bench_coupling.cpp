#include <benchmark/benchmark.h>

#include <awq/coupling.hpp>
#include <numbers>

using namespace awq;

static void BM_SingleAtomCoupling(benchmark::State& state) {
  const double d = 0.25;
  double k = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_atom_coupling(k, d, d));
    k += 0.05;
    if (k > std::numbers::pi / d) k = 0.1;
  }
}
BENCHMARK(BM_SingleAtomCoupling);

static void BM_DimerCouplingSmallRho(benchmark::State& state) {
  const double d = 0.25;
  double k = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimer_coupling(k, d, d, -1, 0.3 * d));
    k += 0.05;
    if (k > std::numbers::pi / d) k = 0.1;
  }
}
BENCHMARK(BM_DimerCouplingSmallRho);
