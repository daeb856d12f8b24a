#include <benchmark/benchmark.h>

#include <awq/dynamics.hpp>
#include <awq/raman.hpp>

using namespace awq;

namespace {

SystemConfig inband_config(int n) {
  ChainGeometry chain{n, 0.25};
  DimerSpec dim;
  dim.h = 0.25;
  dim.center = chain.nearest_midpoint(0.0);
  return build_config(chain, {dim}, RamanDrive{0.2, 8.0}, 0.0);
}

}  // namespace

static void BM_EffectivePropagation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemConfig cfg = inband_config(n);
  const ModeSpectrum sp = make_spectrum(cfg);
  const SystemConfig tuned = cfg.tuned_to_energy(sp.mode(n - 10).energy);
  const EffectiveHamiltonian h = build_effective_raman(tuned, sp);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(h.dim());
  psi0[0] = 1.0;
  std::vector<double> times(500);
  for (int i = 0; i < 500; ++i) times[i] = (i + 1) * 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(propagate(h, psi0, times));
  state.SetComplexityN(n);
}
BENCHMARK(BM_EffectivePropagation)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_RungeKuttaStep(benchmark::State& state) {
  const SystemConfig cfg = inband_config(60);
  const ModeSpectrum sp = make_spectrum(cfg);
  const EffectiveHamiltonian h = build_effective_raman(cfg.tuned_to_energy(1.19), sp);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(h.dim());
  psi0[0] = 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(propagate_rk(h, psi0, {1.0}, 1e-9, 1e-12));
}
BENCHMARK(BM_RungeKuttaStep);
