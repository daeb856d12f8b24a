#pragma once

#include <map>
#include <random>

#include <awq/chain.hpp>
#include <awq/config.hpp>

namespace awq::test {

// Dense spectra are the expensive part of most tests; share them.
inline const ModeSpectrum& cached_spectrum(int n, double d) {
  static std::map<std::pair<int, long long>, ModeSpectrum> cache;
  const auto key = std::make_pair(n, static_cast<long long>(d * 1e12));
  auto it = cache.find(key);
  if (it == cache.end()) {
    ChainGeometry geom{n, d};
    it = cache.emplace(key, diagonalize_chain(build_chain_hamiltonian(geom), geom)).first;
  }
  return it->second;
}

inline SystemConfig centered_dimer_config(int n, double d, double h,
                                          std::optional<RamanDrive> raman = std::nullopt,
                                          double detuning = 0.0) {
  ChainGeometry chain{n, d};
  DimerSpec dim;
  dim.h = h;
  dim.center = chain.nearest_midpoint(0.0);
  return build_config(chain, {dim}, raman, detuning);
}

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed5u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace awq::test
