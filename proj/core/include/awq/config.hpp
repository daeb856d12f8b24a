// Validated system description: chain geometry, impurity dimers, Raman
// drive, and detunings. Everything immutable after build_config.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "awq/greens.hpp"

namespace awq {

struct ChainGeometry {
  int n = 0;       // atom count, >= 2
  double d = 0.0;  // lattice spacing in lambda0 units, 0 < d < 1/2

  // z_i = d*(i - (N+1)/2), i = 1..N: chain centred at the origin.
  double site(int i) const { return d * (i + 1 - 0.5 * (n + 1)); }  // 0-based i
  std::vector<double> positions() const;
  // Nearest midpoint between adjacent sites: aligned dimers centre there.
  double nearest_midpoint(double rho) const;
};

struct DimerSpec {
  double center = 0.0;  // rho_i, lambda0 units
  double rho0 = 0.0;    // half separation; 0 defaults to d/2 at build time
  double h = 0.0;       // standoff from the chain axis, > 0
  int parity = -1;      // working single-excitation state, -1 antisymmetric
  // atom positions r^a = (h, 0, center - rho0), r^b = (h, 0, center + rho0)
  Vec3 atom_a() const { return {h, 0.0, center - rho0}; }
  Vec3 atom_b() const { return {h, 0.0, center + rho0}; }
  double r_ab() const { return 2.0 * rho0; }
};

struct RamanDrive {
  double omega = 0.0;  // Rabi frequency, gamma0 units
  double delta = 0.0;  // one-photon detuning, gamma0 units
};

struct SystemConfig {
  ChainGeometry chain;
  std::vector<DimerSpec> dimers;
  std::optional<RamanDrive> raman;
  double impurity_detuning = 0.0;  // omega0_imp - omega0, gamma0 units

  // Free-space crosstalk |pair amplitude| between atoms of distinct
  // dimers above this threshold only warns; the model assumes they are
  // distant enough to neglect it.
  double crosstalk_threshold = 1e-2;

  std::vector<std::string> diagnostics;  // warnings collected at build

  // omega0_imp' - omega0: dressed impurity energy in the rotating frame
  // (identical to impurity_detuning without a Raman drive).
  double impurity_energy_prime() const;
  // Residual free-space linewidth of the antisymmetric dimer state,
  // Raman-reduced when a drive is present.
  double dimer_linewidth_prime(int dimer = 0) const;
  // Raman amplitude scale Omega/(2*Delta) applied to couplings.
  double raman_scale() const;

  // Returns a copy tuned so that impurity_energy_prime() == energy.
  SystemConfig tuned_to_energy(double energy) const;
};

// Validates field domains and invariants; collects warnings (physical
// regime violations) into diagnostics. Throws ConfigError on domain
// violations.
SystemConfig build_config(ChainGeometry chain, std::vector<DimerSpec> dimers,
                          std::optional<RamanDrive> raman, double impurity_detuning,
                          double crosstalk_threshold = 1e-2);

SystemConfig config_from_json(const nlohmann::json& j);
SystemConfig config_from_file(const std::string& path);
nlohmann::json config_to_json(const SystemConfig& cfg);

}  // namespace awq
