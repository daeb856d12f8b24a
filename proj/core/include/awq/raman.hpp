// Builders for the Raman-driven real-space Hamiltonian and the hierarchy
// of effective models obtained by adiabatic elimination.

#pragma once

#include "awq/chain.hpp"
#include "awq/config.hpp"
#include "awq/coupling.hpp"
#include "awq/hamiltonian.hpp"

namespace awq {

// Chain sites plus one |e> level per impurity atom, no drive (the bare
// dipole model). Cross-dimer impurity couplings are dropped unless
// requested; they matter for stacked geometries such as the plaquette.
EffectiveHamiltonian build_dipole_hamiltonian(const SystemConfig& cfg,
                                              bool cross_dimer_couplings = false);

// Full Raman model: chain sites, impurity |e> and |g1> levels, drive
// Omega/2 on each impurity atom, in the rotating frame of the drive.
// Basis size N + 4 * (number of dimers).
EffectiveHamiltonian build_full_raman(const SystemConfig& cfg,
                                      Frame frame = Frame::RotatingDrive);

// Simplified effective model: antisymmetric dimer states coupled to the
// guided (k > k0) chain modes, with Raman-rescaled energies, linewidths
// and couplings.
EffectiveHamiltonian build_effective_raman(const SystemConfig& cfg,
                                           const ModeSpectrum& spectrum);

// Second-order eliminated model retaining both dimer parities, all chain
// modes, the mode-mode correction term, and complex-shifted couplings.
EffectiveHamiltonian build_full_effective(const SystemConfig& cfg,
                                          const ModeSpectrum& spectrum);

// Bare (no Raman factor) coupling of a dimer state to an ansatz mode:
// envelope times reciprocal-space magnitude.
std::complex<double> bare_mode_coupling(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                                        int dim, int lambda, int nu);

// No-Raman elimination of the symmetric dimer state and the superradiant
// modes for a single-dimer config with E_- near the guided band.
struct EliminationCorrections {
  std::complex<double> a_minus;  // superradiant self-energy of the - state
  std::complex<double> a_plus;
  std::complex<double> b;        // superradiant-mediated -/+ mixing
  std::complex<double> symmetric_denominator;  // Delta_+ - A^+ - i Gamma_0+/2
  std::complex<double> dimer_energy;           // corrected complex E_-
  std::vector<int> guided_nus;
  std::vector<std::complex<double>> mode_energies;  // corrected, per guided nu
  std::vector<std::complex<double>> couplings;      // corrected g_k^-, per guided nu
};
EliminationCorrections adiabatic_corrections(const SystemConfig& cfg,
                                             const ModeSpectrum& spectrum);

}  // namespace awq
