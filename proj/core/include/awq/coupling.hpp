// Closed-form couplings of single atoms and dimers to chain modes, with
// finite-chain standing-wave envelopes.
//
// The magnitude part (|g| - i|gamma|/2 from the reciprocal-space lattice
// sum) is always carried separately from the envelope xi, which is
// normalised to sqrt(2/(N+1)). The total per-mode coupling is their
// product.

#pragma once

#include <complex>

#include "awq/chain.hpp"
#include "awq/config.hpp"

namespace awq {

// Reciprocal-space sum of Eq.-style terms (1 - kappa_m^2) H0^(1)(...),
// kappa_m = k/k0 + m/d. Evanescent branches (|kappa_m| > 1) take
// Im sqrt(1 - kappa^2) >= 0 so the transverse field decays; for k > k0
// the result is purely real. Truncated once the last term drops below
// 1e-12 of the accumulated magnitude (|m| <= 5 always included); throws
// NumericError past |m| = 64.
//
// single_atom_coupling returns the magnitude part for one impurity at
// standoff h; dimer_coupling the magnitude for the parity-lambda dimer
// state at half-separation rho0 <= d/2 (aligned case rho0 = d/2 carries
// the sqrt(2) sin/cos(kd/2) factor of the interference).
std::complex<double> single_atom_coupling(double k, double h, double d);
std::complex<double> dimer_coupling(double k, double h, double d, int lambda, double rho0);

// Standing-wave envelope of the parity-lambda dimer state at centre
// position rho, for ansatz mode nu. For lambda = -1: sine for odd nu,
// cosine for even nu (swapped for lambda = +1), prefactor sqrt(2/(N+1)).
double finite_envelope(int nu, double rho, int lambda, const ChainGeometry& geometry);

// Infinite-chain envelope e^{i k rho}/sqrt(N), available for cross-checks.
std::complex<double> infinite_envelope(double k, double rho, int n);

// Equal-weight (+,-,-,+) superposition over a 2x2 plaquette (two dimers
// stacked at standoffs h and h + d), antisymmetric under both in-plane
// reflections. Returned normalised, basis order (a, b, a', b').
Eigen::Vector4d plaquette_state();

}  // namespace awq
