// Free-space dyadic Green's function (zz component, z-polarised dipoles)
// and the derived two-atom coherent/dissipative couplings.

#pragma once

#include <array>
#include <complex>

namespace awq {

using Vec3 = std::array<double, 3>;

// Coherent shift g and dissipative rate gamma of a pair of z-polarised
// atoms, packaged with the complex amplitude g - i*gamma/2 that enters
// the non-Hermitian Hamiltonian.
struct PairCoupling {
  double g = 0.0;
  double gamma = 0.0;
  std::complex<double> amplitude() const { return {g, -0.5 * gamma}; }
};

// G0^zz(r1, r2) from the closed form of the spherical-wave double
// z-derivative, in powers of 1/(k0 R). Throws NumericError at R = 0.
std::complex<double> greens_zz(const Vec3& r1, const Vec3& r2);

// -3*pi*gamma0*G0^zz split into (g, gamma); returns (0, gamma0) for
// coincident points. Distinct atoms closer than 1e-3*lambda0 are
// rejected: the near-field 1/R^3 divergence is left unregularised.
PairCoupling pair_amplitude(const Vec3& r1, const Vec3& r2);

// On-axis two-atom shift/rate at separation r (direct evaluation of the
// closed form, kept independent of greens_zz as a cross-check path).
PairCoupling on_axis_pair(double r);

// Eigenvalue data of the two-atom block for parity lambda = +-1:
// energy shift lambda*g_ab relative to the impurity frequency, and
// linewidth gamma0 + lambda*gamma_ab.
struct DimerEigenpair {
  double energy_shift = 0.0;
  double linewidth = 0.0;
};
DimerEigenpair dimer_eigenpair(double r_ab, int lambda);

inline double min_atom_separation() { return 1e-3; }

}  // namespace awq
