// Chain Hamiltonian, its non-Hermitian eigenmodes labelled by
// quasi-momentum, and the quadratic band-edge parameters A_d, gamma_N.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "awq/config.hpp"

namespace awq {

struct ChainHamiltonian {
  Eigen::MatrixXcd matrix;  // complex symmetric, diagonal -i*gamma0/2
  std::vector<double> positions;
};

ChainHamiltonian build_chain_hamiltonian(const ChainGeometry& geometry);
ChainHamiltonian build_chain_hamiltonian(const std::vector<double>& positions);

// Standing-wave ansatz xi_{k_nu}, k_nu*d = pi*nu/(N+1); cosine for odd nu,
// sine for even nu, prefactor sqrt(2/(N+1)). Exactly orthonormal on the
// centred grid. nu is 1-based.
Eigen::VectorXd ansatz_mode(int nu, const ChainGeometry& geometry);

struct Mode {
  int nu = 0;          // ansatz label, 1..N
  double k = 0.0;      // quasi-momentum, rad / lambda0
  double energy = 0.0; // J_k, gamma0 units, measured from omega0
  double gamma = 0.0;  // linewidth Gamma_k
  int parity = 0;      // +1 even under z -> -z, -1 odd
  bool guided = false; // k > k0
  double overlap = 0.0;  // |<xi_nu | v>| of the assignment
};

struct ModeSpectrum {
  int n = 0;
  double d = 0.0;
  std::vector<Mode> modes;   // ordered by nu
  Eigen::MatrixXcd vectors;  // column nu-1: right eigenvector, v^T v = 1
  Eigen::MatrixXd ansatz;    // column nu-1: xi_nu
  std::vector<std::string> diagnostics;

  const Mode& mode(int nu) const { return modes.at(nu - 1); }
  std::complex<double> eigenvalue(int nu) const {
    const Mode& m = mode(nu);
    return {m.energy, -0.5 * m.gamma};
  }
  // dJ/dk by centred differences on the discrete (k_nu, J) data.
  double group_velocity(int nu) const;
  int first_guided() const;  // smallest guided nu
  double min_guided_gamma() const;
  // Linear interpolation k(E) on the guided branch near energy E.
  double guided_k_at_energy(double energy) const;
  double energy_at_k(double k) const;
};

// Full eigendecomposition of the chain Hamiltonian; every eigenvector is
// assigned the ansatz label nu of maximal overlap, greedily by descending
// overlap with |J| mismatch as tie-break. The assignment is a bijection.
ModeSpectrum diagonalize_chain(const ChainHamiltonian& h, const ChainGeometry& geometry);
ModeSpectrum make_spectrum(const SystemConfig& cfg);

struct BandEdgeFit {
  double a_d = 0.0;      // curvature of J at the band edge
  double gamma_n = 0.0;  // linewidth scale: Gamma_mu ~ gamma_n mu^2/N^2
  double j_edge = 0.0;   // J_{pi/d} extrapolated to x = 0
  double residual = 0.0; // rms of the J fit
  std::complex<double> a_tilde() const { return {a_d, 0.5 * gamma_n}; }
};

// Least-squares quadratic fits over the 5 highest-k guided modes:
// J = J_edge - A_d x^2 with x = 1 - k d/pi, and Gamma = gamma_N (mu/N)^2.
BandEdgeFit fit_band_edge(const ModeSpectrum& spectrum);

// A_d from the closed-form expansion of the infinite-chain dispersion.
// Domain 0 < d < 1/2.
double band_edge_closed_form(double d);

}  // namespace awq
