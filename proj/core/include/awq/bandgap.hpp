// Band-gap machinery: chain-mediated long-range dimer-dimer coupling
// (discrete sum and continuum closed form), interaction length, error
// budget, and the optimal-detuning protocol.

#pragma once

#include <complex>

#include "awq/chain.hpp"
#include "awq/config.hpp"

namespace awq {

struct LongRangeCoupling {
  std::complex<double> g_eff;   // gamma0 units, alternating phase excluded
  std::complex<double> length;  // l = sqrt(A~_d / delta), in d/pi exponent units
  double delta = 0.0;           // detuning from the extrapolated band edge
  double delta2 = 0.0;          // detuning from the highest discrete mode
  double epsilon = 0.0;         // Re g_eff / delta
  std::complex<double> phase;   // e^{i (pi/d)(rho_i - rho_j)}, tracked separately
  enum class Method { Discrete, Continuum } method = Method::Discrete;
};

// Envelope-resolved sum over the guided modes of the finite spectrum at
// dressed dimer energy omega_prime. Throws NumericError when the energy
// is within one linewidth of a guided mode.
LongRangeCoupling g_eff_discrete(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                                 const BandEdgeFit& fit, int i, int j, double omega_prime);

// Continuum closed form at detuning delta > 0 above the band edge.
LongRangeCoupling g_eff_continuum(const SystemConfig& cfg, const BandEdgeFit& fit,
                                  int i, int j, double delta);

// g_eff / Gamma'_{0-} at fixed epsilon = g_eff/delta, with the
// epsilon^{1/3} (Delta/Omega)^{2/3} structure; delta is solved
// self-consistently from the continuum form.
double g_eff_ratio(const SystemConfig& cfg, const BandEdgeFit& fit, int i, int j,
                   double epsilon);

// Solve delta such that the continuum g_eff(delta)/delta equals epsilon.
double solve_delta_continuum(const SystemConfig& cfg, const BandEdgeFit& fit, int i, int j,
                             double epsilon);
// Same self-consistency against the discrete sum.
double solve_delta_discrete(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                            const BandEdgeFit& fit, int i, int j, double epsilon);

// First-order bound on the population transferred to the chain.
double chain_population_bound(const SystemConfig& cfg, double epsilon);

struct ErrorBudget {
  double decay_term = 0.0;      // pi Gamma'_{0-} / Re g_eff
  double linewidth_term = 0.0;  // 2 pi |Im g_eff| / Re g_eff
  double chain_bound = 0.0;
  double total = 0.0;
  double delta2_opt = 0.0;
  double error_opt = 0.0;
};

// Error budget of one exchange cycle at dressed energy omega_prime,
// using the discrete coupling between dimers i and j.
ErrorBudget error_budget(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                         const BandEdgeFit& fit, int i, int j, double omega_prime);

struct OptimalProtocol {
  double delta2_opt = 0.0;      // closed form, edge coupling at the envelope antinode
  double error_opt = 0.0;
  double delta2_numeric = 0.0;  // argmin of the two-term error, full envelopes
  double error_numeric = 0.0;
  // two-term error at arbitrary delta2 (single top-mode model)
  double decay_coefficient = 0.0;      // error = a*delta2 + b/delta2
  double linewidth_coefficient = 0.0;
  double error_at(double delta2) const {
    return decay_coefficient * delta2 + linewidth_coefficient / delta2;
  }
};

OptimalProtocol optimal_protocol(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                                 const BandEdgeFit& fit);

}  // namespace awq
