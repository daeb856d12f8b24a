// Single-excitation time evolution and the measurement procedures built
// on it: decay-rate fits, Purcell factor, Markovian-onset detection,
// superradiance ratios, and band-gap Rabi error.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "awq/chain.hpp"
#include "awq/config.hpp"
#include "awq/hamiltonian.hpp"

namespace awq {

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXcd amplitudes;  // dim x n_times
  std::vector<BasisLabel> basis;
  std::vector<double> norms;
  bool used_integrator = false;
  std::vector<std::string> flags;

  int n_times() const { return static_cast<int>(times.size()); }
  double population(int state, int t) const { return std::norm(amplitudes(state, t)); }
  // |(<g1a| - <g1b|)/sqrt(2) psi|^2 for the full Raman basis, or the
  // antisymmetric DimerState population for effective bases.
  std::vector<double> dimer_antisym_population(int dimer) const;
  std::vector<double> chain_population() const;  // sites or modes, per basis
};

struct PropagateOptions {
  bool force_integrator = false;
  double condition_limit = 1e8;  // eigenvector condition triggering fallback
  double rtol = 1e-9;
  double atol = 1e-12;
};

// psi(t) = sum_nu c_nu e^{-i E_nu t} v_nu with transpose-biorthogonal
// coefficients (v^T v = 1); falls back to an adaptive Runge-Kutta
// integrator if the eigenbasis is ill-conditioned.
Trajectory propagate(const EffectiveHamiltonian& h, const Eigen::VectorXcd& psi0,
                     const std::vector<double>& times, const PropagateOptions& opt = {});

// Independent Dormand-Prince 5(4) path, exposed for cross-validation.
Trajectory propagate_rk(const EffectiveHamiltonian& h, const Eigen::VectorXcd& psi0,
                        const std::vector<double>& times, double rtol = 1e-9,
                        double atol = 1e-12);

// Projection of chain-site amplitudes onto the orthonormal ansatz family;
// row nu-1 holds |<xi_nu|psi(t)>|^2.
Eigen::MatrixXd mode_populations(const Trajectory& traj, const ModeSpectrum& spectrum);

// Fermi-golden-rule emission rate of the config's dimer into the chain at
// mode nu, using centred finite differences for dJ/dk. Throws at the band
// edge where the group velocity collapses.
double fgr_rate(const SystemConfig& cfg, const ModeSpectrum& spectrum, int nu);

struct FitWindow {
  double t0 = 0.0, t1 = 0.0;
  double rate = 0.0;       // minus the log-population slope
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};

struct MarkovReport {
  int resonant_nu = 0;
  double gamma_fgr = 0.0;
  double gamma_prime = 0.0;   // residual free-space linewidth
  double gamma_1d = 0.0;      // fitted chain emission rate
  double gamma0_tot = 0.0;    // fitted total-norm decay rate
  double purcell = 0.0;       // gamma_1d / gamma_prime
  double t_nm = 0.0;          // onset of the non-Markovian regime (NaN if none)
  double tau = 0.0;           // N d / v_g round-trip prediction
  double onset_threshold = 0.06;
  FitWindow dimer_fit;
  FitWindow norm_fit;
  std::vector<std::string> flags;
  Trajectory trajectory;
};

struct MarkovOptions {
  double onset_threshold = 0.06;
  double t_max_over_tau = 2.5;
  int samples = 4000;
  bool keep_trajectory = false;
};

// Resonant in-band run on the effective model: tunes the dimer to mode
// nu, propagates, fits Gamma_1D and Gamma_0^tot in the Markovian window
// [0.05, 0.8] * t_NM, and locates the onset time.
MarkovReport markov_report(const SystemConfig& cfg, const ModeSpectrum& spectrum, int nu,
                           const MarkovOptions& opt = {});

struct SuperradiancePoint {
  double energy = 0.0;
  double k = 0.0;           // guided-branch momentum at this energy
  double gamma_sym = 0.0;   // fitted collective rate into the chain
  double gamma_fgr = 0.0;   // single-dimer FGR prediction at k
  double ratio = 0.0;
  bool in_window = false;   // ratio >= n * 0.9
  double fit_r2 = 0.0;
};

// Symmetric-state collective decay across a dimer-energy grid.
std::vector<SuperradiancePoint> superradiance_scan(const SystemConfig& cfg,
                                                   const ModeSpectrum& spectrum,
                                                   const std::vector<double>& energies);

struct RabiReport {
  double first_max_time = 0.0;
  double first_max_population = 0.0;
  double error = 0.0;          // 1 - first relative maximum
  double re_g_eff_measured = 0.0;  // pi / first_max_time
  double max_chain_population = 0.0;
  bool overdamped = false;
  Trajectory trajectory;
};

struct RabiOptions {
  double re_g_eff_predicted = 0.0;  // sets the search grid; required
  int samples = 6000;
  double prominence = 0.01;
  bool keep_trajectory = false;
};

// Two-dimer band-gap exchange: initialise dimer 0 antisymmetric, locate
// the first relative maximum of its population (one full exchange
// cycle). Overdamped if no maximum shows up within 10*pi/g_eff.
RabiReport rabi_report(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                       const RabiOptions& opt);

// Least-squares line on (t, log y); rate is minus the slope.
FitWindow fit_log_decay(const std::vector<double>& t, const std::vector<double>& y,
                        double t0, double t1);

}  // namespace awq
