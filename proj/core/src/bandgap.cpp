#include "awq/bandgap.hpp"

#include <cmath>
#include <sstream>

#include "awq/coupling.hpp"
#include "awq/errors.hpp"
#include "awq/raman.hpp"
#include "awq/units.hpp"

namespace awq {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

double edge_magnitude(const SystemConfig& cfg, int dim) {
  const DimerSpec& d = cfg.dimers.at(dim);
  return std::abs(dimer_coupling(std::numbers::pi / cfg.chain.d, d.h, cfg.chain.d, -1, d.rho0));
}

std::complex<double> alternating_phase(const SystemConfig& cfg, int i, int j) {
  const double arg = std::numbers::pi / cfg.chain.d *
                     (cfg.dimers.at(i).center - cfg.dimers.at(j).center);
  return std::exp(kI * arg);
}
}  // namespace

LongRangeCoupling g_eff_discrete(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                                 const BandEdgeFit& fit, int i, int j, double omega_prime) {
  LongRangeCoupling out;
  out.method = LongRangeCoupling::Method::Discrete;
  out.phase = alternating_phase(cfg, i, j);
  out.delta = omega_prime - fit.j_edge;
  out.delta2 = omega_prime - spectrum.mode(spectrum.n).energy;

  const double scale = cfg.raman_scale();
  std::complex<double> sum = 0.0;
  for (const Mode& m : spectrum.modes) {
    if (!m.guided) continue;
    const double det = omega_prime - m.energy;
    if (std::abs(det) < m.gamma) {
      std::ostringstream os;
      os << "g_eff_discrete: dimer energy within a linewidth of mode nu=" << m.nu;
      throw NumericError(os.str());
    }
    const std::complex<double> gi = scale * bare_mode_coupling(cfg, spectrum, i, -1, m.nu);
    const std::complex<double> gj = scale * bare_mode_coupling(cfg, spectrum, j, -1, m.nu);
    sum += gi * gj / std::complex<double>(det, 0.5 * m.gamma);
  }
  out.g_eff = sum;
  out.length = std::sqrt(fit.a_tilde() / out.delta);
  out.epsilon = out.delta != 0.0 ? sum.real() / out.delta : 0.0;
  return out;
}

LongRangeCoupling g_eff_continuum(const SystemConfig& cfg, const BandEdgeFit& fit,
                                  int i, int j, double delta) {
  if (delta <= 0.0)
    throw ConfigError("g_eff_continuum: requires delta > 0 (use the discrete sum below the edge)");
  LongRangeCoupling out;
  out.method = LongRangeCoupling::Method::Continuum;
  out.phase = alternating_phase(cfg, i, j);
  out.delta = delta;
  out.delta2 = delta;  // no discrete reference in the continuum

  const double g_edge = cfg.raman_scale() * edge_magnitude(cfg, i);
  const double g_edge_j = cfg.raman_scale() * edge_magnitude(cfg, j);
  const double separation =
      std::abs(cfg.dimers.at(i).center - cfg.dimers.at(j).center);
  out.length = std::sqrt(fit.a_tilde() / delta);
  // N pi g'^2/(2 sqrt(A~ delta)) with the infinite-chain 1/sqrt(N)
  // envelopes already cancelled against N.
  out.g_eff = 0.5 * std::numbers::pi * g_edge * g_edge_j /
              std::sqrt(fit.a_tilde() * delta) *
              std::exp(-(std::numbers::pi / cfg.chain.d) * separation / out.length);
  out.epsilon = out.g_eff.real() / delta;
  return out;
}

namespace {

// log-domain bisection of a monotonically decreasing ratio(delta) - epsilon
template <typename F>
double bisect_epsilon(F&& f) {
  double lo = 1e-12, hi = 1.0;
  while (f(lo) < 0.0 && lo > 1e-100) lo *= 1e-2;
  while (f(hi) > 0.0 && hi < 1e6) hi *= 10.0;
  if (f(lo) < 0.0 || f(hi) > 0.0)
    throw NumericError("solve_delta: requested epsilon lies outside the reachable range");
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

double solve_delta_continuum(const SystemConfig& cfg, const BandEdgeFit& fit, int i, int j,
                             double epsilon) {
  if (epsilon <= 0.0) throw ConfigError("solve_delta: epsilon must be positive");
  return bisect_epsilon(
      [&](double delta) {
        return g_eff_continuum(cfg, fit, i, j, delta).g_eff.real() / delta - epsilon;
      });
}

double solve_delta_discrete(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                            const BandEdgeFit& fit, int i, int j, double epsilon) {
  if (epsilon <= 0.0) throw ConfigError("solve_delta: epsilon must be positive");
  // the envelope sign of Re g_eff is a phase convention; epsilon targets
  // its size
  return bisect_epsilon(
      [&](double delta) {
        const double w = fit.j_edge + delta;
        return std::abs(g_eff_discrete(cfg, spectrum, fit, i, j, w).g_eff.real()) / delta -
               epsilon;
      });
}

double g_eff_ratio(const SystemConfig& cfg, const BandEdgeFit& fit, int i, int j,
                   double epsilon) {
  if (!cfg.raman) throw ConfigError("g_eff_ratio: config has no Raman drive");
  const double delta = solve_delta_continuum(cfg, fit, i, j, epsilon);
  const std::complex<double> l = std::sqrt(fit.a_tilde() / delta);
  const double g_edge = edge_magnitude(cfg, i);  // bare magnitude; Raman enters explicitly
  const double gamma_minus = dimer_eigenpair(cfg.dimers.at(i).r_ab(), -1).linewidth;
  const double separation =
      std::abs(cfg.dimers.at(i).center - cfg.dimers.at(j).center);
  const double drive = cfg.raman->delta / cfg.raman->omega;
  const double bracket =
      std::numbers::pi * g_edge * g_edge / std::abs(std::sqrt(fit.a_tilde()));
  return std::cbrt(epsilon) / gamma_minus * std::pow(drive, 2.0 / 3.0) *
         std::pow(bracket, 2.0 / 3.0) *
         std::exp(-(2.0 * std::numbers::pi / (3.0 * cfg.chain.d)) * separation *
                  (1.0 / l).real());
}

double chain_population_bound(const SystemConfig& cfg, double epsilon) {
  if (cfg.dimers.empty()) throw ConfigError("chain_population_bound: config has no dimer");
  const double a_d = band_edge_closed_form(cfg.chain.d);
  const double g_edge = edge_magnitude(cfg, 0);  // bare edge magnitude
  return 2.5 * cfg.chain.n * std::pow(epsilon, 1.5) * std::sqrt(g_edge / a_d);
}

ErrorBudget error_budget(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                         const BandEdgeFit& fit, int i, int j, double omega_prime) {
  const LongRangeCoupling lr = g_eff_discrete(cfg, spectrum, fit, i, j, omega_prime);
  // the sign of Re g_eff is an envelope phase; only its size enters the cycle
  const double re = std::abs(lr.g_eff.real());
  if (re <= 0.0) throw NumericError("error_budget: vanishing Re g_eff");

  ErrorBudget out;
  out.decay_term = std::numbers::pi * cfg.dimer_linewidth_prime() / re;
  out.linewidth_term = 2.0 * std::numbers::pi * std::abs(lr.g_eff.imag()) / re;
  const double eps = re / (lr.delta > 0.0 ? lr.delta : lr.delta2);
  out.chain_bound = chain_population_bound(cfg, eps);
  out.total = out.decay_term + out.linewidth_term + out.chain_bound;

  const OptimalProtocol opt = optimal_protocol(cfg, spectrum, fit);
  out.delta2_opt = opt.delta2_opt;
  out.error_opt = opt.error_opt;
  return out;
}

OptimalProtocol optimal_protocol(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                                 const BandEdgeFit& fit) {
  if (cfg.dimers.size() != 2) throw ConfigError("optimal_protocol: expects two dimers");
  const int n = spectrum.n;
  const double gamma_minus = dimer_eigenpair(cfg.dimers[0].r_ab(), -1).linewidth;

  OptimalProtocol out;
  // closed forms: edge coupling at the envelope antinode (the long-chain
  // centre approximation), bare magnitudes so the drive cancels
  const double g_edge_anti = std::sqrt(2.0 / (n + 1)) * edge_magnitude(cfg, 0);
  out.delta2_opt = g_edge_anti / std::sqrt(n * n * gamma_minus / fit.gamma_n);
  out.error_opt = 2.0 * std::numbers::pi / g_edge_anti * std::sqrt(gamma_minus) /
                  std::pow(static_cast<double>(n), 1.5);

  // two-term error with the actual top-mode envelopes and its measured
  // linewidth: error = a delta2 + b / delta2
  const double gamma1 = spectrum.mode(n).gamma;
  const std::complex<double> gi = bare_mode_coupling(cfg, spectrum, 0, -1, n);
  const std::complex<double> gj = bare_mode_coupling(cfg, spectrum, 1, -1, n);
  const double g2 = std::abs((gi * gj).real());
  if (g2 <= 0.0)
    throw NumericError("optimal_protocol: dimers sit on nodes of the top mode");
  out.decay_coefficient = std::numbers::pi * gamma_minus / g2;
  out.linewidth_coefficient = std::numbers::pi * gamma1;
  out.delta2_numeric = std::sqrt(out.linewidth_coefficient / out.decay_coefficient);
  out.error_numeric = out.error_at(out.delta2_numeric);
  return out;
}

}  // namespace awq
