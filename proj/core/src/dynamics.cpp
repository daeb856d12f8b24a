#include "awq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "awq/errors.hpp"
#include "awq/raman.hpp"
#include "awq/units.hpp"

namespace awq {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

void fill_norms(Trajectory& traj) {
  traj.norms.resize(traj.n_times());
  for (int t = 0; t < traj.n_times(); ++t)
    traj.norms[t] = traj.amplitudes.col(t).squaredNorm();
}
}  // namespace

std::vector<double> Trajectory::dimer_antisym_population(int dimer) const {
  std::vector<double> out(n_times(), 0.0);
  int ia = -1, ib = -1, ieff = -1;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
    const BasisLabel& l = basis[i];
    if (l.kind == BasisLabel::Kind::DimerState && l.index == dimer && l.parity == -1)
      ieff = i;
    if (l.kind == BasisLabel::Kind::ImpurityLevel && l.index == dimer) {
      // |g1> levels in the full Raman basis, |e> levels in the bare one
      const bool has_g1 = std::any_of(basis.begin(), basis.end(), [&](const BasisLabel& m) {
        return m.kind == BasisLabel::Kind::ImpurityLevel && m.level == 1;
      });
      const int level = has_g1 ? 1 : 0;
      if (l.level == level && l.atom == 0) ia = i;
      if (l.level == level && l.atom == 1) ib = i;
    }
  }
  for (int t = 0; t < n_times(); ++t) {
    if (ieff >= 0)
      out[t] = std::norm(amplitudes(ieff, t));
    else if (ia >= 0 && ib >= 0)
      out[t] = 0.5 * std::norm(amplitudes(ia, t) - amplitudes(ib, t));
    else
      throw ConfigError("dimer_antisym_population: dimer not in basis");
  }
  return out;
}

std::vector<double> Trajectory::chain_population() const {
  std::vector<double> out(n_times(), 0.0);
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
    const auto kind = basis[i].kind;
    if (kind != BasisLabel::Kind::ChainSite && kind != BasisLabel::Kind::ChainMode) continue;
    for (int t = 0; t < n_times(); ++t) out[t] += std::norm(amplitudes(i, t));
  }
  return out;
}

Trajectory propagate_rk(const EffectiveHamiltonian& h, const Eigen::VectorXcd& psi0,
                        const std::vector<double>& times, double rtol, double atol) {
  // Dormand-Prince 5(4) with standard coefficients and step control.
  static const double a[7][6] = {
      {},
      {1. / 5},
      {3. / 40, 9. / 40},
      {44. / 45, -56. / 15, 32. / 9},
      {19372. / 6561, -25360. / 2187, 64448. / 6561, -212. / 729},
      {9017. / 3168, -355. / 33, 46732. / 5247, 49. / 176, -5103. / 18656},
      {35. / 384, 0., 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84}};
  static const double b5[7] = {35. / 384, 0., 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84, 0.};
  static const double b4[7] = {5179. / 57600, 0.,          7571. / 16695, 393. / 640,
                               -92097. / 339200, 187. / 2100, 1. / 40};

  const int dim = h.dim();
  auto deriv = [&](const Eigen::VectorXcd& y) { return (-kI * (h.matrix * y)).eval(); };

  Trajectory traj;
  traj.basis = h.basis;
  traj.times = times;
  traj.amplitudes.resize(dim, static_cast<int>(times.size()));
  traj.used_integrator = true;

  Eigen::VectorXcd y = psi0;
  double t = 0.0;
  const double hmax = times.empty() ? 1.0 : std::max(1e-12, times.back());
  double step = std::min(1e-2, hmax);
  std::array<Eigen::VectorXcd, 7> k;

  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t_target = times[ti];
    while (t < t_target) {
      double hstep = std::min(step, t_target - t);
      for (;;) {
        k[0] = deriv(y);
        for (int s = 1; s < 7; ++s) {
          Eigen::VectorXcd ys = y;
          for (int j = 0; j < s; ++j)
            if (a[s][j] != 0.0) ys += hstep * a[s][j] * k[j];
          k[s] = deriv(ys);
        }
        Eigen::VectorXcd y5 = y, err = Eigen::VectorXcd::Zero(dim);
        for (int s = 0; s < 7; ++s) {
          if (b5[s] != 0.0) y5 += hstep * b5[s] * k[s];
          const double db = b5[s] - b4[s];
          if (db != 0.0) err += hstep * db * k[s];
        }
        const double scale = atol + rtol * std::max(y.norm(), y5.norm());
        const double e = err.norm() / scale;
        if (e <= 1.0 || hstep <= 1e-14 * std::max(1.0, t)) {
          t += hstep;
          y = std::move(y5);
          step = hstep * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(e, 1e-10), -0.2)));
          break;
        }
        hstep *= std::min(0.9, std::max(0.2, 0.9 * std::pow(e, -0.2)));
      }
    }
    traj.amplitudes.col(static_cast<int>(ti)) = y;
  }
  fill_norms(traj);
  return traj;
}

Trajectory propagate(const EffectiveHamiltonian& h, const Eigen::VectorXcd& psi0,
                     const std::vector<double>& times, const PropagateOptions& opt) {
  if (psi0.size() != h.dim())
    throw ConfigError("propagate: state/basis size mismatch");
  if (opt.force_integrator) return propagate_rk(h, psi0, times, opt.rtol, opt.atol);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h.matrix, true);
  if (es.info() != Eigen::Success) {
    Trajectory traj = propagate_rk(h, psi0, times, opt.rtol, opt.atol);
    traj.flags.push_back("eigensolver failed; used integrator");
    return traj;
  }

  const int dim = h.dim();
  Eigen::MatrixXcd v = es.eigenvectors();
  double min_s = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim; ++i) {
    const std::complex<double> s = (v.col(i).transpose() * v.col(i))(0);
    min_s = std::min(min_s, std::abs(s));
    if (std::abs(s) > 0.0) v.col(i) /= std::sqrt(s);
  }
  // 1/min |v^T v| estimates the eigenvector condition number; a defective
  // pair sends it to infinity.
  if (min_s <= 0.0 || 1.0 / min_s > opt.condition_limit) {
    Trajectory traj = propagate_rk(h, psi0, times, opt.rtol, opt.atol);
    traj.flags.push_back("near-defective eigenbasis; used integrator");
    return traj;
  }

  Eigen::VectorXcd coeff = v.transpose() * psi0;
  // Transpose biorthogonality assumes a complex-symmetric matrix; fall
  // back to a direct solve when the reconstruction is off.
  if ((v * coeff - psi0).norm() > 1e-8 * std::max(1.0, psi0.norm()))
    coeff = v.partialPivLu().solve(psi0);

  Trajectory traj;
  traj.basis = h.basis;
  traj.times = times;
  traj.amplitudes.resize(dim, static_cast<int>(times.size()));
  const Eigen::VectorXcd& lam = es.eigenvalues();
  Eigen::VectorXcd phase(dim);
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    for (int i = 0; i < dim; ++i) phase[i] = coeff[i] * std::exp(-kI * lam[i] * times[ti]);
    traj.amplitudes.col(static_cast<int>(ti)) = v * phase;
  }
  fill_norms(traj);
  return traj;
}

Eigen::MatrixXd mode_populations(const Trajectory& traj, const ModeSpectrum& spectrum) {
  std::vector<int> site_rows;
  for (int i = 0; i < static_cast<int>(traj.basis.size()); ++i)
    if (traj.basis[i].kind == BasisLabel::Kind::ChainSite) site_rows.push_back(i);
  if (static_cast<int>(site_rows.size()) != spectrum.n)
    throw ConfigError("mode_populations: trajectory basis lacks the chain sites");

  Eigen::MatrixXcd sites(spectrum.n, traj.n_times());
  for (int r = 0; r < spectrum.n; ++r) sites.row(r) = traj.amplitudes.row(site_rows[r]);
  return (spectrum.ansatz.transpose() * sites).cwiseAbs2();
}

double fgr_rate(const SystemConfig& cfg, const ModeSpectrum& spectrum, int nu) {
  if (cfg.dimers.empty()) throw ConfigError("fgr_rate: config has no dimer");
  const Mode& m = spectrum.mode(nu);
  if (!m.guided) throw NumericError("fgr_rate: mode is not guided");
  const double vg = spectrum.group_velocity(nu);
  if (vg < 1e-3 * units::gamma0 * spectrum.d)
    throw NumericError("fgr_rate: group velocity collapses at the band edge");
  const DimerSpec& dim = cfg.dimers.front();
  const std::complex<double> mag =
      dimer_coupling(m.k, dim.h, cfg.chain.d, -1, dim.rho0);
  const double g_prime = cfg.raman_scale() * std::abs(mag);
  // 2 N d (g'/sqrt(N))^2 / v_g: the chain-length factors cancel exactly.
  return 2.0 * spectrum.d * g_prime * g_prime / vg;
}

FitWindow fit_log_decay(const std::vector<double>& t, const std::vector<double>& y,
                        double t0, double t1) {
  FitWindow w;
  w.t0 = t0;
  w.t1 = t1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1 || y[i] <= 0.0) continue;
    const double ly = std::log(y[i]);
    sx += t[i];
    sy += ly;
    sxx += t[i] * t[i];
    sxy += t[i] * ly;
    syy += ly * ly;
    ++n;
  }
  if (n < 3) throw NumericError("fit_log_decay: fewer than 3 points in the fit window");
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw NumericError("fit_log_decay: degenerate abscissa");
  const double slope = (n * sxy - sx * sy) / det;
  w.rate = -slope;
  w.intercept = (sy - slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1 || y[i] <= 0.0) continue;
    const double r = std::log(y[i]) - (w.intercept + slope * t[i]);
    ss_res += r * r;
  }
  w.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  w.points = n;
  return w;
}

namespace {

std::vector<double> geometric_grid(double t_min, double t_max, int n) {
  std::vector<double> t(n);
  const double r = std::log(t_max / t_min) / (n - 1);
  for (int i = 0; i < n; ++i) t[i] = t_min * std::exp(r * i);
  return t;
}

std::vector<double> uniform_grid(double t_max, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_max * (i + 1) / n;
  return t;
}

}  // namespace

MarkovReport markov_report(const SystemConfig& cfg, const ModeSpectrum& spectrum, int nu,
                           const MarkovOptions& opt) {
  if (cfg.dimers.size() != 1) throw ConfigError("markov_report: expects a single dimer");
  const Mode& m = spectrum.mode(nu);
  if (!m.guided) throw NumericError("markov_report: resonant mode must be guided");

  MarkovReport rep;
  rep.resonant_nu = nu;
  rep.onset_threshold = opt.onset_threshold;
  rep.gamma_fgr = fgr_rate(cfg, spectrum, nu);
  const SystemConfig tuned = cfg.tuned_to_energy(m.energy);
  rep.gamma_prime = tuned.dimer_linewidth_prime();
  rep.tau = spectrum.n * spectrum.d / spectrum.group_velocity(nu);

  const EffectiveHamiltonian h = build_effective_raman(tuned, spectrum);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(h.dim());
  psi0[h.index_of({BasisLabel::Kind::DimerState, 0, 0, 0, -1})] = 1.0;

  const double t_max = opt.t_max_over_tau * rep.tau;
  Trajectory traj = propagate(h, psi0, geometric_grid(1e-4 * t_max, t_max, opt.samples));
  const std::vector<double> pop = traj.dimer_antisym_population(0);

  const double gamma_pred = rep.gamma_fgr + rep.gamma_prime;
  rep.t_nm = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < traj.n_times(); ++i) {
    const double pred = std::exp(-gamma_pred * traj.times[i]);
    if (std::abs(pop[i] - pred) / pred > opt.onset_threshold) {
      rep.t_nm = traj.times[i];
      break;
    }
  }
  if (std::isnan(rep.t_nm)) {
    rep.flags.push_back("no 6% deviation from the Markovian prediction inside the grid");
    rep.gamma_1d = rep.gamma0_tot = rep.purcell =
        std::numeric_limits<double>::quiet_NaN();
  } else {
    if (rep.t_nm <= 1e-2 * rep.tau)
      rep.flags.push_back("onset far before the round-trip time: non-Markovian regime");
    rep.dimer_fit = fit_log_decay(traj.times, pop, 0.05 * rep.t_nm, 0.8 * rep.t_nm);
    rep.gamma_1d = rep.dimer_fit.rate - rep.gamma_prime;
    std::vector<double> norm(traj.norms.begin(), traj.norms.end());
    rep.norm_fit = fit_log_decay(traj.times, norm, 0.05 * rep.t_nm, 0.8 * rep.t_nm);
    rep.gamma0_tot = rep.norm_fit.rate;
    rep.purcell = rep.gamma_1d / rep.gamma_prime;
    if (rep.dimer_fit.r2 < 0.99)
      rep.flags.push_back("dimer-population fit has R^2 below 0.99");
  }
  if (opt.keep_trajectory) rep.trajectory = std::move(traj);
  return rep;
}

std::vector<SuperradiancePoint> superradiance_scan(const SystemConfig& cfg,
                                                   const ModeSpectrum& spectrum,
                                                   const std::vector<double>& energies) {
  const int n_dimers = static_cast<int>(cfg.dimers.size());
  if (n_dimers < 1) throw ConfigError("superradiance_scan: config has no dimers");

  std::vector<SuperradiancePoint> out;
  out.reserve(energies.size());
  for (const double energy : energies) {
    SuperradiancePoint pt;
    pt.energy = energy;
    pt.k = spectrum.guided_k_at_energy(energy);

    const SystemConfig tuned = cfg.tuned_to_energy(energy);
    // FGR prediction for one dimer at the interpolated momentum
    int nearest = spectrum.first_guided();
    for (int nu = nearest; nu <= spectrum.n; ++nu)
      if (std::abs(spectrum.mode(nu).k - pt.k) < std::abs(spectrum.mode(nearest).k - pt.k))
        nearest = nu;
    pt.gamma_fgr = fgr_rate(tuned, spectrum, nearest);

    const EffectiveHamiltonian h = build_effective_raman(tuned, spectrum);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(h.dim());
    for (int di = 0; di < n_dimers; ++di)
      psi0[h.index_of({BasisLabel::Kind::DimerState, di, 0, 0, -1})] =
          1.0 / std::sqrt(static_cast<double>(n_dimers));

    const double tau = spectrum.n * spectrum.d / spectrum.group_velocity(nearest);
    const double gamma_pred = n_dimers * pt.gamma_fgr + tuned.dimer_linewidth_prime();
    const double t_fit = std::min(tau, 3.0 / gamma_pred);
    Trajectory traj = propagate(h, psi0, geometric_grid(1e-3 * t_fit, t_fit, 1200));

    std::vector<double> pop(traj.n_times());
    for (int t = 0; t < traj.n_times(); ++t) {
      std::complex<double> amp = 0.0;
      for (int di = 0; di < n_dimers; ++di)
        amp += traj.amplitudes(h.index_of({BasisLabel::Kind::DimerState, di, 0, 0, -1}), t);
      pop[t] = std::norm(amp) / n_dimers;
    }
    const FitWindow fit = fit_log_decay(traj.times, pop, 0.05 * t_fit, 0.8 * t_fit);
    pt.gamma_sym = fit.rate - tuned.dimer_linewidth_prime();
    pt.fit_r2 = fit.r2;
    pt.ratio = pt.gamma_sym / pt.gamma_fgr;
    pt.in_window = pt.ratio >= 0.9 * n_dimers;
    out.push_back(pt);
  }
  return out;
}

RabiReport rabi_report(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                       const RabiOptions& opt) {
  if (cfg.dimers.size() != 2) throw ConfigError("rabi_report: expects exactly two dimers");
  if (opt.re_g_eff_predicted <= 0.0)
    throw ConfigError("rabi_report: needs a positive predicted Re g_eff for the grid");

  const EffectiveHamiltonian h = build_effective_raman(cfg, spectrum);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(h.dim());
  const int i0 = h.index_of({BasisLabel::Kind::DimerState, 0, 0, 0, -1});
  psi0[i0] = 1.0;

  const double t_cycle = std::numbers::pi / opt.re_g_eff_predicted;
  RabiReport rep;
  for (const double span : {1.3, 3.0, 10.0}) {
    Trajectory traj = propagate(h, psi0, uniform_grid(span * t_cycle, opt.samples));
    const std::vector<double> pop = traj.dimer_antisym_population(0);

    // Fast dimer-mode beats ride on the slow exchange envelope; detect
    // the revival on a moving-average copy and read the value off the
    // raw data (the measured maximum sits on a beat crest, where the
    // chain is momentarily empty).
    const int half = std::max(2, traj.n_times() / 150);
    std::vector<double> smooth(traj.n_times());
    for (int i = 0; i < traj.n_times(); ++i) {
      const int lo = std::max(0, i - half), hi = std::min(traj.n_times() - 1, i + half);
      double s = 0.0;
      for (int j = lo; j <= hi; ++j) s += pop[j];
      smooth[i] = s / (hi - lo + 1);
    }

    // First relative maximum of a genuine revival: the peak must stand
    // above the running minimum by the prominence (rejects ripples on
    // the initial descent) and be followed by a comparable drop before
    // any higher value (rejects mid-rise wiggles).
    int peak = -1;
    double running_min = smooth[0];
    for (int i = 1; i + 1 < traj.n_times() && peak < 0; ++i) {
      running_min = std::min(running_min, smooth[i]);
      if (!(smooth[i] >= smooth[i - 1] && smooth[i] >= smooth[i + 1])) continue;
      if (smooth[i] - running_min < opt.prominence) continue;
      for (int j = i + 1; j < traj.n_times(); ++j) {
        if (smooth[j] > smooth[i]) break;
        if (smooth[j] < smooth[i] - opt.prominence) {
          peak = i;
          break;
        }
      }
    }
    if (peak < 0) continue;

    int raw_peak = peak;
    for (int i = std::max(1, peak - 4 * half);
         i <= std::min(traj.n_times() - 2, peak + 4 * half); ++i)
      if (pop[i] > pop[raw_peak]) raw_peak = i;

    // parabolic refinement around the raw sample
    double t_star = traj.times[raw_peak], p_star = pop[raw_peak];
    {
      const double y0 = pop[raw_peak - 1], y1 = pop[raw_peak], y2 = pop[raw_peak + 1];
      const double denom = y0 - 2.0 * y1 + y2;
      if (denom < 0.0) {
        const double dt = traj.times[raw_peak] - traj.times[raw_peak - 1];
        const double shift = 0.5 * (y0 - y2) / denom;
        t_star += shift * dt;
        p_star = y1 - 0.25 * (y0 - y2) * shift;
      }
    }
    rep.first_max_time = t_star;
    rep.first_max_population = p_star;
    rep.error = std::clamp(1.0 - p_star, 0.0, 1.0);
    rep.re_g_eff_measured = std::numbers::pi / t_star;

    const std::vector<double> chain = traj.chain_population();
    rep.max_chain_population = *std::max_element(chain.begin(), chain.end());
    if (opt.keep_trajectory) rep.trajectory = std::move(traj);
    return rep;
  }
  rep.overdamped = true;
  rep.error = 1.0;
  return rep;
}

}  // namespace awq
