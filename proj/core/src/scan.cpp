#include "awq/scan.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "awq/bandgap.hpp"
#include "awq/chain.hpp"
#include "awq/config.hpp"
#include "awq/coupling.hpp"
#include "awq/dynamics.hpp"
#include "awq/errors.hpp"
#include "awq/raman.hpp"
#include "awq/version.hpp"

namespace awq {

namespace {

using nlohmann::json;

json scenario_options(const json& scenario) {
  return scenario.contains("scenario") ? scenario.at("scenario") : json::object();
}

// Guided mode nearest to k (in units of pi/d) among the modes the first
// dimer actually couples to.
int nearest_coupled_mode(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                         double k_d_over_pi) {
  const double k = k_d_over_pi * std::numbers::pi / spectrum.d;
  int best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  const double floor = 0.05 * std::sqrt(2.0 / (spectrum.n + 1));
  for (const Mode& m : spectrum.modes) {
    if (!m.guided) continue;
    if (std::abs(finite_envelope(m.nu, cfg.dimers.at(0).center, -1, cfg.chain)) < floor)
      continue;
    if (std::abs(m.k - k) < best_dist) {
      best_dist = std::abs(m.k - k);
      best = m.nu;
    }
  }
  if (best < 0) throw NumericError("no coupled guided mode near the requested k");
  return best;
}

SubcommandResult run_band(const json& scenario) {
  const SystemConfig cfg = config_from_json(scenario);
  const ModeSpectrum sp = make_spectrum(cfg);

  SubcommandResult out;
  out.table.columns = {"nu", "k_d_over_pi", "J_over_Gamma0", "Gamma_over_Gamma0",
                       "parity", "guided"};
  for (const Mode& m : sp.modes)
    out.table.add_row({std::to_string(m.nu), format_double(m.k * sp.d / std::numbers::pi),
                       format_double(m.energy), format_double(m.gamma),
                       m.parity > 0 ? "even" : "odd", m.guided ? "1" : "0"});

  out.report = {{"a_d_closed_form", band_edge_closed_form(cfg.chain.d)},
                {"min_guided_gamma", sp.min_guided_gamma()},
                {"diagnostics", sp.diagnostics}};
  out.summary = {{"min_guided_gamma", sp.min_guided_gamma()}};
  try {  // needs five guided modes; short chains still get the mode table
    const BandEdgeFit fit = fit_band_edge(sp);
    out.report["j_edge"] = fit.j_edge;
    out.report["a_d"] = fit.a_d;
    out.report["gamma_n"] = fit.gamma_n;
    out.report["fit_residual"] = fit.residual;
    out.summary.emplace_back("j_edge", fit.j_edge);
    out.summary.emplace_back("a_d", fit.a_d);
    out.summary.emplace_back("gamma_n", fit.gamma_n);
  } catch (const NumericError&) {
    out.report["band_edge_fit"] = "unavailable (fewer than five guided modes)";
  }
  return out;
}

SubcommandResult run_coupling(const json& scenario) {
  const SystemConfig cfg = config_from_json(scenario);
  if (cfg.dimers.empty()) throw ConfigError("coupling: scenario needs a dimer");
  const ModeSpectrum sp = make_spectrum(cfg);
  const bool infinite = scenario_options(scenario).value("infinite_envelope", false);
  const DimerSpec& dim = cfg.dimers.front();

  // single-atom reference at the site closest to the dimer centre
  double atom_z = cfg.chain.site(0);
  for (int i = 1; i < cfg.chain.n; ++i)
    if (std::abs(cfg.chain.site(i) - dim.center) < std::abs(atom_z - dim.center))
      atom_z = cfg.chain.site(i);

  SubcommandResult out;
  out.table.columns = {"k_d_over_pi", "re_g", "im_g", "re_gamma_half", "im_gamma_half",
                       "parity", "mode_parity"};
  auto add = [&](const Mode& m, int parity, std::complex<double> envelope,
                 std::complex<double> mag) {
    // amplitude = g - i gamma/2 with g = Re(mag), gamma/2 = -Im(mag),
    // each multiplied by the (possibly complex) envelope
    const std::complex<double> g = envelope * mag.real();
    const std::complex<double> gamma_half = envelope * (-mag.imag());
    out.table.add_row({format_double(m.k * sp.d / std::numbers::pi), format_double(g.real()),
                       format_double(g.imag()), format_double(gamma_half.real()),
                       format_double(gamma_half.imag()), std::to_string(parity),
                       m.parity > 0 ? "even" : "odd"});
  };
  for (const Mode& m : sp.modes) {
    for (int lambda : {-1, +1}) {
      const std::complex<double> mag =
          dimer_coupling(m.k, dim.h, cfg.chain.d, lambda, dim.rho0);
      const std::complex<double> env =
          infinite ? infinite_envelope(m.k, dim.center, sp.n)
                   : std::complex<double>(finite_envelope(m.nu, dim.center, lambda, cfg.chain));
      add(m, lambda, env, mag);
    }
    const std::complex<double> atom_mag = single_atom_coupling(m.k, dim.h, cfg.chain.d);
    const std::complex<double> atom_env =
        infinite ? infinite_envelope(m.k, atom_z, sp.n)
                 : std::complex<double>(std::sqrt(2.0 / (sp.n + 1)) *
                                        (m.nu % 2 == 1 ? std::cos(m.k * atom_z)
                                                       : std::sin(m.k * atom_z)));
    add(m, 0, atom_env, atom_mag);
  }
  out.report = {{"modes", sp.n}, {"infinite_envelope", infinite}};
  out.summary = {{"modes", static_cast<double>(sp.n)}};
  return out;
}

void append_trajectory_rows(CsvTable& table, const Trajectory& traj,
                            const std::vector<std::vector<double>>& dimer_pops) {
  const std::vector<double> chain = traj.chain_population();
  for (int t = 0; t < traj.n_times(); ++t) {
    std::vector<std::string> row;
    row.push_back(format_double(traj.times[t]));
    for (const auto& pop : dimer_pops) row.push_back(format_double(pop[t]));
    row.push_back(format_double(chain[t]));
    row.push_back(format_double(traj.norms[t]));
    table.add_row(row);
  }
}

json fit_to_json(const FitWindow& f) {
  return {{"t0", f.t0}, {"t1", f.t1},     {"rate", f.rate},
          {"r2", f.r2}, {"points", f.points}};
}

MarkovOptions markov_options(const json& opt) {
  MarkovOptions m;
  m.onset_threshold = opt.value("onset_threshold", 0.06);
  m.t_max_over_tau = opt.value("t_max_over_tau", 2.5);
  m.samples = opt.value("samples", 4000);
  return m;
}

int resolve_resonant_mode(const json& opt, const SystemConfig& cfg, const ModeSpectrum& sp) {
  if (opt.contains("resonant_nu")) return opt.at("resonant_nu").get<int>();
  if (opt.contains("resonant_k_d_over_pi"))
    return nearest_coupled_mode(cfg, sp, opt.at("resonant_k_d_over_pi").get<double>());
  throw ConfigError("scenario needs resonant_nu or resonant_k_d_over_pi");
}

SubcommandResult run_evolve(const json& scenario) {
  const SystemConfig cfg = config_from_json(scenario);
  if (cfg.dimers.size() != 1) throw ConfigError("evolve: scenario needs exactly one dimer");
  const ModeSpectrum sp = make_spectrum(cfg);
  const json opt = scenario_options(scenario);
  const int nu = resolve_resonant_mode(opt, cfg, sp);

  MarkovOptions mopt = markov_options(opt);
  mopt.keep_trajectory = true;
  const MarkovReport rep = markov_report(cfg, sp, nu, mopt);

  SubcommandResult out;
  out.table.columns = {"t", "pop_dimer0", "pop_chain", "norm"};
  append_trajectory_rows(out.table, rep.trajectory,
                         {rep.trajectory.dimer_antisym_population(0)});
  out.report = {{"resonant_nu", rep.resonant_nu},
                {"gamma_fgr", rep.gamma_fgr},
                {"gamma_prime", rep.gamma_prime},
                {"gamma_1d", rep.gamma_1d},
                {"gamma0_tot", rep.gamma0_tot},
                {"purcell", rep.purcell},
                {"t_nm", rep.t_nm},
                {"tau", rep.tau},
                {"onset_threshold", rep.onset_threshold},
                {"dimer_fit", fit_to_json(rep.dimer_fit)},
                {"norm_fit", fit_to_json(rep.norm_fit)},
                {"flags", rep.flags}};
  out.summary = {{"gamma_1d", rep.gamma_1d},
                 {"gamma_fgr", rep.gamma_fgr},
                 {"purcell", rep.purcell},
                 {"t_nm", rep.t_nm},
                 {"tau", rep.tau}};
  return out;
}

SubcommandResult run_purcell_scan(const json& scenario) {
  const SystemConfig cfg = config_from_json(scenario);
  if (cfg.dimers.size() != 1)
    throw ConfigError("purcell-scan: scenario needs exactly one dimer");
  const ModeSpectrum sp = make_spectrum(cfg);
  const json opt = scenario_options(scenario);
  const double k_min = opt.value("k_min", 0.80);
  const double k_max = opt.value("k_max", 0.97);
  const double k_step = opt.value("k_step", 0.01);
  if (k_step <= 0.0) throw ConfigError("purcell-scan: k_step must be positive");

  SubcommandResult out;
  out.table.columns = {"k_d_over_pi", "nu",   "gamma_1d", "gamma_fgr", "purcell",
                       "purcell_fgr", "t_nm", "tau",      "fit_r2"};
  const MarkovOptions mopt = markov_options(opt);
  int last_nu = -1;
  for (double k = k_min; k <= k_max + 1e-12; k += k_step) {
    const int nu = nearest_coupled_mode(cfg, sp, k);
    if (nu == last_nu) continue;  // grid finer than the mode spacing
    last_nu = nu;
    const MarkovReport rep = markov_report(cfg, sp, nu, mopt);
    out.table.add_row({format_double(k), std::to_string(nu), format_double(rep.gamma_1d),
                       format_double(rep.gamma_fgr), format_double(rep.purcell),
                       format_double(rep.gamma_fgr / rep.gamma_prime),
                       format_double(rep.t_nm), format_double(rep.tau),
                       format_double(rep.dimer_fit.r2)});
  }
  out.report = {{"rows", out.table.rows.size()}};
  if (!out.table.rows.empty())
    out.summary = {{"rows", static_cast<double>(out.table.rows.size())}};
  return out;
}

SubcommandResult run_superradiance(const json& scenario) {
  const SystemConfig cfg = config_from_json(scenario);
  if (cfg.dimers.empty()) throw ConfigError("superradiance: scenario needs dimers");
  const ModeSpectrum sp = make_spectrum(cfg);
  const json opt = scenario_options(scenario);

  std::vector<double> energies;
  if (opt.contains("k_d_over_pi")) {
    for (const double k : opt.at("k_d_over_pi").get<std::vector<double>>())
      energies.push_back(sp.energy_at_k(k * std::numbers::pi / sp.d));
  } else {
    const double k_min = opt.value("k_min", 0.80), k_max = opt.value("k_max", 0.95);
    const int points = opt.value("points", 16);
    for (int i = 0; i < points; ++i) {
      const double k = k_min + (k_max - k_min) * i / std::max(1, points - 1);
      energies.push_back(sp.energy_at_k(k * std::numbers::pi / sp.d));
    }
  }

  const auto pts = superradiance_scan(cfg, sp, energies);
  SubcommandResult out;
  out.table.columns = {"energy_over_gamma0", "k_d_over_pi", "gamma_sym", "gamma_fgr",
                       "ratio", "in_window", "fit_r2"};
  double best_ratio = 0.0;
  for (const auto& p : pts) {
    out.table.add_row({format_double(p.energy), format_double(p.k * sp.d / std::numbers::pi),
                       format_double(p.gamma_sym), format_double(p.gamma_fgr),
                       format_double(p.ratio), p.in_window ? "1" : "0",
                       format_double(p.fit_r2)});
    best_ratio = std::max(best_ratio, p.ratio);
  }
  out.report = {{"n_dimers", cfg.dimers.size()}, {"max_ratio", best_ratio}};
  out.summary = {{"max_ratio", best_ratio}};
  return out;
}

struct BandgapSetup {
  ModeSpectrum spectrum;
  BandEdgeFit fit;
  double omega_prime = 0.0;
  LongRangeCoupling lr;
  ErrorBudget budget;
};

BandgapSetup bandgap_setup(const SystemConfig& cfg, const json& opt) {
  if (cfg.dimers.size() != 2) throw ConfigError("band-gap scenario needs exactly two dimers");
  BandgapSetup s;
  s.spectrum = make_spectrum(cfg);
  s.fit = fit_band_edge(s.spectrum);

  if (opt.contains("delta")) {
    s.omega_prime = s.fit.j_edge + opt.at("delta").get<double>();
  } else if (opt.contains("delta2")) {
    if (opt.at("delta2").is_string() && opt.at("delta2") == "optimal")
      s.omega_prime = s.spectrum.mode(s.spectrum.n).energy +
                      optimal_protocol(cfg, s.spectrum, s.fit).delta2_opt;
    else
      s.omega_prime =
          s.spectrum.mode(s.spectrum.n).energy + opt.at("delta2").get<double>();
  } else if (opt.contains("epsilon")) {
    const double delta = solve_delta_discrete(cfg, s.spectrum, s.fit, 0, 1,
                                              opt.at("epsilon").get<double>());
    s.omega_prime = s.fit.j_edge + delta;
  } else {
    throw ConfigError("band-gap scenario needs one of delta, delta2, epsilon");
  }
  s.lr = g_eff_discrete(cfg, s.spectrum, s.fit, 0, 1, s.omega_prime);
  s.budget = error_budget(cfg, s.spectrum, s.fit, 0, 1, s.omega_prime);
  return s;
}

json lr_to_json(const LongRangeCoupling& lr) {
  return {{"re_g_eff", lr.g_eff.real()},   {"im_g_eff", lr.g_eff.imag()},
          {"delta", lr.delta},             {"delta2", lr.delta2},
          {"epsilon", lr.epsilon},         {"re_l", lr.length.real()},
          {"im_l", lr.length.imag()},
          {"method", lr.method == LongRangeCoupling::Method::Discrete ? "discrete" : "continuum"}};
}

SubcommandResult run_bandgap_rabi(const json& scenario) {
  const SystemConfig cfg0 = config_from_json(scenario);
  const json opt = scenario_options(scenario);
  const BandgapSetup s = bandgap_setup(cfg0, opt);
  const SystemConfig cfg = cfg0.tuned_to_energy(s.omega_prime);

  RabiOptions ropt;
  ropt.re_g_eff_predicted = std::abs(s.lr.g_eff.real());
  ropt.samples = opt.value("samples", 6000);
  ropt.keep_trajectory = true;
  const RabiReport rep = rabi_report(cfg, s.spectrum, ropt);

  SubcommandResult out;
  out.table.columns = {"t", "pop_dimer0", "pop_dimer1", "pop_chain", "norm"};
  if (!rep.overdamped) {
    // thin the stored trajectory to a plot-friendly row count
    const Trajectory& tr = rep.trajectory;
    const int stride = std::max(1, tr.n_times() / opt.value("csv_rows", 1500));
    Trajectory thin;
    thin.basis = tr.basis;
    for (int t = 0; t < tr.n_times(); t += stride) {
      thin.times.push_back(tr.times[t]);
      thin.norms.push_back(tr.norms[t]);
    }
    thin.amplitudes.resize(tr.amplitudes.rows(), static_cast<int>(thin.times.size()));
    for (int t = 0, c = 0; t < tr.n_times(); t += stride, ++c)
      thin.amplitudes.col(c) = tr.amplitudes.col(t);
    append_trajectory_rows(out.table, thin,
                           {thin.dimer_antisym_population(0), thin.dimer_antisym_population(1)});
  }
  out.report = {{"omega_prime", s.omega_prime},
                {"coupling", lr_to_json(s.lr)},
                {"budget",
                 {{"decay_term", s.budget.decay_term},
                  {"linewidth_term", s.budget.linewidth_term},
                  {"chain_bound", s.budget.chain_bound},
                  {"total", s.budget.total},
                  {"delta2_opt", s.budget.delta2_opt},
                  {"error_opt", s.budget.error_opt}}},
                {"error", rep.error},
                {"first_max_time", rep.first_max_time},
                {"re_g_eff_measured", rep.re_g_eff_measured},
                {"max_chain_population", rep.max_chain_population},
                {"overdamped", rep.overdamped}};
  out.summary = {{"error", rep.error},
                 {"re_g_eff", std::abs(s.lr.g_eff.real())},
                 {"re_g_eff_measured", rep.re_g_eff_measured},
                 {"half_period", rep.first_max_time},
                 {"budget_total", s.budget.total},
                 {"delta", s.lr.delta},
                 {"delta2", s.lr.delta2},
                 {"max_chain_population", rep.max_chain_population}};
  return out;
}

SubcommandResult run_bandgap(const json& scenario) {
  const SystemConfig cfg0 = config_from_json(scenario);
  const json opt = scenario_options(scenario);
  std::vector<double> l_over_d = opt.value("l_over_d", std::vector<double>{6, 8, 10, 12, 14});
  const bool with_dynamics = opt.value("with_dynamics", true);

  SubcommandResult out;
  out.table.columns = {"N",      "L_over_d", "epsilon", "delta",
                       "delta2", "re_geff",  "im_geff", "l",
                       "error_budget_total", "error_measured"};
  double last_error = std::numeric_limits<double>::quiet_NaN();
  for (const double lod : l_over_d) {
    json sc = scenario;
    // symmetric pair of aligned dimers separated by L
    const SystemConfig base = config_from_json(scenario);
    const double d = base.chain.d;
    DimerSpec proto = base.dimers.empty() ? DimerSpec{0, 0, d, -1} : base.dimers.front();
    const double half = 0.5 * lod * d;
    DimerSpec d1 = proto, d2 = proto;
    d1.center = base.chain.nearest_midpoint(-half);
    d2.center = base.chain.nearest_midpoint(d1.center + lod * d);
    sc["dimers"] = json::array();
    for (const DimerSpec* dm : {&d1, &d2})
      sc["dimers"].push_back({{"center", dm->center},
                              {"rho0", dm->rho0},
                              {"h", dm->h},
                              {"parity", dm->parity}});

    const SystemConfig cfg = config_from_json(sc);
    const BandgapSetup s = bandgap_setup(cfg, opt);
    double measured = std::numeric_limits<double>::quiet_NaN();
    if (with_dynamics) {
      RabiOptions ropt;
      ropt.re_g_eff_predicted = std::abs(s.lr.g_eff.real());
      ropt.samples = opt.value("samples", 6000);
      const RabiReport rep =
          rabi_report(cfg.tuned_to_energy(s.omega_prime), s.spectrum, ropt);
      measured = rep.error;
      last_error = measured;
    }
    out.table.add_row({std::to_string(cfg.chain.n), format_double(lod),
                       format_double(s.lr.epsilon), format_double(s.lr.delta),
                       format_double(s.lr.delta2), format_double(s.lr.g_eff.real()),
                       format_double(s.lr.g_eff.imag()),
                       format_double(s.lr.length.real()),
                       format_double(s.budget.total), format_double(measured)});
  }
  out.report = {{"rows", out.table.rows.size()}};
  out.summary = {{"rows", static_cast<double>(out.table.rows.size())},
                 {"last_error", last_error}};
  return out;
}

}  // namespace

SubcommandResult run_subcommand(const std::string& name, const nlohmann::json& scenario) {
  if (name == "band") return run_band(scenario);
  if (name == "coupling") return run_coupling(scenario);
  if (name == "evolve") return run_evolve(scenario);
  if (name == "purcell-scan") return run_purcell_scan(scenario);
  if (name == "superradiance") return run_superradiance(scenario);
  if (name == "bandgap-rabi") return run_bandgap_rabi(scenario);
  if (name == "bandgap") return run_bandgap(scenario);
  throw ConfigError("unknown subcommand: " + name);
}

std::vector<double> AxisSpec::values() const {
  if (step == 0.0) throw ConfigError("axis step must be nonzero");
  std::vector<double> v;
  if (step > 0.0)
    for (double x = start; x <= stop + 1e-12 * std::abs(step); x += step) v.push_back(x);
  else
    for (double x = start; x >= stop - 1e-12 * std::abs(step); x += step) v.push_back(x);
  if (v.empty()) throw ConfigError("axis " + field + " produces an empty grid");
  return v;
}

AxisSpec parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("axis must be field=start:stop:step");
  AxisSpec ax;
  ax.field = text.substr(0, eq);
  const std::string rhs = text.substr(eq + 1);
  const auto c1 = rhs.find(':');
  const auto c2 = rhs.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ConfigError("axis must be field=start:stop:step");
  try {
    ax.start = std::stod(rhs.substr(0, c1));
    ax.stop = std::stod(rhs.substr(c1 + 1, c2 - c1 - 1));
    ax.step = std::stod(rhs.substr(c2 + 1));
  } catch (const std::exception&) {
    throw ConfigError("axis values must be numeric: " + text);
  }
  return ax;
}

namespace {

void set_field(json& j, const std::string& dotted, double value) {
  json* cur = &j;
  std::size_t pos = 0;
  for (;;) {
    const auto dot = dotted.find('.', pos);
    const std::string key = dotted.substr(pos, dot - pos);
    if (dot == std::string::npos) {
      if (cur->contains(key) && (*cur)[key].is_number_integer())
        (*cur)[key] = static_cast<long long>(std::llround(value));
      else
        (*cur)[key] = value;
      return;
    }
    if (!cur->contains(key)) (*cur)[key] = json::object();
    cur = &(*cur)[key];
    pos = dot + 1;
  }
}

}  // namespace

bool ScanResult::all_ok() const {
  for (const auto& s : statuses)
    if (!s.ok) return false;
  return true;
}

int default_workers() {
  if (const char* env = std::getenv("AWQ_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScanResult run_scan(const nlohmann::json& scenario, const std::vector<AxisSpec>& axes,
                    const std::string& target, int workers) {
  if (axes.empty()) throw ConfigError("scan: needs at least one axis");
  std::vector<std::vector<double>> grids;
  std::size_t total = 1;
  for (const AxisSpec& ax : axes) {
    grids.push_back(ax.values());
    total *= grids.back().size();
  }

  struct Point {
    std::vector<double> coords;
    json scenario;
  };
  std::vector<Point> points(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    std::vector<double> coords(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      coords[a] = grids[a][rem % grids[a].size()];
      rem /= grids[a].size();
    }
    json sc = scenario;
    for (std::size_t a = 0; a < axes.size(); ++a) set_field(sc, axes[a].field, coords[a]);
    points[idx] = {std::move(coords), std::move(sc)};
  }

  std::vector<SubcommandResult> results(total);
  std::vector<ScanPointStatus> statuses(total);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      statuses[idx].index = static_cast<int>(idx);
      statuses[idx].coords = points[idx].coords;
      try {
        results[idx] = run_subcommand(target, points[idx].scenario);
        statuses[idx].ok = true;
      } catch (const std::exception& e) {
        statuses[idx].ok = false;
        statuses[idx].error = e.what();
      }
    }
  };
  if (workers <= 0) workers = default_workers();
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  // stable column set: axes then the summary keys of the first successful point
  std::vector<std::string> obs_keys;
  for (const auto& st : statuses)
    if (st.ok) {
      for (const auto& [k, v] : results[st.index].summary) obs_keys.push_back(k);
      break;
    }

  ScanResult out;
  for (const AxisSpec& ax : axes) out.table.columns.push_back(ax.field);
  for (const auto& k : obs_keys) out.table.columns.push_back(k);
  out.table.columns.push_back("status");

  json point_reports = json::array();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::string> row;
    for (const double c : points[idx].coords) row.push_back(format_double(c));
    if (statuses[idx].ok) {
      for (const auto& key : obs_keys) {
        double v = std::numeric_limits<double>::quiet_NaN();
        for (const auto& [k, val] : results[idx].summary)
          if (k == key) v = val;
        row.push_back(format_double(v));
      }
      row.push_back("ok");
    } else {
      for (std::size_t k = 0; k < obs_keys.size(); ++k) row.push_back("");
      row.push_back("failed");
    }
    out.table.add_row(row);
    point_reports.push_back({{"index", idx},
                             {"coords", points[idx].coords},
                             {"status", statuses[idx].ok ? "ok" : statuses[idx].error}});
  }
  out.statuses = std::move(statuses);
  out.manifest = {{"target", target}, {"points", point_reports}};
  return out;
}

int run_scenario(const std::string& config_path, const std::string& subcommand,
                 const std::string& out_dir, const std::vector<AxisSpec>& axes,
                 const std::string& scan_target, int workers) {
  const auto t0 = std::chrono::steady_clock::now();
  json scenario;
  json report;
  report["tool"] = {{"name", "awq"}, {"version", version()}};
  report["subcommand"] = subcommand;

  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open scenario file: " + config_path);
    try {
      scenario = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("scenario json parse error: ") + e.what());
    }
    report["config"] = scenario;

    std::filesystem::create_directories(out_dir);
    const std::string base = (std::filesystem::path(out_dir) / subcommand).string();

    int status = 0;
    if (subcommand == "scan") {
      if (scan_target.empty()) throw ConfigError("scan: needs a target subcommand (--run)");
      const ScanResult res = run_scan(scenario, axes, scan_target, workers);
      res.table.write(base + ".csv");
      report["results"] = res.manifest;
      if (!res.all_ok()) status = 3;
    } else {
      const SubcommandResult res = run_subcommand(subcommand, scenario);
      res.table.write(base + ".csv");
      report["results"] = res.report;
      // config diagnostics surface in the report, never on the data path
      try {
        report["diagnostics"] = config_from_json(scenario).diagnostics;
      } catch (...) {
      }
    }
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream rep(base + ".report.json");
    rep << report.dump(2) << "\n";
    return status;
  } catch (const ConfigError& e) {
    report["error"] = e.what();
    std::filesystem::create_directories(out_dir);
    std::ofstream rep((std::filesystem::path(out_dir) / (subcommand + ".report.json")));
    rep << report.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    std::filesystem::create_directories(out_dir);
    std::ofstream rep((std::filesystem::path(out_dir) / (subcommand + ".report.json")));
    rep << report.dump(2) << "\n";
    return 3;
  }
}

}  // namespace awq
