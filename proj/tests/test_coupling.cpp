#include <doctest.h>

#include <awq/chain.hpp>
#include <awq/coupling.hpp>
#include <awq/dynamics.hpp>
#include <awq/errors.hpp>
#include <awq/greens.hpp>
#include <awq/raman.hpp>
#include <awq/units.hpp>
#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace awq;
using std::numbers::pi;

TEST_CASE("guided couplings are purely real") {
  const double d = 0.25;
  for (const double kd : {0.55, 0.7, 0.9, 0.99}) {
    const auto g = single_atom_coupling(kd * pi / d, d, d);
    CHECK(std::abs(g.imag()) < 1e-9);
    const auto gm = dimer_coupling(kd * pi / d, d, d, -1, d / 2);
    CHECK(std::abs(gm.imag()) < 1e-9);
  }
}

TEST_CASE("superradiant couplings carry a dissipative part") {
  const double d = 0.25;
  const auto g = single_atom_coupling(0.3 * pi / d, d, d);
  CHECK(std::abs(g.imag()) > 1e-3);
}

TEST_CASE("evanescent transverse decay of guided modes") {
  const double d = 0.25, k = 0.9 * pi / d;
  const double near = std::abs(single_atom_coupling(k, d, d));
  const double far = std::abs(single_atom_coupling(k, 4.0, d));
  CHECK(far < 1e-3 * near);
}

TEST_CASE("single-atom closed form matches the brute-force lattice sum") {
  // impurity above a chain site of a long chain, envelope phase stripped
  const ChainGeometry chain{2000, 0.25};
  const double h = 0.25;
  const double z_at = chain.site(1000);
  for (const double kd : {0.6, 0.9}) {
    const double k = kd * pi / chain.d;
    std::complex<double> brute = 0.0;
    for (int i = 0; i < chain.n; ++i) {
      const double z = chain.site(i);
      brute += std::exp(std::complex<double>(0, -k * z)) * -3.0 * pi *
               greens_zz({h, 0, z_at}, {0, 0, z});
    }
    brute *= std::exp(std::complex<double>(0, k * z_at));
    const auto closed = single_atom_coupling(k, h, chain.d);
    CHECK(std::abs(brute - closed) < 1e-3 * std::abs(closed));
  }
}

TEST_CASE("aligned dimer coupling is the sqrt(2) sin/cos rescale of the atom") {
  const double d = 0.25, h = 0.25;
  for (double kd = 0.05; kd < 1.0; kd += 0.08) {
    const double k = kd * pi / d;
    const auto atom = single_atom_coupling(k, h, d);
    const auto minus = dimer_coupling(k, h, d, -1, d / 2);
    const auto plus = dimer_coupling(k, h, d, +1, d / 2);
    CHECK(std::abs(minus - std::numbers::sqrt2 * std::sin(k * d / 2) * atom) <
          1e-12 * std::abs(atom));
    CHECK(std::abs(plus - std::numbers::sqrt2 * std::cos(k * d / 2) * atom) <
          1e-12 * std::abs(atom));
  }
}

TEST_CASE("parity selection: exact zeros of the interference factor") {
  const double d = 0.25, h = 0.25;
  CHECK(dimer_coupling(0.0, h, d, -1, d / 2) == std::complex<double>(0.0, 0.0));
  CHECK(std::abs(dimer_coupling(pi / d, h, d, +1, d / 2)) < 1e-16);
}

TEST_CASE("interference complementarity |g-|^2 + |g+|^2 = 2 |g_atom|^2") {
  const double d = 0.25, h = 0.3;
  for (double kd = 0.1; kd < 1.0; kd += 0.13) {
    const double k = kd * pi / d;
    const double s = std::norm(dimer_coupling(k, h, d, -1, d / 2)) +
                     std::norm(dimer_coupling(k, h, d, +1, d / 2));
    CHECK(s == doctest::Approx(2.0 * std::norm(single_atom_coupling(k, h, d))).epsilon(1e-12));
  }
}

TEST_CASE("antisymmetric coupling grows monotonically across the guided band") {
  // below k0 the magnitude dips at the radiative-evanescent crossover, so
  // monotonicity only holds outside the light cone
  const double d = 0.25, h = 0.25;
  double prev = 0.0;
  for (int i = 21; i <= 40; ++i) {
    const double k = i / 40.0 * pi / d;
    const double cur = std::abs(dimer_coupling(k, h, d, -1, d / 2));
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("finite envelopes: bounds, parity swap, centre zeros") {
  const ChainGeometry geom{100, 0.25};
  const double bound = std::sqrt(2.0 / 101.0);
  for (const int nu : {1, 2, 49, 50, 99, 100}) {
    for (const double rho : {0.0, 0.25, 1.7}) {
      CHECK(std::abs(finite_envelope(nu, rho, -1, geom)) <= bound + 1e-15);
      // xi^+ and xi^- swap sin and cos when nu parity flips
      const double swap_other = finite_envelope(nu + (nu < 100 ? 1 : -1), rho, +1, geom);
      const double self = finite_envelope(nu, rho, -1, geom);
      if (rho == 0.0 && nu % 2 == 1) CHECK(self == 0.0);
      (void)swap_other;
    }
  }
  // lambda = -1, odd nu is a sine: zero at the centre; +1 swaps roles
  CHECK(finite_envelope(7, 0.0, -1, geom) == 0.0);
  CHECK(std::abs(finite_envelope(7, 0.0, +1, geom)) == doctest::Approx(bound));
  CHECK(std::abs(finite_envelope(8, 0.0, -1, geom)) == doctest::Approx(bound));
  CHECK(finite_envelope(8, 0.0, +1, geom) == 0.0);
}

TEST_CASE("dimer closed form vs real-space matrix element (finite ansatz)") {
  const ChainGeometry chain{500, 0.25};
  const double d = 0.25, h = 0.25, rho0 = d / 2;
  const SystemConfig cfg = test::centered_dimer_config(500, d, h);
  const double rho = cfg.dimers[0].center;
  for (const double kd : {0.62, 0.8, 0.94}) {
    for (const int lambda : {-1, +1}) {
      int nu = static_cast<int>(std::llround(kd * (chain.n + 1)));
      if (std::abs(finite_envelope(nu, rho, lambda, chain)) < 1e-3) ++nu;
      const Eigen::VectorXd xi = ansatz_mode(nu, chain);
      const Vec3 ra{h, 0, rho - rho0}, rb{h, 0, rho + rho0};
      std::complex<double> brute = 0.0;
      for (int i = 0; i < chain.n; ++i) {
        const Vec3 rc{0, 0, chain.site(i)};
        brute += xi[i] / std::numbers::sqrt2 *
                 (pair_amplitude(ra, rc).amplitude() +
                  double(lambda) * pair_amplitude(rb, rc).amplitude());
      }
      const double k = pi * nu / ((chain.n + 1) * d);
      const std::complex<double> closed =
          finite_envelope(nu, rho, lambda, chain) * dimer_coupling(k, h, d, lambda, rho0);
      // the envelope convention leaves a per-mode sign free; magnitudes must agree
      CHECK(std::abs(std::abs(brute) - std::abs(closed)) < 1e-3 * std::abs(closed));
    }
  }
}

TEST_CASE("small-rho0 coupling reduces continuously and in ratio") {
  const double d = 0.25, h = 0.25, k = 0.92 * pi / d;
  // continuity towards the aligned case
  const auto at_half = dimer_coupling(k, h, d, -1, d / 2);
  const auto near_half = dimer_coupling(k, h, d, -1, d / 2 - 1e-9);
  CHECK(std::abs(at_half - near_half) < 1e-6 * std::abs(at_half));

  // |g-|^2 / Gamma_0- improves by about a factor two towards rho0 -> 0
  auto figure_of_merit = [&](double rho0) {
    return std::norm(dimer_coupling(k, h, d, -1, rho0)) /
           dimer_eigenpair(2.0 * rho0, -1).linewidth;
  };
  const double ratio = figure_of_merit(0.004) / figure_of_merit(d / 2);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("reciprocal sum rejects out-of-zone momenta and bad standoffs") {
  CHECK_THROWS_AS(single_atom_coupling(1.1 * pi / 0.25, 0.25, 0.25), ConfigError);
  CHECK_THROWS_AS(single_atom_coupling(1.0, -0.1, 0.25), ConfigError);
  CHECK_THROWS_AS(dimer_coupling(1.0, 0.25, 0.25, 0, 0.125), ConfigError);
  CHECK_THROWS_AS(dimer_coupling(1.0, 0.25, 0.25, -1, 0.2), ConfigError);
}

TEST_CASE("plaquette state: normalisation and double antisymmetry") {
  const Eigen::Vector4d psi = plaquette_state();
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-15));
  // z reflection swaps (a,b) within each dimer: (0,1) and (2,3)
  CHECK(psi[0] == -psi[1]);
  CHECK(psi[2] == -psi[3]);
  // x reflection swaps the two dimers
  CHECK(psi[0] == -psi[2]);
  CHECK(psi[1] == -psi[3]);
}

TEST_CASE("plaquette trades free-space darkness against chain coupling") {
  // two stacked dimers at standoffs h and h+d form the 2x2 plaquette
  const int n = 50;
  const double d = 0.25;
  ChainGeometry chain{n, d};
  DimerSpec lower, upper;
  lower.h = d;
  upper.h = 2 * d;
  lower.center = upper.center = chain.nearest_midpoint(0.0);
  const SystemConfig plaq_cfg =
      build_config(chain, {lower, upper}, std::nullopt, 0.0, 1e9);
  const SystemConfig dimer_cfg = test::centered_dimer_config(n, d, d);

  // free-space linewidths from the impurity blocks
  const EffectiveHamiltonian hp = build_dipole_hamiltonian(plaq_cfg, true);
  Eigen::VectorXcd psi_p = Eigen::VectorXcd::Zero(hp.dim());
  const Eigen::Vector4d pl = plaquette_state();
  for (int i = 0; i < 4; ++i) psi_p[n + i] = pl[i];
  const std::complex<double> ep = psi_p.transpose() *
                                  (hp.matrix.bottomRightCorner(4, 4) *
                                   psi_p.tail(4));
  const double gamma_plaq = -2.0 * ep.imag();
  const double gamma_dimer = dimer_eigenpair(d, -1).linewidth;
  CHECK(gamma_plaq < gamma_dimer);

  // effective coupling to a guided mode is also smaller
  const ModeSpectrum& sp = test::cached_spectrum(n, d);
  const int nu = 48;
  const Eigen::VectorXd xi = ansatz_mode(nu, chain);
  auto coupling_to_mode = [&](const EffectiveHamiltonian& h, const Eigen::VectorXcd& imp,
                              int n_imp) {
    std::complex<double> g = 0.0;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n_imp; ++a) g += xi[i] * imp[n + a] * h.matrix(n + a, i);
    return std::abs(g);
  };
  const EffectiveHamiltonian hd = build_dipole_hamiltonian(dimer_cfg);
  Eigen::VectorXcd psi_d = Eigen::VectorXcd::Zero(hd.dim());
  psi_d[n] = 1.0 / std::numbers::sqrt2;
  psi_d[n + 1] = -1.0 / std::numbers::sqrt2;
  const double g_plaq = coupling_to_mode(hp, psi_p, 4);
  const double g_dimer = coupling_to_mode(hd, psi_d, 2);
  CHECK(g_plaq < g_dimer);

  // full-Hamiltonian evolution: slower transfer into the chain for the
  // plaquette once both collective states are tuned to the same guided mode
  const double target = sp.mode(nu).energy;
  auto chain_pop_at = [&](const SystemConfig& cfg, const Eigen::VectorXcd& imp_state,
                          double t) {
    const EffectiveHamiltonian probe = build_dipole_hamiltonian(cfg, true);
    const int n_imp = probe.dim() - n;
    const std::complex<double> e_int =
        imp_state.tail(n_imp).transpose() *
        (probe.matrix.bottomRightCorner(n_imp, n_imp) * imp_state.tail(n_imp));
    SystemConfig tuned = cfg;
    tuned.impurity_detuning = cfg.impurity_detuning + target - e_int.real();
    const EffectiveHamiltonian h = build_dipole_hamiltonian(tuned, true);
    const Trajectory traj = propagate(h, imp_state, {t});
    return traj.chain_population().back();
  };
  // probe early, before free-space decay dominates either configuration
  const double t_probe = 2.0;
  const double chain_from_plaq = chain_pop_at(plaq_cfg, psi_p, t_probe);
  const double chain_from_dimer = chain_pop_at(dimer_cfg, psi_d, t_probe);
  CHECK(chain_from_plaq < chain_from_dimer);
}
