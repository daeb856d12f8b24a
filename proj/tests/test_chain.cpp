#include <doctest.h>

#include <awq/chain.hpp>
#include <awq/errors.hpp>
#include <awq/greens.hpp>
#include <awq/units.hpp>
#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace awq;
using std::numbers::pi;

TEST_CASE("two-site chain hamiltonian") {
  const ChainHamiltonian h = build_chain_hamiltonian(ChainGeometry{2, 0.25});
  const std::complex<double> off = h.matrix(0, 1);
  CHECK(off.real() == doctest::Approx(-6.0 / (pi * pi)).epsilon(1e-12));
  CHECK(off.imag() == doctest::Approx(-12.0 / std::pow(pi, 3)).epsilon(1e-12));
  CHECK(h.matrix(0, 0) == std::complex<double>(0.0, -0.5));
  CHECK(h.matrix(1, 0) == h.matrix(0, 1));
}

TEST_CASE("chain matrix equals its transpose exactly") {
  const ChainHamiltonian h = build_chain_hamiltonian(ChainGeometry{37, 0.22});
  CHECK((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("chain dissipator is positive semidefinite") {
  for (const double d : {0.12, 0.25, 0.4}) {
    const ChainHamiltonian h = build_chain_hamiltonian(ChainGeometry{50, d});
    const Eigen::MatrixXcd decay =
        (h.matrix.adjoint() - h.matrix) / std::complex<double>(0.0, 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(decay);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
  }
}

TEST_CASE("two-site eigenvalues reproduce the dimer closed form") {
  const ChainGeometry geom{2, 0.25};
  const ModeSpectrum sp = diagonalize_chain(build_chain_hamiltonian(geom), geom);
  // ansatz grid k_nu d = pi nu / 3
  CHECK(sp.mode(1).k * geom.d == doctest::Approx(pi / 3.0).epsilon(1e-14));
  CHECK(sp.mode(2).k * geom.d == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-14));
  const PairCoupling pc = on_axis_pair(0.25);
  // symmetric (even) combination carries +g, the antisymmetric -g
  CHECK(sp.mode(1).energy == doctest::Approx(pc.g).epsilon(1e-12));
  CHECK(sp.mode(2).energy == doctest::Approx(-pc.g).epsilon(1e-12));
  CHECK(sp.mode(1).gamma == doctest::Approx(units::gamma0 + pc.gamma).epsilon(1e-12));
  CHECK(sp.mode(2).gamma == doctest::Approx(units::gamma0 - pc.gamma).epsilon(1e-12));
}

TEST_CASE("ansatz family is orthonormal to 1e-12") {
  const ChainGeometry geom{60, 0.25};
  Eigen::MatrixXd xi(60, 60);
  for (int nu = 1; nu <= 60; ++nu) xi.col(nu - 1) = ansatz_mode(nu, geom);
  const Eigen::MatrixXd gram = xi.transpose() * xi;
  CHECK((gram - Eigen::MatrixXd::Identity(60, 60)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ansatz parity under site reversal") {
  const ChainGeometry geom{31, 0.3};
  for (const int nu : {1, 2, 7, 12, 31}) {
    const Eigen::VectorXd xi = ansatz_mode(nu, geom);
    const int sign = nu % 2 == 1 ? 1 : -1;
    for (int i = 0; i < geom.n; ++i)
      CHECK(xi[i] == doctest::Approx(sign * xi[geom.n - 1 - i]).epsilon(1e-12));
  }
}

TEST_CASE("mode assignment is a labelled bijection with strong overlaps") {
  const ModeSpectrum& sp = test::cached_spectrum(100, 0.25);
  std::vector<bool> seen(sp.n + 1, false);
  for (const Mode& m : sp.modes) {
    CHECK(!seen[m.nu]);
    seen[m.nu] = true;
  }
  // the most subradiant mode is the top ansatz mode with > 95% overlap
  int best = 1;
  for (const Mode& m : sp.modes)
    if (m.guided && m.gamma < sp.mode(best).gamma) best = m.nu;
  CHECK(sp.mode(best).overlap * sp.mode(best).overlap > 0.95);
  CHECK(sp.diagnostics.empty());
}

TEST_CASE("parity sectors never mix") {
  const ModeSpectrum& sp = test::cached_spectrum(100, 0.25);
  for (const Mode& m : sp.modes) {
    const Eigen::VectorXcd v = sp.vectors.col(m.nu - 1);
    double res = 0.0;
    for (int i = 0; i < sp.n; ++i) res += std::norm(v[i] - double(m.parity) * v[sp.n - 1 - i]);
    CHECK(std::sqrt(res) < 1e-8);
    CHECK(m.parity == (m.nu % 2 == 1 ? 1 : -1));
  }
}

TEST_CASE("linewidth sum rule and positivity") {
  const ModeSpectrum& sp = test::cached_spectrum(100, 0.25);
  double sum = 0.0;
  for (const Mode& m : sp.modes) {
    sum += m.gamma;
    CHECK(m.gamma > -1e-9);
  }
  CHECK(sum == doctest::Approx(100.0 * units::gamma0).epsilon(1e-10));
}

TEST_CASE("guided modes carry the subradiant tail") {
  const ModeSpectrum& sp = test::cached_spectrum(100, 0.25);
  for (const Mode& m : sp.modes)
    if (m.gamma < 1e-2 * units::gamma0) CHECK(m.guided);
  CHECK(sp.min_guided_gamma() < 1e-5);  // ~ gamma0/N^3 scaling
}

TEST_CASE("spectrum is invariant under a global chain translation") {
  const ChainGeometry geom{40, 0.25};
  const ModeSpectrum base = diagonalize_chain(build_chain_hamiltonian(geom), geom);
  std::vector<double> shifted = geom.positions();
  for (double& z : shifted) z += 17.3;
  const ModeSpectrum moved = diagonalize_chain(build_chain_hamiltonian(shifted), geom);
  for (int nu = 1; nu <= geom.n; ++nu) {
    CHECK(moved.mode(nu).energy == doctest::Approx(base.mode(nu).energy).epsilon(1e-10));
    CHECK(moved.mode(nu).gamma ==
          doctest::Approx(base.mode(nu).gamma).epsilon(1e-8).scale(1e-10));
  }
}

TEST_CASE("subradiance scaling ~ 1/N^3") {
  std::vector<double> lx, ly;
  for (const int n : {25, 50, 100}) {
    const ModeSpectrum& sp = test::cached_spectrum(n, 0.25);
    lx.push_back(std::log(n));
    ly.push_back(std::log(sp.min_guided_gamma()));
  }
  const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
  CHECK(slope == doctest::Approx(-3.0).epsilon(0.1));
}

TEST_CASE("band-edge closed form") {
  // two algebraic routes at d = 1/4: (12/pi) (ln 2 / 2 + pi/4)
  const double expected = 12.0 / pi * (0.5 * std::numbers::ln2 + pi / 4.0);
  CHECK(band_edge_closed_form(0.25) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(band_edge_closed_form(0.25) == doctest::Approx(4.32381360).epsilon(1e-8));
  // diverges towards d = 1/2 (tangent pole)
  CHECK(band_edge_closed_form(0.499) > 50.0);
  CHECK_THROWS_AS(band_edge_closed_form(0.5), ConfigError);
  CHECK_THROWS_AS(band_edge_closed_form(0.0), ConfigError);
}

TEST_CASE("band-edge fit against the closed form") {
  const BandEdgeFit fit = fit_band_edge(test::cached_spectrum(200, 0.25));
  CHECK(fit.a_d ==
        doctest::Approx(band_edge_closed_form(0.25)).epsilon(0.05));
  CHECK(fit.a_d > 0.0);
  CHECK(fit.residual < 1e-4);
  // gamma_N tracks 1/N; measured constant is near 2.2 at d = 1/4
  CHECK(fit.gamma_n > 0.5 / 200.0);
  CHECK(fit.gamma_n < 3.0 / 200.0);
}

TEST_CASE("band edge fit needs enough guided modes") {
  CHECK_THROWS_AS(fit_band_edge(test::cached_spectrum(6, 0.25)), NumericError);
}

TEST_CASE("curvature positive across the subwavelength range") {
  for (const double d : {0.1, 0.2, 0.3, 0.4}) CHECK(band_edge_closed_form(d) > 0.0);
}
