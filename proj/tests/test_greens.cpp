#include <doctest.h>

#include <awq/errors.hpp>
#include <awq/greens.hpp>
#include <awq/units.hpp>
#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace awq;
using std::numbers::pi;

// At quarter-wavelength separation on axis the closed form collapses to
// g = -6/pi^2, gamma = 24/pi^3.
TEST_CASE("on-axis pair coupling at lambda0/4") {
  const PairCoupling pc = on_axis_pair(0.25);
  CHECK(pc.g == doctest::Approx(-6.0 / (pi * pi)).epsilon(1e-13));
  CHECK(pc.gamma == doctest::Approx(24.0 / (pi * pi * pi)).epsilon(1e-13));
}

TEST_CASE("greens_zz matches the independent on-axis route") {
  for (const double r : {0.1, 0.25, 0.4, 1.3, 7.9}) {
    const std::complex<double> amp =
        -3.0 * pi * units::gamma0 * greens_zz({0, 0, 0}, {0, 0, r});
    const PairCoupling pc = on_axis_pair(r);
    CHECK(amp.real() == doctest::Approx(pc.g).epsilon(1e-12));
    CHECK(amp.imag() == doctest::Approx(-0.5 * pc.gamma).epsilon(1e-12));
  }
}

TEST_CASE("greens_zz is symmetric under point exchange") {
  for (int trial = 0; trial < 40; ++trial) {
    const Vec3 a{test::uniform(-2, 2), test::uniform(-2, 2), test::uniform(-2, 2)};
    const Vec3 b{test::uniform(-2, 2), test::uniform(-2, 2), test::uniform(-2, 2)};
    const auto gab = greens_zz(a, b), gba = greens_zz(b, a);
    CHECK(std::abs(gab - gba) < 1e-14 * std::max(1.0, std::abs(gab)));
  }
}

TEST_CASE("radiation-zone falloff") {
  const double g1 = std::abs(greens_zz({0, 0, 0}, {1.0, 0.7, 0.3}));
  const double g2 = std::abs(greens_zz({0, 0, 0}, {1000.0, 700.0, 300.0}));
  CHECK(g2 < 2e-3 * g1);
  CHECK(g2 > 0.0);
}

TEST_CASE("pair_amplitude conventions") {
  const Vec3 p{0.3, -0.2, 0.9};
  const PairCoupling self = pair_amplitude(p, p);
  CHECK(self.g == 0.0);
  CHECK(self.gamma == units::gamma0);

  // on-axis quarter wavelength
  const PairCoupling pc = pair_amplitude({0, 0, 0}, {0, 0, 0.25});
  CHECK(pc.g == doctest::Approx(-6.0 / (pi * pi)).epsilon(1e-12));
  CHECK(pc.gamma == doctest::Approx(24.0 / std::pow(pi, 3)).epsilon(1e-12));

  CHECK_THROWS_AS(pair_amplitude({0, 0, 0}, {0, 0, 5e-4}), ConfigError);
}

TEST_CASE("dissipative coupling bounded by the single-atom rate") {
  for (int trial = 0; trial < 200; ++trial) {
    const double r = std::exp(test::uniform(std::log(1e-3), std::log(50.0)));
    CHECK(std::abs(on_axis_pair(r).gamma) <= units::gamma0 * (1.0 + 1e-12));
  }
}

TEST_CASE("Dicke limit: gamma -> gamma0 as r -> 0") {
  CHECK(on_axis_pair(1e-3).gamma == doctest::Approx(units::gamma0).epsilon(1e-4));
  // small-x expansion of the closed form: gamma/gamma0 = 1 - x^2/10 + O(x^4)
  const double x = units::k0 * 5e-3;
  CHECK(on_axis_pair(5e-3).gamma ==
        doctest::Approx(units::gamma0 * (1.0 - x * x / 10.0)).epsilon(1e-6));
}

TEST_CASE("dimer eigenpair at quarter wavelength") {
  const auto minus = dimer_eigenpair(0.25, -1);
  const auto plus = dimer_eigenpair(0.25, +1);
  const double gamma_ab = 24.0 / std::pow(pi, 3);
  CHECK(minus.linewidth == doctest::Approx(1.0 - gamma_ab).epsilon(1e-13));
  CHECK(plus.linewidth == doctest::Approx(1.0 + gamma_ab).epsilon(1e-13));
  CHECK(minus.energy_shift == doctest::Approx(6.0 / (pi * pi)).epsilon(1e-13));
  // paper's statement: antisymmetric decay close to gamma0/4 at d = lambda0/4
  CHECK(minus.linewidth == doctest::Approx(0.25).epsilon(0.11));
}

TEST_CASE("antisymmetric state goes dark in the Dicke limit") {
  CHECK(dimer_eigenpair(2e-3, -1).linewidth < 1e-4);
}

TEST_CASE("trace preservation: linewidths of the two parities sum to 2 gamma0") {
  for (int trial = 0; trial < 100; ++trial) {
    const double r = std::exp(test::uniform(std::log(1e-3), std::log(10.0)));
    const double sum = dimer_eigenpair(r, -1).linewidth + dimer_eigenpair(r, +1).linewidth;
    CHECK(sum == doctest::Approx(2.0 * units::gamma0).epsilon(1e-13));
  }
}

TEST_CASE("dimer states diagonalise the two-atom block") {
  const double r = 0.25;
  const std::complex<double> amp = pair_amplitude({0, 0, 0}, {0, 0, r}).amplitude();
  Eigen::Matrix2cd h;
  const std::complex<double> diag(0.0, -0.5 * units::gamma0);
  h << diag, amp, amp, diag;
  Eigen::Vector2cd minus(1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2);
  Eigen::Vector2cd plus(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2);
  const std::complex<double> cross = (plus.transpose() * (h * minus))(0);
  CHECK(std::abs(cross) < 1e-15);
  const std::complex<double> e_minus = (minus.transpose() * (h * minus))(0);
  CHECK(e_minus.real() == doctest::Approx(-pair_amplitude({0, 0, 0}, {0, 0, r}).g).epsilon(1e-12));
  CHECK(-2.0 * e_minus.imag() == doctest::Approx(dimer_eigenpair(r, -1).linewidth).epsilon(1e-12));
}

TEST_CASE("continuity of the pair amplitude in the separation") {
  double prev = on_axis_pair(0.05).g;
  for (double r = 0.0502; r < 1.0; r += 0.0002) {
    const double cur = on_axis_pair(r).g;
    CHECK(std::abs(cur - prev) < 0.02 * std::max(1.0, std::abs(prev)));
    prev = cur;
  }
}
