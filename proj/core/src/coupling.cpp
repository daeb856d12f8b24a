#include "awq/coupling.hpp"

#include <cmath>

#include "awq/errors.hpp"
#include "awq/units.hpp"

namespace awq {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// (1 - kappa^2) H0^(1)(k0 h sqrt(1 - kappa^2)) on the decaying branch.
std::complex<double> hankel_term(double kappa, double h) {
  const double one_minus = 1.0 - kappa * kappa;
  if (one_minus == 0.0) return 0.0;  // prefactor kills the log singularity
  if (one_minus > 0.0) {
    const double x = units::k0 * h * std::sqrt(one_minus);
    return one_minus *
           std::complex<double>(std::cyl_bessel_j(0, x), std::cyl_neumann(0, x));
  }
  // H0^(1)(i y) = -(2 i / pi) K0(y)
  const double y = units::k0 * h * std::sqrt(-one_minus);
  if (y > 700.0) return 0.0;  // K0 underflows
  return one_minus * (-2.0 * kI / std::numbers::pi) * std::cyl_bessel_k(0, y);
}

// phase(m) multiplies each reciprocal-lattice term; identity for the
// single atom, the interference trig factor for dimers.
template <typename Phase>
std::complex<double> m_sum(double k, double h, double d, Phase&& phase) {
  if (h <= 0.0) throw ConfigError("coupling: standoff h must be positive");
  if (std::abs(k) > std::numbers::pi / d + 1e-12)
    throw ConfigError("coupling: |k| beyond the Brillouin zone edge");

  std::complex<double> sum = 0.0;
  double largest = 0.0;
  auto term_at = [&](int m) {
    const double kappa = k / units::k0 + m / d;
    return phase(m) * hankel_term(kappa, h);
  };
  sum = term_at(0);
  largest = std::abs(sum);
  for (int m = 1;; ++m) {
    const std::complex<double> tp = term_at(m);
    const std::complex<double> tm = term_at(-m);
    sum += tp + tm;
    const double last = std::max(std::abs(tp), std::abs(tm));
    largest = std::max({largest, std::abs(tp), std::abs(tm)});
    const double scale = std::max(std::abs(sum), largest);
    if (m >= 5 && last <= 1e-12 * scale) break;  // <= so an all-zero sum terminates
    if (m > 64)
      throw NumericError("coupling: reciprocal-lattice sum did not converge by |m| = 64");
  }
  return sum;
}

}  // namespace

std::complex<double> single_atom_coupling(double k, double h, double d) {
  const std::complex<double> pref = -3.0 * kI / (8.0 * d) * units::gamma0;
  return pref * m_sum(k, h, d, [](int) { return 1.0; });
}

std::complex<double> dimer_coupling(double k, double h, double d, int lambda, double rho0) {
  if (lambda != 1 && lambda != -1) throw ConfigError("dimer_coupling: parity must be +-1");
  if (rho0 <= 0.0 || rho0 > 0.5 * d + 1e-12)
    throw ConfigError("dimer_coupling: requires 0 < rho0 <= d/2");
  const std::complex<double> pref =
      -3.0 * kI / (4.0 * std::numbers::sqrt2 * d) * units::gamma0;
  // For rho0 = d/2 the factor reduces to sin/cos(kd/2) outside the sum.
  const double slope = (2.0 * rho0 / d - 1.0) * std::numbers::pi;
  auto phase = [&](int m) {
    const double arg = k * rho0 + slope * m;
    return lambda == -1 ? std::sin(arg) : std::cos(arg);
  };
  return pref * m_sum(k, h, d, phase);
}

double finite_envelope(int nu, double rho, int lambda, const ChainGeometry& geometry) {
  if (nu < 1 || nu > geometry.n) throw ConfigError("finite_envelope: nu out of range");
  if (lambda != 1 && lambda != -1) throw ConfigError("finite_envelope: parity must be +-1");
  const double k = std::numbers::pi * nu / ((geometry.n + 1) * geometry.d);
  const double norm = std::sqrt(2.0 / (geometry.n + 1));
  const bool sine = (lambda == -1) == (nu % 2 == 1);
  return norm * (sine ? std::sin(k * rho) : std::cos(k * rho));
}

std::complex<double> infinite_envelope(double k, double rho, int n) {
  return std::exp(kI * k * rho) / std::sqrt(static_cast<double>(n));
}

Eigen::Vector4d plaquette_state() {
  Eigen::Vector4d psi;
  psi << 1.0, -1.0, -1.0, 1.0;
  return 0.5 * psi;
}

}  // namespace awq
