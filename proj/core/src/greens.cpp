#include "awq/greens.hpp"

#include <cmath>

#include "awq/errors.hpp"
#include "awq/units.hpp"

namespace awq {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}
}  // namespace

std::complex<double> greens_zz(const Vec3& r1, const Vec3& r2) {
  const double R = distance(r1, r2);
  if (R == 0.0) throw NumericError("greens_zz: coincident points");
  const double u = units::k0 * R;
  const double cz = (r1[2] - r2[2]) / R;  // cos(theta) against the dipole axis
  const double c2 = cz * cz;
  // (1 + dz dz / k0^2) e^{i k0 R}/R, expanded in 1/u
  const std::complex<double> iso = 1.0 + kI / u - 1.0 / (u * u);
  const std::complex<double> dir = -1.0 - 3.0 * kI / u + 3.0 / (u * u);
  return std::exp(kI * u) / (4.0 * std::numbers::pi * u) * (iso + dir * c2);
}

PairCoupling pair_amplitude(const Vec3& r1, const Vec3& r2) {
  const double R = distance(r1, r2);
  if (R == 0.0) return {0.0, units::gamma0};
  if (R < min_atom_separation())
    throw ConfigError("pair_amplitude: atoms closer than 1e-3 lambda0 (unregularised near field)");
  const std::complex<double> amp =
      -3.0 * std::numbers::pi * units::gamma0 * greens_zz(r1, r2);
  return {amp.real(), -2.0 * amp.imag()};
}

PairCoupling on_axis_pair(double r) {
  if (r <= 0.0) throw NumericError("on_axis_pair: separation must be positive");
  const double x = units::k0 * r;
  const double x3 = x * x * x;
  const double g = -1.5 * units::gamma0 / x3 * (std::cos(x) + x * std::sin(x));
  const double gamma = -3.0 * units::gamma0 / x3 * (x * std::cos(x) - std::sin(x));
  return {g, gamma};
}

DimerEigenpair dimer_eigenpair(double r_ab, int lambda) {
  if (r_ab <= 0.0) throw NumericError("dimer_eigenpair: separation must be positive");
  const PairCoupling pc = on_axis_pair(r_ab);
  return {lambda * pc.g, units::gamma0 + lambda * pc.gamma};
}

}  // namespace awq
