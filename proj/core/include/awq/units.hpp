// Dimensionless unit conventions shared by the whole library.
//
// Rates are measured in units of the single-atom free-space decay rate
// gamma0, lengths in units of the transition wavelength lambda0, so that
// k0 * lambda0 = 2*pi exactly. Times are 1/gamma0, energies gamma0. The
// bare transition frequency omega0 never enters any formula; only
// detunings from it do.

#pragma once

#include <numbers>

namespace awq::units {

inline constexpr double gamma0 = 1.0;
inline constexpr double lambda0 = 1.0;
inline constexpr double k0 = 2.0 * std::numbers::pi;

inline constexpr double time_unit = 1.0 / gamma0;
inline constexpr double energy_unit = gamma0;

}  // namespace awq::units
