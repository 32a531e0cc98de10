#pragma once

#include <numbers>

// Unit system: energies and imaginary frequencies in eV (hbar = 1),
// lengths in micrometres, temperatures in kelvin, pressures in pascal.
namespace casimir::units {

inline constexpr double pi = std::numbers::pi;

/// hbar*c in eV*um.
inline constexpr double hbar_c = 0.1973269804;

/// Boltzmann constant in eV/K.
inline constexpr double boltzmann_ev = 8.617333262e-5;

/// Boltzmann constant in J/K.
inline constexpr double boltzmann_si = 1.380649e-23;

/// hbar*c in J*m.
inline constexpr double hbar_c_si = 1.054571817e-34 * 299792458.0;

inline constexpr double micrometre = 1e-6;

/// Riemann zeta(3).
inline constexpr double zeta3 = 1.2020569031595942854;

/// 2*pi*k_B*T in eV: the spacing of the Matsubara frequencies.
constexpr double matsubara_spacing(double temperature) {
  return 2.0 * pi * boltzmann_ev * temperature;
}

/// Skin depth c/omega_p in um for a plasma frequency in eV.
constexpr double skin_depth(double plasma_frequency) {
  return hbar_c / plasma_frequency;
}

/// k_B*T/(8*pi*a^3) in Pa; the natural pressure unit of the Lifshitz sum.
constexpr double thermal_pressure_unit(double separation, double temperature) {
  const double a = separation * micrometre;
  return boltzmann_si * temperature / (8.0 * pi * a * a * a);
}

/// Ideal-metal zero-temperature pressure -pi^2*hbar*c/(240*a^4) in Pa.
constexpr double ideal_pressure(double separation) {
  const double a = separation * micrometre;
  return -pi * pi * hbar_c_si / (240.0 * a * a * a * a);
}

}  // namespace casimir::units
