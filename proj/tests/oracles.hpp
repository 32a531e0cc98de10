#pragma once

// Independent reference evaluations. Nothing here calls into the library's
// numerics; results are frozen into the unit and acceptance tests.

#include <cmath>
#include <cstddef>
#include <initializer_list>

namespace oracle {

inline constexpr double hbar_c = 0.1973269804;        // eV um
inline constexpr double k_boltzmann = 8.617333262e-5;  // eV/K
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double zeta3 = 1.2020569031595942854;

/// Direct partial sum of z^k / k^3.
inline double polylog3_sum(double z, std::size_t terms = 1000000) {
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t k = 1; k <= terms; ++k) {
    power *= z;
    const double kd = static_cast<double>(k);
    sum += power / (kd * kd * kd);
    if (std::abs(power) < 1e-300) break;
  }
  return sum;
}

struct DrudePlate {
  double plasma_frequency;  // eV
  double relaxation;        // eV, 0 for the plasma model
  double mu0;
};

inline double xi_l(std::size_t l, double temperature) {
  return 2.0 * pi * k_boltzmann * temperature * static_cast<double>(l);
}

inline double drude_eps(const DrudePlate& p, double xi) {
  return 1.0 + p.plasma_frequency * p.plasma_frequency / (xi * (xi + p.relaxation));
}

/// Literal Fresnel coefficients in the original (k_perp, xi) variables.
inline void fresnel_literal(double eps, double mu, double k_perp, double xi, double& tm, double& te) {
  const double w = xi / hbar_c;
  const double q = std::sqrt(k_perp * k_perp + w * w);
  const double k = std::sqrt(k_perp * k_perp + eps * mu * w * w);
  tm = (eps * q - k) / (eps * q + k);
  te = (mu * q - k) / (mu * q + k);
}

/// Zero-frequency limits written out separately from the library.
inline void zero_frequency(const DrudePlate& p, double k_perp, double& tm, double& te) {
  tm = 1.0;
  if (p.relaxation > 0.0) {
    te = (p.mu0 - 1.0) / (p.mu0 + 1.0);
    return;
  }
  const double wp = p.plasma_frequency / hbar_c;
  const double root = std::sqrt(k_perp * k_perp + p.mu0 * wp * wp);
  te = (p.mu0 * k_perp - root) / (p.mu0 * k_perp + root);
}

/// Brute-force Lifshitz pressure in units of k_B T / (8 pi a^3): trapezoid in
/// k_perp on a uniform grid, explicit primed sum over l up to max_l.
/// a in um, T in K. mu = 1 at every l >= 1.
inline double brute_force_reduced(const DrudePlate& p1, const DrudePlate& p2, double a, double temperature,
                                  std::size_t max_l = 2000, double step = 2.5e-3, double y_cut = 60.0) {
  double total = 0.0;
  for (std::size_t l = 0; l <= max_l; ++l) {
    const double xi = xi_l(l, temperature);
    const double w = xi / hbar_c;
    // Upper k_perp such that 2 a q reaches 2 a q_l + y_cut.
    const double q_max = w + y_cut / (2.0 * a);
    const double k_max = std::sqrt(q_max * q_max - w * w);
    const double h = step / a;
    const auto n = static_cast<std::size_t>(std::ceil(k_max / h));
    double term = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double k_perp = static_cast<double>(i) * h;
      const double q = std::sqrt(k_perp * k_perp + w * w);
      double tm1, te1, tm2, te2;
      if (l == 0) {
        if (k_perp == 0.0) continue;  // integrand vanishes as k_perp -> 0
        zero_frequency(p1, k_perp, tm1, te1);
        zero_frequency(p2, k_perp, tm2, te2);
      } else {
        fresnel_literal(drude_eps(p1, xi), 1.0, k_perp, xi, tm1, te1);
        fresnel_literal(drude_eps(p2, xi), 1.0, k_perp, xi, tm2, te2);
      }
      const double e = std::exp(2.0 * a * q);
      double f = 0.0;
      for (double r : {tm1 * tm2, te1 * te2}) {
        if (r != 0.0) f += 1.0 / (e / r - 1.0);
      }
      const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
      term += weight * q * k_perp * f;
    }
    term *= h;
    total += (l == 0 ? 0.5 : 1.0) * term;
  }
  // P = -(k_B T / pi) sum; in units of k_B T / (8 pi a^3) that is -8 a^3 sum.
  return -8.0 * a * a * a * total;
}

}  // namespace oracle
