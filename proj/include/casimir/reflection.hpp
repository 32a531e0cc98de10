#pragma once

#include "casimir/materials.hpp"

namespace casimir {

struct ReflectionPair {
  double tm = 0.0;
  double te = 0.0;
};

/// q = sqrt(k_perp^2 + xi^2/c^2) in 1/um, xi in eV.
double q_of(double k_perp, double xi);

/// k = sqrt(k_perp^2 + eps*mu*xi^2/c^2) in 1/um.
double k_of(double k_perp, double xi, double eps, double mu);

/// Textbook Fresnel coefficients on the imaginary axis:
/// r_TM = (eps q - k)/(eps q + k), r_TE = (mu q - k)/(mu q + k).
ReflectionPair fresnel(double eps, double mu, double q, double k);

/// Same coefficients written as (a^2 q^2 - k^2)/(a q + k)^2 with
/// a^2 q^2 - k^2 expanded analytically, which stays accurate when eps*mu -> 1.
/// q and xi_over_c share any length unit (1/um, or the engine's y units).
ReflectionPair fresnel_stable(double eps, double mu, double q, double xi_over_c);

/// Zero-frequency coefficients for a material whose permittivity is already in
/// its final form. Metals reflect TM perfectly; a Drude metal reflects TE with
/// (mu-1)/(mu+1), a plasma metal with the k_perp-dependent screened value.
/// Dielectrics use (eps(0)-1)/(eps(0)+1) for TM and (mu-1)/(mu+1) for TE.
ReflectionPair zero_freq_coefficients(const MaterialModel& model, double k_perp,
                                      double temperature);

/// (mu - 1)/(mu + 1), tending to 1 as mu -> infinity.
double static_mu_reflection(double mu);

/// (eps - 1)/(eps + 1).
double static_eps_reflection(double eps);

}  // namespace casimir
