#include "casimir/reflection.hpp"

#include <cmath>
#include <variant>

#include "casimir/errors.hpp"
#include "casimir/units.hpp"

namespace casimir {

double q_of(double k_perp, double xi) {
  const double x = xi / units::hbar_c;
  return std::hypot(k_perp, x);
}

double k_of(double k_perp, double xi, double eps, double mu) {
  const double x = xi / units::hbar_c;
  return std::sqrt(k_perp * k_perp + eps * mu * x * x);
}

ReflectionPair fresnel(double eps, double mu, double q, double k) {
  const double den_tm = eps * q + k;
  const double den_te = mu * q + k;
  if (den_tm == 0.0 || den_te == 0.0) {
    throw DomainError("Fresnel coefficient singular: eps*q + k or mu*q + k vanishes");
  }
  return {(eps * q - k) / den_tm, (mu * q - k) / den_te};
}

ReflectionPair fresnel_stable(double eps, double mu, double q, double xi_over_c) {
  const double x2 = xi_over_c * xi_over_c;
  const double q2 = q * q;
  const double excess = (eps * mu - 1.0) * x2;
  const double k = std::sqrt(q2 + excess);
  const double den_tm = eps * q + k;
  const double den_te = mu * q + k;
  if (den_tm == 0.0 || den_te == 0.0) {
    throw DomainError("Fresnel coefficient singular: eps*q + k or mu*q + k vanishes");
  }
  return {((eps * eps - 1.0) * q2 - excess) / (den_tm * den_tm),
          ((mu * mu - 1.0) * q2 - excess) / (den_te * den_te)};
}

double static_mu_reflection(double mu) {
  if (std::isinf(mu)) return 1.0;
  return (mu - 1.0) / (mu + 1.0);
}

double static_eps_reflection(double eps) {
  if (std::isinf(eps)) return 1.0;
  return (eps - 1.0) / (eps + 1.0);
}

ReflectionPair zero_freq_coefficients(const MaterialModel& model, double k_perp, double temperature) {
  if (!(k_perp >= 0.0)) throw DomainError("transverse momentum must be non-negative");
  const double mu = permeability_at(0, model.permeability, temperature);

  if (std::holds_alternative<DrudeParams>(model.permittivity)) {
    // eps*xi^2 -> 0 as xi -> 0, so k -> q and only mu survives in TE.
    return {1.0, static_mu_reflection(mu)};
  }
  if (const auto* p = std::get_if<PlasmaParams>(&model.permittivity)) {
    // eps*xi^2 -> omega_p^2: TE sees a screening wave number sqrt(mu) omega_p / c.
    const double w = p->plasma_frequency / units::hbar_c;
    const double s = std::sqrt(k_perp * k_perp + mu * w * w);
    const double den = mu * k_perp + s;
    return {1.0, ((mu * mu - 1.0) * k_perp * k_perp - mu * w * w) / (den * den)};
  }
  return {static_eps_reflection(model.static_permittivity()), static_mu_reflection(mu)};
}

}  // namespace casimir
