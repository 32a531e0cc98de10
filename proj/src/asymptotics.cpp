#include "casimir/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/units.hpp"

namespace casimir {

namespace {

// Li3 by its Taylor series; used for |z| <= 0.5.
double polylog3_series(double z) {
  double sum = 0.0;
  double power = z;
  for (int k = 1; k < 200; ++k) {
    const double term = power / (static_cast<double>(k) * k * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    power *= z;
  }
  return sum;
}

// Li3(e^m) for m = ln z in (-ln 2, 0): expansion about z = 1,
// Li3(e^m) = zeta(3) + zeta(2) m + m^2/2 (3/2 - ln(-m)) + sum_{k>=3} zeta(3-k) m^k/k!.
double polylog3_near_one(double z) {
  // zeta(3-k) for k = 3..22; the even-k entries beyond k = 4 vanish.
  static constexpr std::array<double, 20> zeta_negative = {
      -0.5,           -1.0 / 12.0,     0.0, 1.0 / 120.0,        0.0, -1.0 / 252.0,     0.0,
      1.0 / 240.0,    0.0,             -1.0 / 132.0,      0.0, 691.0 / 32760.0,  0.0,
      -1.0 / 12.0,    0.0,             3617.0 / 8160.0,   0.0, -43867.0 / 14364.0, 0.0,
      174611.0 / 6600.0};
  const double m = std::log(z);
  const double zeta2 = units::pi * units::pi / 6.0;
  double sum = units::zeta3 + zeta2 * m + 0.5 * m * m * (1.5 - std::log(-m));
  double power = m * m;
  double factorial = 2.0;
  for (std::size_t i = 0; i < zeta_negative.size(); ++i) {
    const double k = static_cast<double>(i + 3);
    power *= m;
    factorial *= k;
    sum += zeta_negative[i] * power / factorial;
  }
  return sum;
}

double polylog3_positive(double x) {
  if (x == 1.0) return units::zeta3;
  return x <= 0.5 ? polylog3_series(x) : polylog3_near_one(x);
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string(what) + " must be positive and finite");
  }
}

void require_mu(double mu, bool allow_infinite = false) {
  if (!(mu >= 1.0) || (!allow_infinite && std::isinf(mu))) {
    throw ValidationError("mu(0) must be >= 1");
  }
}

void require_eps(double eps) {
  if (!(eps >= 1.0) || !std::isfinite(eps)) throw ValidationError("dielectric permittivity must be >= 1");
}

void check_small(std::vector<std::string>& warnings, double ratio, const char* what) {
  if (ratio > smallness_warning_threshold) {
    std::ostringstream msg;
    msg << what << " = " << ratio << " exceeds " << smallness_warning_threshold
        << "; the large-separation expansion is unreliable";
    warnings.push_back(msg.str());
  }
}

bool same_metal(const MaterialModel& a, const MaterialModel& b, double temperature) {
  if (a.permittivity.index() != b.permittivity.index()) return false;
  if (a.plasma_frequency() != b.plasma_frequency()) return false;
  if (const auto* da = std::get_if<DrudeParams>(&a.permittivity)) {
    if (da->relaxation != std::get<DrudeParams>(b.permittivity).relaxation) return false;
  }
  return a.permeability.static_mu(temperature) == b.permeability.static_mu(temperature);
}

}  // namespace

double polylog3(double z) {
  if (!(std::abs(z) <= 1.0)) throw DomainError("polylog3 requires |z| <= 1");
  if (std::abs(z) <= 0.5) return polylog3_series(z);
  if (z > 0.0) return polylog3_positive(z);
  // Duplication: Li3(z) + Li3(-z) = Li3(z^2)/4.
  return 0.25 * polylog3_positive(z * z) - polylog3_positive(-z);
}

std::string scenario_name(const ClassicalLimitScenario& scenario) {
  static constexpr std::array<const char*, 6> names = {
      "drude-similar",         "plasma-similar",         "drude-dissimilar-metal",
      "plasma-dissimilar-metal", "drude-dielectric-metal", "plasma-dielectric-metal"};
  return names[scenario.index()];
}

ClassicalPressure classical_pressure(const ClassicalLimitScenario& scenario, double separation,
                                     double temperature) {
  require_positive(separation, "separation");
  require_positive(temperature, "temperature");
  const double a = separation;
  const double z3 = units::zeta3;

  ClassicalPressure out;
  out.reduced = std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DrudeSimilar>) {
          require_mu(s.mu0, true);
          const double r = static_mu_reflection(s.mu0);
          return -(z3 + polylog3(r * r));
        } else if constexpr (std::is_same_v<T, PlasmaSimilarFM>) {
          require_mu(s.mu0);
          require_positive(s.skin_depth, "skin depth");
          const double ratio = std::sqrt(s.mu0) * s.skin_depth / a;
          check_small(out.warnings, ratio, "sqrt(mu0)*delta0/a");
          return -2.0 * z3 * (1.0 - 3.0 * ratio);
        } else if constexpr (std::is_same_v<T, DrudeDissimilarMetal>) {
          return -z3;
        } else if constexpr (std::is_same_v<T, PlasmaDissimilarMetal>) {
          require_mu(s.mu0);
          require_positive(s.skin_depth_magnetic, "skin depth");
          require_positive(s.skin_depth_nonmagnetic, "skin depth");
          const double r1 = std::sqrt(s.mu0) * s.skin_depth_magnetic / a;
          const double r2 = s.skin_depth_nonmagnetic / a;
          check_small(out.warnings, r1, "sqrt(mu0)*delta01/a");
          check_small(out.warnings, r2, "delta02/a");
          return -2.0 * z3 * (1.0 - 1.5 * (r1 + r2));
        } else if constexpr (std::is_same_v<T, DrudeDielectricMetal>) {
          require_eps(s.dielectric_permittivity);
          return -polylog3(static_eps_reflection(s.dielectric_permittivity));
        } else {
          require_eps(s.dielectric_permittivity);
          require_mu(s.mu0);
          require_positive(s.metal_skin_depth, "skin depth");
          const double ratio = s.metal_skin_depth / a;
          check_small(out.warnings, ratio, "delta02/a");
          const double r_eps = static_eps_reflection(s.dielectric_permittivity);
          const double r_mu = static_mu_reflection(s.mu0);
          return -(polylog3(r_eps) + polylog3(-r_mu) * (1.0 - 3.0 * ratio));
        }
      },
      scenario);
  out.pressure = out.reduced * units::thermal_pressure_unit(separation, temperature);
  return out;
}

bool repulsion_predicate(const PlasmaDielectricMetal& scenario, double separation) {
  require_positive(separation, "separation");
  const double r_eps = static_eps_reflection(scenario.dielectric_permittivity);
  const double r_mu = static_mu_reflection(scenario.mu0);
  return polylog3(r_eps) <
         std::abs(polylog3(-r_mu) * (1.0 - 3.0 * scenario.metal_skin_depth / separation));
}

ClassicalLimitScenario classify(const PlatePairConfig& cfg) {
  cfg.validate();
  const MaterialModel p1 = cfg.effective_plate(1);
  const MaterialModel p2 = cfg.effective_plate(2);
  const double t = cfg.temperature;
  const double mu1 = p1.permeability.static_mu(t);
  const double mu2 = p2.permeability.static_mu(t);
  const auto is_drude = [](const MaterialModel& m) { return std::holds_alternative<DrudeParams>(m.permittivity); };

  if (p1.is_metal() && p2.is_metal()) {
    if (is_drude(p1) != is_drude(p2)) {
      throw ClassificationError("no closed form for a Drude metal facing a plasma metal");
    }
    if (is_drude(p1)) {
      if (same_metal(p1, p2, t)) return DrudeSimilar{mu1};
      if (mu1 == 1.0 || mu2 == 1.0) return DrudeDissimilarMetal{};
      throw ClassificationError("no closed form for two different magnetic Drude metals");
    }
    const double d1 = units::skin_depth(p1.plasma_frequency());
    const double d2 = units::skin_depth(p2.plasma_frequency());
    if (same_metal(p1, p2, t)) return PlasmaSimilarFM{mu1, d1};
    if (mu2 == 1.0) return PlasmaDissimilarMetal{mu1, d1, d2};
    if (mu1 == 1.0) return PlasmaDissimilarMetal{mu2, d2, d1};
    throw ClassificationError("no closed form for two different magnetic plasma metals");
  }
  if (p1.is_metal() == p2.is_metal()) {
    throw ClassificationError("no closed form for two dielectric plates");
  }

  const MaterialModel& dielectric = p1.is_metal() ? p2 : p1;
  const MaterialModel& metal = p1.is_metal() ? p1 : p2;
  const double mu_d = p1.is_metal() ? mu2 : mu1;
  const double mu_m = p1.is_metal() ? mu1 : mu2;
  if (mu_m != 1.0) throw ClassificationError("dielectric-metal closed forms need a nonmagnetic metal");
  const double eps0 = dielectric.static_permittivity();
  if (is_drude(metal)) return DrudeDielectricMetal{eps0};
  return PlasmaDielectricMetal{eps0, mu_d, units::skin_depth(metal.plasma_frequency())};
}

ConsistencyReport consistency_report(const PlatePairConfig& cfg, double a_min, const NumericsPolicy& policy,
                                     std::size_t points) {
  require_positive(a_min, "a_min");
  if (points < 2) throw ValidationError("consistency report needs at least two points");
  const ClassicalLimitScenario scenario = classify(cfg);

  ConsistencyReport report;
  report.scenario = scenario_name(scenario);
  for (std::size_t i = 0; i < points; ++i) {
    const double a = a_min * std::pow(4.0, static_cast<double>(i) / static_cast<double>(points - 1));
    PlatePairConfig point = cfg;
    point.separation = a;
    ConsistencyRow row;
    row.separation = a;
    row.engine = pressure(point, policy).pressure;
    row.closed_form = classical_pressure(scenario, a, cfg.temperature).pressure;
    row.deviation = std::abs(row.engine - row.closed_form) / std::abs(row.closed_form);
    report.max_deviation = std::max(report.max_deviation, row.deviation);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace casimir
