#include "properties.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "casimir/asymptotics.hpp"
#include "casimir/engine.hpp"
#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"
#include "casimir/units.hpp"

namespace properties {

using namespace casimir;

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin() { return index(0, 1) == 1; }

  // Mostly nonmagnetic or strongly magnetic, as in the catalogue.
  double mu0() { return coin() ? 1.0 : log_uniform(1.0, 1000.0); }

  MaterialModel metal() {
    switch (index(0, 3)) {
      case 0: return builtin_material("Co");
      case 1: return builtin_material("Au");
      case 2: {
        MaterialModel gd = builtin_material("Gd");
        gd.permeability = PermeabilityModel(mu0());
        return gd;
      }
      default:
        return {"random", DrudeParams{uniform(1.0, 15.0), log_uniform(0.01, 1.0)}, PermeabilityModel(mu0())};
    }
  }

  MetalModel model() { return coin() ? MetalModel::drude : MetalModel::plasma; }

  PlatePairConfig identical_pair() {
    PlatePairConfig cfg;
    cfg.plate1 = metal();
    cfg.plate2 = cfg.plate1;
    const MetalModel m = model();
    cfg.metal_model = {m, m};
    cfg.separation = uniform(0.5, 6.0);
    cfg.temperature = uniform(250.0, 350.0);
    return cfg;
  }

  PlatePairConfig any_pair() {
    PlatePairConfig cfg;
    cfg.plate1 = metal();
    if (index(0, 2) == 0) {
      cfg.plate2 = {"composite", CompositeDielectricParams{uniform(0.0, 0.5), HostPermittivity(uniform(1.0, 4.0))},
                    PermeabilityModel(mu0())};
    } else {
      cfg.plate2 = metal();
      cfg.metal_model[1] = model();
    }
    cfg.metal_model[0] = model();
    cfg.separation = uniform(0.5, 6.0);
    cfg.temperature = uniform(250.0, 350.0);
    return cfg;
  }

 private:
  std::mt19937_64 rng_;
};

std::string describe(const PlatePairConfig& cfg) {
  std::ostringstream s;
  s.precision(17);
  s << cfg.plate1.label << "/" << cfg.plate2.label << " a=" << cfg.separation << " T=" << cfg.temperature;
  return s.str();
}

class Recorder {
 public:
  explicit Recorder(std::string name) { out_.name = std::move(name); }

  void check(bool ok, const std::string& context) {
    ++out_.cases;
    if (ok) return;
    if (out_.failures++ == 0) out_.first_failure = context;
  }

  Outcome done() { return out_; }

 private:
  Outcome out_;
};

bool within_unit(const ReflectionPair& r) {
  constexpr double slack = 1.0 + 1e-15;
  return std::abs(r.tm) <= slack && std::abs(r.te) <= slack && std::isfinite(r.tm) && std::isfinite(r.te);
}

}  // namespace

Outcome reflection_bounds(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("reflection bounds");
  for (std::size_t i = 0; i < cases; ++i) {
    const double eps = g.log_uniform(1.0, 1e8);
    const double mu = g.log_uniform(1.0, 1e4);
    const double k_perp = g.uniform(0.0, 50.0);
    const double xi = g.log_uniform(1e-6, 20.0);
    const double q = q_of(k_perp, xi);
    const ReflectionPair literal = fresnel(eps, mu, q, k_of(k_perp, xi, eps, mu));
    const ReflectionPair stable = fresnel_stable(eps, mu, q, xi / units::hbar_c);

    MaterialModel metal = g.metal();
    metal = with_metal_model(metal, g.model());
    const ReflectionPair zero = zero_freq_coefficients(metal, g.log_uniform(1e-6, 1e3), 300.0);

    std::ostringstream ctx;
    ctx << "eps=" << eps << " mu=" << mu << " k=" << k_perp << " xi=" << xi;
    rec.check(within_unit(literal) && within_unit(stable) && within_unit(zero), ctx.str());
  }
  return rec.done();
}

Outcome reflection_symmetry(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("reflection symmetry");
  for (std::size_t i = 0; i < cases; ++i) {
    const PlatePairConfig cfg = g.any_pair();
    const MaterialReflection one(cfg.effective_plate(1), cfg.separation, cfg.temperature);
    const MaterialReflection two(cfg.effective_plate(2), cfg.separation, cfg.temperature);
    const std::size_t l = g.index(0, 40);
    const double y = matsubara_y(l, cfg.separation, cfg.temperature) + g.uniform(1e-6, 30.0);
    const ReflectionPair a = one.at(l, y);
    const ReflectionPair b = two.at(l, y);
    const bool products = a.tm * b.tm == b.tm * a.tm && a.te * b.te == b.te * a.te;

    const double v = g.log_uniform(1.0, 1e4);
    const ReflectionPair same = fresnel_stable(v, v, g.uniform(0.01, 50.0), g.uniform(0.0, 50.0));
    const bool degenerate = std::abs(same.tm - same.te) <= 1e-14;
    rec.check(products && degenerate, describe(cfg) + " l=" + std::to_string(l));
  }
  return rec.done();
}

Outcome permittivity_monotone(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("permittivity above one and decreasing");
  for (std::size_t i = 0; i < cases; ++i) {
    const MaterialModel m = with_metal_model(g.metal(), g.model());
    const double xi1 = g.log_uniform(1e-4, 1e3);
    const double xi2 = xi1 * g.uniform(1.001, 10.0);
    const double e1 = m.permittivity_at(xi1);
    const double e2 = m.permittivity_at(xi2);
    const CompositeDielectricParams comp{g.uniform(0.0, 0.9), HostPermittivity(g.uniform(1.0, 5.0))};
    const bool composite_ok = composite_permittivity(xi1, comp) >= composite_permittivity(xi2, comp);
    rec.check(e1 > e2 && e2 > 1.0 && composite_ok, m.label + " xi=" + std::to_string(xi1));
  }
  return rec.done();
}

Outcome permeability_policy(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("permeability policy");
  for (std::size_t i = 0; i < cases; ++i) {
    const bool table = g.coin();
    const PermeabilityModel model = table ? PermeabilityModel(gadolinium_mu_table()) : PermeabilityModel(g.mu0());
    const double t = table ? g.uniform(280.0, 400.0) : g.uniform(1.0, 1000.0);
    const std::size_t l = g.index(1, 1000000);
    const bool ok = permeability_at(l, model, t) == 1.0 && permeability_at(0, model, t) == model.static_mu(t) &&
                    model.static_mu(t) >= 1.0;
    rec.check(ok, "l=" + std::to_string(l) + " T=" + std::to_string(t));
  }
  return rec.done();
}

Outcome repulsion_predicate_sign(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("repulsion predicate matches closed-form sign");
  for (std::size_t i = 0; i < cases; ++i) {
    const double a = g.uniform(0.5, 20.0);
    const PlasmaDielectricMetal s{g.log_uniform(1.0, 100.0), g.log_uniform(1.0, 1000.0), a * g.uniform(0.0, 0.3)};
    const bool predicate = repulsion_predicate(s, a);
    const bool positive = classical_pressure(s, a, 300.0).pressure > 0.0;
    rec.check(predicate == positive, "eps=" + std::to_string(s.dielectric_permittivity) +
                                         " mu=" + std::to_string(s.mu0));
  }
  return rec.done();
}

Outcome attraction(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("attraction between identical plates");
  for (std::size_t i = 0; i < cases; ++i) {
    const PlatePairConfig cfg = g.identical_pair();
    rec.check(pressure(cfg).pressure < 0.0, describe(cfg));
  }
  return rec.done();
}

Outcome monotone_decay(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("monotone decay with separation");
  for (std::size_t i = 0; i < cases; ++i) {
    PlatePairConfig near = g.identical_pair();
    PlatePairConfig far = near;
    far.separation = std::min(6.0, near.separation * g.uniform(1.01, 3.0));
    if (far.separation <= near.separation) near.separation = far.separation / 1.01;
    rec.check(std::abs(pressure(near).pressure) > std::abs(pressure(far).pressure), describe(near));
  }
  return rec.done();
}

Outcome determinism(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("serial and parallel results bit-identical");
  for (std::size_t i = 0; i < cases; ++i) {
    const PlatePairConfig cfg = g.any_pair();
    NumericsPolicy policy;
    policy.workers = static_cast<int>(g.index(1, 8));
    const PressureResult s = pressure(cfg, policy, Execution::serial);
    const PressureResult p = pressure(cfg, policy, Execution::parallel);
    rec.check(s.pressure == p.pressure && s.terms_used == p.terms_used && s.zero_term_te == p.zero_term_te,
              describe(cfg));
  }
  return rec.done();
}

Outcome convergence_stability(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("halving tolerances moves the result less than ten tolerances");
  for (std::size_t i = 0; i < cases; ++i) {
    const PlatePairConfig cfg = g.any_pair();
    NumericsPolicy loose;
    loose.rel_tol_quadrature = loose.rel_tol_sum_tail = g.log_uniform(1e-11, 1e-6);
    NumericsPolicy tight = loose;
    tight.rel_tol_quadrature /= 2.0;
    tight.rel_tol_sum_tail /= 2.0;
    const double a = pressure(cfg, loose).pressure;
    const double b = pressure(cfg, tight).pressure;
    rec.check(std::abs(a - b) < 10.0 * loose.rel_tol_sum_tail * std::abs(b), describe(cfg));
  }
  return rec.done();
}

Outcome magnetic_locality(std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  Recorder rec("magnetism enters only through the l = 0 TE term");
  for (std::size_t i = 0; i < cases; ++i) {
    PlatePairConfig magnetic = g.any_pair();
    magnetic.plate1.permeability = PermeabilityModel(g.log_uniform(1.0, 1000.0));
    magnetic.plate2.permeability = PermeabilityModel(g.log_uniform(1.0, 1000.0));
    PlatePairConfig plain = magnetic;
    plain.plate1 = without_magnetism(plain.plate1);
    plain.plate2 = without_magnetism(plain.plate2);
    NumericsPolicy policy;
    const PressureResult m = pressure(magnetic, policy);
    const PressureResult n = pressure(plain, policy);
    const double lhs = m.reduced - n.reduced;
    const double rhs = m.zero_term_te - n.zero_term_te;
    const double tol = 10.0 * policy.rel_tol_sum_tail * std::max(std::abs(m.reduced), std::abs(n.reduced));
    rec.check(std::abs(lhs - rhs) <= tol && m.zero_term_tm == n.zero_term_tm, describe(magnetic));
  }
  return rec.done();
}

std::vector<Outcome> all(std::size_t cases, std::uint64_t seed) {
  return {reflection_bounds(cases, seed),     reflection_symmetry(cases, seed),
          permittivity_monotone(cases, seed), permeability_policy(cases, seed),
          repulsion_predicate_sign(cases, seed), attraction(cases, seed),
          monotone_decay(cases, seed),         determinism(cases, seed),
          convergence_stability(cases, seed),  magnetic_locality(cases, seed)};
}

}  // namespace properties
