#include "casimir/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "casimir/errors.hpp"
#include "casimir/units.hpp"

namespace casimir {

namespace {

// Beyond y_l + 60 the kernel has fallen below 1e-22 of its integral.
constexpr double kIntegrationSpan = 60.0;
constexpr unsigned kMaxDepth = 18;
// Runs of negligible terms required before the Matsubara sum is cut.
constexpr std::size_t kQuietTerms = 3;

template <unsigned Points, class F>
double integrate_rule(F&& f, double lo, double hi, double tol, double& error, double& l1) {
  return boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, lo, hi, kMaxDepth, tol,
                                                                           &error, &l1);
}

int thread_budget(const NumericsPolicy& policy) {
#ifdef _OPENMP
  return policy.workers > 0 ? policy.workers : omp_get_max_threads();
#else
  (void)policy;
  return 1;
#endif
}

// Accumulates terms in ascending l (TM before TE) and decides truncation.
// Returns true once the tail is negligible.
class TermAccumulator {
 public:
  TermAccumulator(const NumericsPolicy& policy, double y_step, std::vector<TermContribution>* rows)
      : tol_(policy.rel_tol_sum_tail), ratio_(std::exp(-y_step)), rows_(rows) {}

  void add_zero(const TermContribution& c) {
    result_.zero_term_tm = c.tm;
    result_.zero_term_te = c.te;
    result_.terms_used = 1;
    if (rows_ != nullptr) rows_->push_back(c);
  }

  bool add(const TermContribution& c) {
    result_.nonzero_sum += c.tm;
    result_.nonzero_sum += c.te;
    ++result_.terms_used;
    if (rows_ != nullptr) rows_->push_back(c);

    const double magnitude = std::abs(c.tm) + std::abs(c.te);
    const double scale = std::abs(total());
    const double tail = ratio_ < 1.0 ? magnitude * ratio_ / (1.0 - ratio_)
                                     : std::numeric_limits<double>::infinity();
    result_.tail_estimate = magnitude == 0.0 ? 0.0 : tail;
    const bool quiet = magnitude <= tol_ * scale && result_.tail_estimate <= tol_ * scale;
    quiet_run_ = quiet ? quiet_run_ + 1 : 0;
    return quiet_run_ >= kQuietTerms;
  }

  double total() const {
    return result_.zero_term_tm + result_.zero_term_te + result_.nonzero_sum;
  }

  PressureResult& result() { return result_; }

 private:
  double tol_;
  double ratio_;
  std::vector<TermContribution>* rows_;
  PressureResult result_;
  std::size_t quiet_run_ = 0;
};

TermContribution weighted_term(std::size_t l, const ReflectionModel& p1, const ReflectionModel& p2,
                               double y_step, const NumericsPolicy& policy) {
  const double y_l = static_cast<double>(l) * y_step;
  const double weight = l == 0 ? 0.5 : 1.0;
  return {l, -weight * term_integral(l, p1, p2, y_l, Polarization::tm, policy),
          -weight * term_integral(l, p1, p2, y_l, Polarization::te, policy)};
}

PressureResult run_sum(const ReflectionModel& p1, const ReflectionModel& p2, double separation,
                       double temperature, const NumericsPolicy& policy, Execution exec,
                       std::vector<TermContribution>* rows) {
  policy.validate();
  if (!(separation > 0.0) || !std::isfinite(separation)) throw ValidationError("separation must be positive");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw ValidationError("temperature must be positive");

  const double y_step = matsubara_y(1, separation, temperature);
  TermAccumulator acc(policy, y_step, rows);
  acc.add_zero(weighted_term(0, p1, p2, y_step, policy));

  const int threads = exec == Execution::parallel ? thread_budget(policy) : 1;
  const std::size_t block = exec == Execution::parallel ? std::max<std::size_t>(8, 2 * threads) : 1;
  std::vector<TermContribution> pending(block);

  bool done = policy.max_matsubara_terms <= 1;
  std::size_t next = 1;
  while (!done) {
    const std::size_t count = std::min(block, policy.max_matsubara_terms - next);
    if (count == 0) break;

    if (exec == Execution::parallel && count > 1) {
      std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        try {
          pending[i] = weighted_term(next + i, p1, p2, y_step, policy);
        } catch (...) {
#pragma omp critical(casimir_engine_failure)
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (std::size_t i = 0; i < count; ++i) pending[i] = weighted_term(next + i, p1, p2, y_step, policy);
    }

    for (std::size_t i = 0; i < count && !done; ++i) done = acc.add(pending[i]);
    next += count;
  }

  PressureResult& r = acc.result();
  r.converged = done;
  r.reduced = acc.total();
  r.pressure = r.reduced * units::thermal_pressure_unit(separation, temperature);
  r.relative = r.pressure / units::ideal_pressure(separation);
  if (!done) {
    throw ConvergenceError("Matsubara sum not converged after " + std::to_string(r.terms_used) + " terms", r);
  }
  return r;
}

}  // namespace

void NumericsPolicy::validate() const {
  if (!(rel_tol_quadrature > 0.0 && rel_tol_quadrature < 1.0)) {
    throw ValidationError("rel_tol_quadrature must lie in (0, 1)");
  }
  if (!(rel_tol_sum_tail > 0.0 && rel_tol_sum_tail < 1.0)) {
    throw ValidationError("rel_tol_sum_tail must lie in (0, 1)");
  }
  if (max_matsubara_terms < 1) throw ValidationError("max_matsubara_terms must be >= 1");
  if (workers < 0) throw ValidationError("workers must be >= 0");
}

void PlatePairConfig::validate() const {
  if (!(separation > 0.0) || !std::isfinite(separation)) throw ValidationError("separation must be positive");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw ValidationError("temperature must be positive");
  casimir::validate(effective_plate(1));
  casimir::validate(effective_plate(2));
}

MaterialModel PlatePairConfig::effective_plate(int n) const {
  if (n != 1 && n != 2) throw ValidationError("plate index must be 1 or 2");
  const MaterialModel& plate = n == 1 ? plate1 : plate2;
  const auto& selector = metal_model[static_cast<std::size_t>(n - 1)];
  return selector ? with_metal_model(plate, *selector) : plate;
}

MaterialReflection::MaterialReflection(MaterialModel material, double separation, double temperature)
    : material_(std::move(material)),
      separation_(separation),
      temperature_(temperature),
      y_step_(matsubara_y(1, separation, temperature)) {}

ReflectionPair MaterialReflection::at(std::size_t l, double y) const {
  if (l == 0) return zero_freq_coefficients(material_, y / (2.0 * separation_), temperature_);
  const double eps = material_.permittivity_at(matsubara_frequency(l, temperature_));
  const double mu = permeability_at(l, material_.permeability, temperature_);
  return fresnel_stable(eps, mu, y, static_cast<double>(l) * y_step_);
}

double matsubara_frequency(std::size_t l, double temperature) {
  return static_cast<double>(l) * units::matsubara_spacing(temperature);
}

double matsubara_y(std::size_t l, double separation, double temperature) {
  return 2.0 * separation * matsubara_frequency(l, temperature) / units::hbar_c;
}

double term_integral(std::size_t l, const ReflectionModel& plate1, const ReflectionModel& plate2,
                     double y_l, Polarization pol, const NumericsPolicy& policy) {
  auto integrand = [&](double y) {
    if (y <= 0.0) return 0.0;
    const ReflectionPair a = plate1.at(l, y);
    const ReflectionPair b = plate2.at(l, y);
    const double r = pol == Polarization::tm ? a.tm * b.tm : a.te * b.te;
    if (r == 0.0) return 0.0;
    // y^2 / (e^y / r - 1) with e^y - r = expm1(y) + (1 - r).
    return y * y * r / (std::expm1(y) + (1.0 - r));
  };

  const double lo = y_l;
  const double hi = y_l + kIntegrationSpan;
  const double tol = policy.rel_tol_quadrature;
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  switch (policy.rule) {
    case QuadratureRule::gauss_kronrod_15:
      value = integrate_rule<15>(integrand, lo, hi, tol, error, l1);
      break;
    case QuadratureRule::gauss_kronrod_31:
      value = integrate_rule<31>(integrand, lo, hi, tol, error, l1);
      break;
    case QuadratureRule::gauss_kronrod_61:
      value = integrate_rule<61>(integrand, lo, hi, tol, error, l1);
      break;
  }
  if (!std::isfinite(value)) {
    throw ConvergenceError("non-finite Matsubara term at l = " + std::to_string(l), PressureResult{});
  }
  if (error > 10.0 * tol * l1 && error > std::numeric_limits<double>::min()) {
    throw ConvergenceError("quadrature did not reach tolerance at l = " + std::to_string(l) +
                               " (error " + std::to_string(error) + ")",
                           PressureResult{});
  }
  return value;
}

double term_integral(std::size_t l, const PlatePairConfig& cfg, Polarization pol,
                     const NumericsPolicy& policy) {
  cfg.validate();
  const MaterialReflection p1(cfg.effective_plate(1), cfg.separation, cfg.temperature);
  const MaterialReflection p2(cfg.effective_plate(2), cfg.separation, cfg.temperature);
  return term_integral(l, p1, p2, matsubara_y(l, cfg.separation, cfg.temperature), pol, policy);
}

PressureResult pressure(const ReflectionModel& plate1, const ReflectionModel& plate2, double separation,
                        double temperature, const NumericsPolicy& policy, Execution exec) {
  return run_sum(plate1, plate2, separation, temperature, policy, exec, nullptr);
}

PressureResult pressure(const PlatePairConfig& cfg, const NumericsPolicy& policy, Execution exec,
                        std::vector<TermContribution>* rows) {
  cfg.validate();
  const MaterialReflection p1(cfg.effective_plate(1), cfg.separation, cfg.temperature);
  const MaterialReflection p2(cfg.effective_plate(2), cfg.separation, cfg.temperature);
  if (rows != nullptr) rows->clear();
  return run_sum(p1, p2, cfg.separation, cfg.temperature, policy, exec, rows);
}

double relative_pressure(const PlatePairConfig& cfg, const NumericsPolicy& policy) {
  return pressure(cfg, policy).relative;
}

std::vector<TermContribution> term_diagnostics(const PlatePairConfig& cfg, const NumericsPolicy& policy,
                                               Execution exec) {
  std::vector<TermContribution> rows;
  pressure(cfg, policy, exec, &rows);
  return rows;
}

}  // namespace casimir
