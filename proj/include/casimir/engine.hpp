#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

enum class QuadratureRule { gauss_kronrod_15, gauss_kronrod_31, gauss_kronrod_61 };

struct NumericsPolicy {
  double rel_tol_quadrature = 1e-9;
  double rel_tol_sum_tail = 1e-9;
  std::size_t max_matsubara_terms = 100000;
  QuadratureRule rule = QuadratureRule::gauss_kronrod_31;
  /// OpenMP thread budget for the parallel path; 0 uses the runtime default.
  int workers = 0;

  void validate() const;
};

/// Serial is the reference path; parallel must reproduce it bit for bit.
enum class Execution { serial, parallel };

enum class Polarization { tm, te };

struct PlatePairConfig {
  MaterialModel plate1;
  MaterialModel plate2;
  double separation = 1.0;    // um
  double temperature = 300.0; // K
  /// Optional Drude/plasma choice per plate; applies to metals only.
  std::array<std::optional<MetalModel>, 2> metal_model;

  void validate() const;
  /// Plate n (1 or 2) with the metal-model selector applied.
  MaterialModel effective_plate(int n) const;
};

/// Every pressure-valued field is signed (negative = attraction). The reduced
/// fields are in units of k_B T/(8 pi a^3).
struct PressureResult {
  double pressure = 0.0;  // Pa
  double reduced = 0.0;
  double relative = 0.0;  // P / P0
  double zero_term_tm = 0.0;
  double zero_term_te = 0.0;
  double nonzero_sum = 0.0;
  double tail_estimate = 0.0;
  std::size_t terms_used = 0;
  bool converged = false;
};

/// One retained Matsubara term: its weighted, signed TM and TE contributions
/// to the reduced pressure.
struct TermContribution {
  std::size_t l = 0;
  double tm = 0.0;
  double te = 0.0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, PressureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const PressureResult& partial() const noexcept { return partial_; }

 private:
  PressureResult partial_;
};

/// Reflection of one plate as seen by the engine: coefficients at Matsubara
/// index l as a function of the dimensionless y = 2 a q_l.
class ReflectionModel {
 public:
  virtual ~ReflectionModel() = default;
  virtual ReflectionPair at(std::size_t l, double y) const = 0;
};

/// Reflection of a material plate at fixed separation and temperature.
class MaterialReflection final : public ReflectionModel {
 public:
  MaterialReflection(MaterialModel material, double separation, double temperature);
  ReflectionPair at(std::size_t l, double y) const override;

 private:
  MaterialModel material_;
  double separation_;
  double temperature_;
  double y_step_;  // y_1 = 2 a xi_1 / c
};

/// Synthetic plate reflecting constant (tm, te) at l = 0 and nothing at l >= 1.
class StaticReflection final : public ReflectionModel {
 public:
  StaticReflection(double tm, double te) : coefficients_{tm, te} {}
  ReflectionPair at(std::size_t l, double) const override {
    return l == 0 ? coefficients_ : ReflectionPair{};
  }

 private:
  ReflectionPair coefficients_;
};

/// xi_l = 2 pi k_B T l in eV.
double matsubara_frequency(std::size_t l, double temperature);

/// Dimensionless y_l = 2 a xi_l / c.
double matsubara_y(std::size_t l, double separation, double temperature);

/// Unweighted integral over y in [y_l, inf) of y^2 / (e^y/(r1 r2) - 1).
/// Positive for attraction; the l = 0 term uses the zero-frequency coefficients.
double term_integral(std::size_t l, const PlatePairConfig& cfg, Polarization pol,
                     const NumericsPolicy& policy = {});
double term_integral(std::size_t l, const ReflectionModel& plate1, const ReflectionModel& plate2,
                     double y_l, Polarization pol, const NumericsPolicy& policy = {});

/// When rows is non-null it receives every retained term in ascending l.
PressureResult pressure(const PlatePairConfig& cfg, const NumericsPolicy& policy = {},
                        Execution exec = Execution::serial,
                        std::vector<TermContribution>* rows = nullptr);
PressureResult pressure(const ReflectionModel& plate1, const ReflectionModel& plate2,
                        double separation, double temperature, const NumericsPolicy& policy = {},
                        Execution exec = Execution::serial);

double relative_pressure(const PlatePairConfig& cfg, const NumericsPolicy& policy = {});

std::vector<TermContribution> term_diagnostics(const PlatePairConfig& cfg,
                                               const NumericsPolicy& policy = {},
                                               Execution exec = Execution::serial);

}  // namespace casimir
