#pragma once

#include <string>
#include <variant>
#include <vector>

#include "casimir/engine.hpp"

namespace casimir {

/// Trilogarithm Li_3(z) for real |z| <= 1, accurate to ~1e-15 absolute.
double polylog3(double z);

// Large-separation scenarios. Skin depths are in um.

/// Two identical Drude metals; mu0 may be +infinity.
struct DrudeSimilar {
  double mu0 = 1.0;
};
/// Two identical plasma metals.
struct PlasmaSimilarFM {
  double mu0 = 1.0;
  double skin_depth = 0.0;
};
/// Drude ferromagnet against a nonmagnetic Drude metal.
struct DrudeDissimilarMetal {};
/// Plasma ferromagnet (plate 1) against a nonmagnetic plasma metal (plate 2).
struct PlasmaDissimilarMetal {
  double mu0 = 1.0;
  double skin_depth_magnetic = 0.0;
  double skin_depth_nonmagnetic = 0.0;
};
/// Dielectric against a nonmagnetic Drude metal.
struct DrudeDielectricMetal {
  double dielectric_permittivity = 1.0;
};
/// Magnetic dielectric against a nonmagnetic plasma metal.
struct PlasmaDielectricMetal {
  double dielectric_permittivity = 1.0;
  double mu0 = 1.0;
  double metal_skin_depth = 0.0;
};

using ClassicalLimitScenario =
    std::variant<DrudeSimilar, PlasmaSimilarFM, DrudeDissimilarMetal, PlasmaDissimilarMetal,
                 DrudeDielectricMetal, PlasmaDielectricMetal>;

struct ClassicalPressure {
  double pressure = 0.0;  // Pa
  double reduced = 0.0;   // units of k_B T/(8 pi a^3)
  /// Smallness conditions such as sqrt(mu0) delta0 / a << 1 that exceed 0.3.
  std::vector<std::string> warnings;
};

inline constexpr double smallness_warning_threshold = 0.3;

std::string scenario_name(const ClassicalLimitScenario& scenario);

ClassicalPressure classical_pressure(const ClassicalLimitScenario& scenario, double separation,
                                     double temperature);

/// True iff the magnetic TE attraction deficit outweighs the dielectric TM
/// term, i.e. Li3(r_eps) < |Li3(-r_mu)(1 - 3 delta02/a)|.
bool repulsion_predicate(const PlasmaDielectricMetal& scenario, double separation);

/// Maps a plate pair onto its closed-form scenario, swapping plates when the
/// formula expects the magnetic or dielectric plate first.
/// Throws ClassificationError when none applies.
ClassicalLimitScenario classify(const PlatePairConfig& cfg);

struct ConsistencyRow {
  double separation = 0.0;
  double engine = 0.0;       // Pa
  double closed_form = 0.0;  // Pa
  double deviation = 0.0;    // |engine - closed| / |closed|
};

struct ConsistencyReport {
  std::string scenario;
  std::vector<ConsistencyRow> rows;
  double max_deviation = 0.0;
};

/// Engine against the matching closed form over a in [a_min, 4 a_min].
ConsistencyReport consistency_report(const PlatePairConfig& cfg, double a_min,
                                     const NumericsPolicy& policy = {}, std::size_t points = 7);

}  // namespace casimir
