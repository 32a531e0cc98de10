#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "casimir/config.hpp"
#include "casimir/engine.hpp"

namespace casimir {

inline constexpr const char* tool_version = "1.0.0";

enum class SweepMode { separation, temperature };
enum class GridKind { linear, logarithmic };
enum class Quantity { pressure, relative, terms };
enum class OutputFormat { csv, json };

/// One overlay curve: optional metal model for every metal plate, and
/// whether magnetic properties are kept (mu(0) = 1 otherwise).
struct ModelVariant {
  std::optional<MetalModel> metal;
  bool magnetic = true;

  std::string name() const;
  static ModelVariant parse(const std::string& name);
};

/// The four overlays drude/plasma x magnetic/nonmagnetic, in that order.
std::array<ModelVariant, 4> standard_variants();

PlatePairConfig apply_variant(PlatePairConfig cfg, const ModelVariant& variant);

struct SweepSpec {
  SweepMode mode = SweepMode::separation;
  double start = 0.5;
  double stop = 6.0;
  std::size_t points = 12;
  GridKind grid = GridKind::linear;
  PlatePairConfig config;
  NumericsPolicy policy;
  std::vector<ModelVariant> variants{ModelVariant{}};
  Quantity quantity = Quantity::relative;
  OutputFormat format = OutputFormat::csv;

  void validate() const;
  std::vector<double> grid_points() const;
};

SweepSpec sweep_spec_from_json(const config::json& j, const std::filesystem::path& base_dir = {});
config::json to_json(const SweepSpec& spec);

struct SweepCell {
  PressureResult result;
  std::vector<TermContribution> terms;  // filled for Quantity::terms
  bool converged = false;
  std::string error;
};

struct RunManifest {
  std::string version = tool_version;
  config::json config;
  config::json numerics;
  std::string hash;
  double wall_seconds = 0.0;
  std::size_t evaluations = 0;
  std::size_t flagged = 0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<double> xs;
  /// cells[i][v]: grid point i, variant v.
  std::vector<std::vector<SweepCell>> cells;
  RunManifest manifest;

  bool all_converged() const { return manifest.flagged == 0; }
  /// The quantity selected by the spec for one cell.
  double value(std::size_t i, std::size_t v) const;
};

/// Evaluates every grid point and variant. Points run concurrently on up to
/// spec.policy.workers OpenMP threads when exec is parallel; each point uses
/// the serial engine, so output is independent of the thread count.
/// Unconverged points are flagged and the sweep continues.
SweepResult run_sweep(const SweepSpec& spec, Execution exec = Execution::parallel);

void write_csv(std::ostream& out, const SweepResult& result);
config::json to_json(const SweepResult& result);

/// Formats with 12 significant digits.
std::string format_number(double v);

struct ModelComparisonEntry {
  ModelVariant variant;
  PressureResult result;
};

struct PairwiseDifference {
  std::size_t first = 0;
  std::size_t second = 0;
  double absolute = 0.0;  // Pa
  double relative = 0.0;  // |Pi - Pj| / max(|Pi|, |Pj|)
};

struct ModelComparison {
  PlatePairConfig config;
  std::array<ModelComparisonEntry, 4> entries;
  std::vector<PairwiseDifference> differences;  // all six pairs, i < j

  /// The pair with the smallest absolute difference.
  const PairwiseDifference& closest() const;
};

ModelComparison compare_models(const PlatePairConfig& cfg, double separation, double temperature,
                               const NumericsPolicy& policy = {});
config::json to_json(const ModelComparison& cmp);

struct RepulsionSample {
  double separation = 0.0;
  double pressure = 0.0;  // Pa
};

struct RepulsionReport {
  std::string dielectric;
  std::string metal;
  MetalModel metal_model = MetalModel::plasma;
  bool predicate = false;           // at the largest separation
  double predicate_separation = 0.0;
  std::vector<RepulsionSample> scan;
  std::vector<double> crossings;    // um, bisected to crossing_tolerance
  bool repulsive_anywhere = false;
};

inline constexpr double crossing_tolerance = 1e-3;

/// Scans a dielectric-metal pair over [a_min, a_max] on a logarithmic grid.
/// Throws ClassificationError for any other plate combination.
RepulsionReport check_repulsion(const PlatePairConfig& cfg, double a_min, double a_max,
                                std::size_t points = 24, const NumericsPolicy& policy = {});
config::json to_json(const RepulsionReport& report);

}  // namespace casimir
