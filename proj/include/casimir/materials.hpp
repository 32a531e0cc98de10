#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace casimir {

/// Piecewise-linear table over a strictly increasing abscissa.
class LinearTable {
 public:
  LinearTable() = default;
  /// Throws ValidationError unless x is strictly increasing and both columns match.
  LinearTable(std::vector<double> x, std::vector<double> y);

  double front_x() const { return x_.front(); }
  double back_x() const { return x_.back(); }
  double front_y() const { return y_.front(); }
  double back_y() const { return y_.back(); }
  std::size_t size() const { return x_.size(); }
  bool empty() const { return x_.empty(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }

  /// Linear interpolation; x must lie in [front_x, back_x].
  double operator()(double x) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Reads a two-column numeric CSV. '#' lines and blank lines are skipped and
/// a single non-numeric header line before the data is accepted.
/// Second-column values below min_value are rejected.
/// Throws ParseError carrying the offending line number.
LinearTable read_two_column_csv(const std::filesystem::path& path,
                                double min_value = -std::numeric_limits<double>::infinity());
LinearTable parse_two_column_csv(std::string_view text, const std::string& source = "<memory>",
                                 double min_value = -std::numeric_limits<double>::infinity());

struct DrudeParams {
  double plasma_frequency = 0.0;  // eV
  double relaxation = 0.0;        // eV
};

struct PlasmaParams {
  double plasma_frequency = 0.0;  // eV
};

/// Host permittivity on the imaginary axis: either constant or tabulated
/// against xi (eV). Tables hold their end values outside the sampled range.
class HostPermittivity {
 public:
  HostPermittivity(double constant = 2.56);
  explicit HostPermittivity(LinearTable table);

  double operator()(double xi) const;
  bool is_constant() const { return table_.empty(); }
  double constant() const { return constant_; }
  const LinearTable& table() const { return table_; }

 private:
  double constant_ = 2.56;
  LinearTable table_;
};

/// Polystyrene-like host with a volume fraction f of ferromagnetic inclusions.
struct CompositeDielectricParams {
  double volume_fraction = 0.0;
  HostPermittivity host;
};

/// Frequency-independent permittivity, eps(i xi) = eps(0).
struct StaticPermittivity {
  double value = 1.0;
};

using Permittivity =
    std::variant<DrudeParams, PlasmaParams, CompositeDielectricParams, StaticPermittivity>;

enum class MetalModel { drude, plasma };

/// Static permeability mu(0), constant or tabulated against temperature.
class PermeabilityModel {
 public:
  PermeabilityModel(double static_mu = 1.0);
  explicit PermeabilityModel(LinearTable mu_of_temperature);

  /// mu(0) at temperature T. Tables never extrapolate below their first row;
  /// above the last row they return 1 only when the last row already has mu(0) = 1.
  double static_mu(double temperature) const;

  bool is_tabulated() const { return !table_.empty(); }
  double constant() const { return constant_; }
  const LinearTable& table() const { return table_; }

 private:
  double constant_ = 1.0;
  LinearTable table_;
};

struct MaterialModel {
  std::string label;
  Permittivity permittivity;
  PermeabilityModel permeability;

  bool is_metal() const;
  /// eps(i xi) for xi > 0 (dielectrics also accept xi = 0).
  double permittivity_at(double xi) const;
  /// eps(0) for dielectrics; throws DomainError for metals.
  double static_permittivity() const;
  /// omega_p of a metal; throws DomainError for dielectrics.
  double plasma_frequency() const;
};

double drude_permittivity(double xi, const DrudeParams& params);
double plasma_permittivity(double xi, const PlasmaParams& params);
double composite_permittivity(double xi, const CompositeDielectricParams& params);

/// mu at Matsubara index l: mu(0) for l = 0 and exactly 1 for every l >= 1.
double permeability_at(std::size_t l, const PermeabilityModel& model, double temperature);

void validate(const DrudeParams& params);
void validate(const PlasmaParams& params);
void validate(const CompositeDielectricParams& params);
void validate(const MaterialModel& model);

/// Catalogue: "Co", "Au", "Gd", "polystyrene-composite". Metals are returned
/// with Drude parameters; with_metal_model() switches them to the plasma form.
MaterialModel builtin_material(std::string_view name);
std::vector<std::string> builtin_material_names();

/// Illustrative mu(0)(T) for Gd across its 293 K Curie point.
LinearTable gadolinium_mu_table();

PermeabilityModel load_mu_table(const std::filesystem::path& path);
HostPermittivity load_host_permittivity(const std::filesystem::path& path);

/// Returns the model with its metal permittivity in the requested form.
/// Dielectrics pass through unchanged; plasma params cannot become Drude.
MaterialModel with_metal_model(MaterialModel model, MetalModel metal);

/// Returns the model with mu(0) = 1.
MaterialModel without_magnetism(MaterialModel model);

std::string_view to_string(MetalModel metal);

}  // namespace casimir
