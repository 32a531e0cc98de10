#include "casimir/materials.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

double constant_mu_validated(double mu) {
  if (!(mu >= 1.0)) throw ValidationError("static permeability must be >= 1, got " + std::to_string(mu));
  return mu;
}

}  // namespace

LinearTable::LinearTable(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw ValidationError("table columns differ in length");
  if (x_.empty()) throw ValidationError("table is empty");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw ValidationError("table abscissa must be strictly increasing");
  }
}

double LinearTable::operator()(double x) const {
  if (x_.empty()) throw RangeError("query on empty table");
  if (x < x_.front() || x > x_.back()) {
    throw RangeError("table query " + std::to_string(x) + " outside [" +
                     std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
  }
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.end()) return y_.back();
  const auto hi = static_cast<std::size_t>(it - x_.begin());
  const auto lo = hi - 1;
  const double t = (x - x_[lo]) / (x_[hi] - x_[lo]);
  return y_[lo] + t * (y_[hi] - y_[lo]);
}

LinearTable parse_two_column_csv(std::string_view text, const std::string& source, double min_value) {
  std::vector<double> xs;
  std::vector<double> ys;
  bool header_allowed = true;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const auto comma = line.find(',');
    double x = 0.0;
    double y = 0.0;
    const bool ok = comma != std::string_view::npos &&
                    line.find(',', comma + 1) == std::string_view::npos &&
                    parse_double(line.substr(0, comma), x) &&
                    parse_double(line.substr(comma + 1), y);
    if (!ok) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ParseError(source, line_no, "expected two numeric columns, got '" + std::string(line) + "'");
    }
    header_allowed = false;
    if (!xs.empty() && !(x > xs.back())) {
      throw ParseError(source, line_no, "first column must be strictly increasing");
    }
    if (y < min_value) {
      throw ParseError(source, line_no, "value " + std::string(trim(line.substr(comma + 1))) +
                                            " below minimum " + std::to_string(min_value));
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.empty()) throw ParseError(source, line_no, "no data rows");
  return LinearTable(std::move(xs), std::move(ys));
}

LinearTable read_two_column_csv(const std::filesystem::path& path, double min_value) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_two_column_csv(buffer.str(), path.string(), min_value);
}

HostPermittivity::HostPermittivity(double constant) : constant_(constant) {
  if (!(constant >= 1.0)) throw ValidationError("host permittivity must be >= 1");
}

HostPermittivity::HostPermittivity(LinearTable table) : constant_(table.front_y()), table_(std::move(table)) {
  for (double v : table_.y()) {
    if (!(v >= 1.0)) throw ValidationError("host permittivity table values must be >= 1");
  }
}

double HostPermittivity::operator()(double xi) const {
  if (table_.empty()) return constant_;
  const double clamped = std::clamp(xi, table_.front_x(), table_.back_x());
  return table_(clamped);
}

PermeabilityModel::PermeabilityModel(double static_mu) : constant_(constant_mu_validated(static_mu)) {}

PermeabilityModel::PermeabilityModel(LinearTable mu_of_temperature) : table_(std::move(mu_of_temperature)) {
  for (double v : table_.y()) constant_mu_validated(v);
  constant_ = table_.back_y();
}

double PermeabilityModel::static_mu(double temperature) const {
  if (table_.empty()) return constant_;
  if (temperature > table_.back_x() && table_.back_y() == 1.0) return 1.0;
  return table_(temperature);
}

bool MaterialModel::is_metal() const {
  return std::holds_alternative<DrudeParams>(permittivity) ||
         std::holds_alternative<PlasmaParams>(permittivity);
}

double MaterialModel::permittivity_at(double xi) const {
  return std::visit(
      [xi](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DrudeParams>) {
          return drude_permittivity(xi, p);
        } else if constexpr (std::is_same_v<T, PlasmaParams>) {
          return plasma_permittivity(xi, p);
        } else if constexpr (std::is_same_v<T, CompositeDielectricParams>) {
          return composite_permittivity(xi, p);
        } else {
          return p.value;
        }
      },
      permittivity);
}

double MaterialModel::static_permittivity() const {
  if (is_metal()) throw DomainError("metals have no finite static permittivity: " + label);
  return permittivity_at(0.0);
}

double MaterialModel::plasma_frequency() const {
  if (const auto* d = std::get_if<DrudeParams>(&permittivity)) return d->plasma_frequency;
  if (const auto* p = std::get_if<PlasmaParams>(&permittivity)) return p->plasma_frequency;
  throw DomainError("dielectric has no plasma frequency: " + label);
}

void validate(const DrudeParams& params) {
  if (!(params.plasma_frequency > 0.0) || !std::isfinite(params.plasma_frequency)) {
    throw ValidationError("Drude plasma frequency must be positive");
  }
  if (!(params.relaxation > 0.0) || !std::isfinite(params.relaxation)) {
    throw ValidationError("Drude relaxation must be positive");
  }
}

void validate(const PlasmaParams& params) {
  if (!(params.plasma_frequency > 0.0) || !std::isfinite(params.plasma_frequency)) {
    throw ValidationError("plasma frequency must be positive");
  }
}

void validate(const CompositeDielectricParams& params) {
  if (!(params.volume_fraction >= 0.0 && params.volume_fraction < 1.0)) {
    throw ValidationError("volume fraction must lie in [0, 1), got " +
                          std::to_string(params.volume_fraction));
  }
}

void validate(const MaterialModel& model) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StaticPermittivity>) {
          if (!(p.value >= 1.0) || !std::isfinite(p.value)) {
            throw ValidationError("static permittivity must be >= 1");
          }
        } else {
          validate(p);
        }
      },
      model.permittivity);
}

double drude_permittivity(double xi, const DrudeParams& params) {
  if (!(xi > 0.0)) {
    throw DomainError("Drude permittivity diverges at xi <= 0; use the zero-frequency coefficients");
  }
  validate(params);
  const double wp = params.plasma_frequency;
  return 1.0 + wp * wp / (xi * (xi + params.relaxation));
}

double plasma_permittivity(double xi, const PlasmaParams& params) {
  if (!(xi > 0.0)) {
    throw DomainError("plasma permittivity diverges at xi <= 0; use the zero-frequency coefficients");
  }
  validate(params);
  const double wp = params.plasma_frequency;
  return 1.0 + wp * wp / (xi * xi);
}

double composite_permittivity(double xi, const CompositeDielectricParams& params) {
  validate(params);
  if (!(xi >= 0.0)) throw DomainError("imaginary frequency must be non-negative");
  const double f = params.volume_fraction;
  return params.host(xi) * (1.0 + 3.0 * f / (1.0 - f));
}

double permeability_at(std::size_t l, const PermeabilityModel& model, double temperature) {
  if (l >= 1) return 1.0;
  return model.static_mu(temperature);
}

LinearTable gadolinium_mu_table() {
  // Monotone stand-in for measured initial permeability of Gd near T_C = 293 K.
  return LinearTable({280.0, 282.0, 284.0, 286.0, 288.0, 290.0, 291.0, 292.0, 292.5, 293.0},
                     {40.0, 36.0, 31.0, 26.0, 20.0, 13.0, 9.0, 5.0, 3.0, 1.0});
}

std::vector<std::string> builtin_material_names() {
  return {"Co", "Au", "Gd", "polystyrene-composite"};
}

MaterialModel builtin_material(std::string_view name) {
  if (name == "Co") return {"Co", DrudeParams{3.97, 0.036}, PermeabilityModel(70.0)};
  if (name == "Au") return {"Au", DrudeParams{9.0, 0.035}, PermeabilityModel(1.0)};
  if (name == "Gd") return {"Gd", DrudeParams{9.1, 0.58}, PermeabilityModel(gadolinium_mu_table())};
  if (name == "polystyrene-composite") {
    return {"polystyrene-composite", CompositeDielectricParams{0.25, HostPermittivity(2.56)},
            PermeabilityModel(25.0)};
  }
  std::string known;
  for (const auto& n : builtin_material_names()) known += (known.empty() ? "" : ", ") + n;
  throw LookupError("unknown material '" + std::string(name) + "'; catalogue: " + known);
}

PermeabilityModel load_mu_table(const std::filesystem::path& path) {
  return PermeabilityModel(read_two_column_csv(path, 1.0));
}

HostPermittivity load_host_permittivity(const std::filesystem::path& path) {
  return HostPermittivity(read_two_column_csv(path, 1.0));
}

MaterialModel with_metal_model(MaterialModel model, MetalModel metal) {
  if (const auto* d = std::get_if<DrudeParams>(&model.permittivity)) {
    if (metal == MetalModel::plasma) model.permittivity = PlasmaParams{d->plasma_frequency};
  } else if (std::holds_alternative<PlasmaParams>(model.permittivity)) {
    if (metal == MetalModel::drude) {
      throw ValidationError("material '" + model.label + "' has no relaxation parameter for the Drude model");
    }
  }
  return model;
}

MaterialModel without_magnetism(MaterialModel model) {
  model.permeability = PermeabilityModel(1.0);
  return model;
}

std::string_view to_string(MetalModel metal) {
  return metal == MetalModel::drude ? "drude" : "plasma";
}

}  // namespace casimir
