#include "casimir/config.hpp"

#include <cstdio>
#include <fstream>

#include "casimir/errors.hpp"

namespace casimir::config {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

json table_rows(const LinearTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) rows.push_back({t.x()[i], t.y()[i]});
  return rows;
}

LinearTable table_from_rows(const json& rows) {
  if (!rows.is_array()) throw ValidationError("'rows' must be an array of [x, y] pairs");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
      throw ValidationError("each table row must be a [number, number] pair");
    }
    xs.push_back(row[0].get<double>());
    ys.push_back(row[1].get<double>());
  }
  return LinearTable(std::move(xs), std::move(ys));
}

Permittivity permittivity_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("type")) throw ValidationError("permittivity needs a 'type'");
  const auto type = j.at("type").get<std::string>();
  if (type == "drude") {
    DrudeParams p{number(j, "plasma_frequency_eV"), number(j, "relaxation_eV")};
    validate(p);
    return p;
  }
  if (type == "plasma") {
    PlasmaParams p{number(j, "plasma_frequency_eV")};
    validate(p);
    return p;
  }
  if (type == "composite") {
    CompositeDielectricParams p;
    p.volume_fraction = number(j, "volume_fraction");
    if (j.contains("host_table")) {
      p.host = load_host_permittivity(resolve(base_dir, j.at("host_table").get<std::string>()));
    } else if (j.contains("host_rows")) {
      p.host = HostPermittivity(table_from_rows(j.at("host_rows")));
    } else {
      p.host = HostPermittivity(number_or(j, "host_permittivity", 2.56));
    }
    validate(p);
    return p;
  }
  if (type == "static") {
    StaticPermittivity p{number(j, "permittivity")};
    if (!(p.value >= 1.0)) throw ValidationError("static permittivity must be >= 1");
    return p;
  }
  throw ValidationError("unknown permittivity type '" + type + "'");
}

}  // namespace

PermeabilityModel permeability_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_number()) return PermeabilityModel(j.get<double>());
  if (j.is_string() && j.get<std::string>() == "gd-builtin") return PermeabilityModel(gadolinium_mu_table());
  if (j.is_object()) {
    if (j.contains("table")) return load_mu_table(resolve(base_dir, j.at("table").get<std::string>()));
    if (j.contains("rows")) return PermeabilityModel(table_from_rows(j.at("rows")));
  }
  throw ValidationError("permeability must be a number, \"gd-builtin\", {\"table\": path} or {\"rows\": [...]}");
}

MaterialModel material_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) return builtin_material(j.get<std::string>());
  if (!j.is_object()) throw ValidationError("material must be a catalogue name or an object");
  MaterialModel m;
  m.label = j.value("label", std::string("custom"));
  m.permittivity = permittivity_from_json(j.at("permittivity"), base_dir);
  m.permeability = j.contains("permeability") ? permeability_from_json(j.at("permeability"), base_dir)
                                              : PermeabilityModel(1.0);
  return m;
}

NumericsPolicy policy_from_json(const json& j) {
  NumericsPolicy p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw ValidationError("numerics must be an object");
  p.rel_tol_quadrature = number_or(j, "rel_tol_quadrature", p.rel_tol_quadrature);
  p.rel_tol_sum_tail = number_or(j, "rel_tol_sum_tail", p.rel_tol_sum_tail);
  if (j.contains("max_matsubara_terms")) p.max_matsubara_terms = j.at("max_matsubara_terms").get<std::size_t>();
  if (j.contains("quadrature")) p.rule = quadrature_rule_from_string(j.at("quadrature").get<std::string>());
  if (j.contains("workers")) p.workers = j.at("workers").get<int>();
  p.validate();
  return p;
}

PlatePairConfig plate_pair_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ValidationError("plate pair configuration must be an object");
  const json& plates = j.at("plates");
  if (!plates.is_array() || plates.size() != 2) throw ValidationError("'plates' must hold exactly two plates");

  PlatePairConfig cfg;
  for (std::size_t n = 0; n < 2; ++n) {
    const json& plate = plates[n];
    MaterialModel m;
    std::optional<MetalModel> selector;
    if (plate.is_object() && plate.contains("material")) {
      m = material_from_json(plate.at("material"), base_dir);
      if (plate.contains("model")) selector = metal_model_from_string(plate.at("model").get<std::string>());
      if (plate.contains("mu0")) m.permeability = permeability_from_json(plate.at("mu0"), base_dir);
    } else {
      m = material_from_json(plate, base_dir);
    }
    (n == 0 ? cfg.plate1 : cfg.plate2) = std::move(m);
    cfg.metal_model[n] = selector;
  }
  cfg.separation = number_or(j, "separation_um", cfg.separation);
  cfg.temperature = number_or(j, "temperature_K", cfg.temperature);
  cfg.validate();
  return cfg;
}

json to_json(const PermeabilityModel& p) {
  if (p.is_tabulated()) return json{{"rows", table_rows(p.table())}};
  return p.constant();
}

json to_json(const MaterialModel& m) {
  json perm = std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DrudeParams>) {
          return {{"type", "drude"}, {"plasma_frequency_eV", p.plasma_frequency}, {"relaxation_eV", p.relaxation}};
        } else if constexpr (std::is_same_v<T, PlasmaParams>) {
          return {{"type", "plasma"}, {"plasma_frequency_eV", p.plasma_frequency}};
        } else if constexpr (std::is_same_v<T, CompositeDielectricParams>) {
          json c = {{"type", "composite"}, {"volume_fraction", p.volume_fraction}};
          if (p.host.is_constant()) {
            c["host_permittivity"] = p.host.constant();
          } else {
            c["host_rows"] = table_rows(p.host.table());
          }
          return c;
        } else {
          return {{"type", "static"}, {"permittivity", p.value}};
        }
      },
      m.permittivity);
  return {{"label", m.label}, {"permittivity", perm}, {"permeability", to_json(m.permeability)}};
}

json to_json(const NumericsPolicy& p) {
  return {{"rel_tol_quadrature", p.rel_tol_quadrature},
          {"rel_tol_sum_tail", p.rel_tol_sum_tail},
          {"max_matsubara_terms", p.max_matsubara_terms},
          {"quadrature", to_string(p.rule)},
          {"workers", p.workers}};
}

json to_json(const PlatePairConfig& cfg) {
  json plates = json::array();
  for (int n = 1; n <= 2; ++n) {
    json plate = {{"material", to_json(n == 1 ? cfg.plate1 : cfg.plate2)}};
    if (const auto& sel = cfg.metal_model[static_cast<std::size_t>(n - 1)]) {
      plate["model"] = std::string(casimir::to_string(*sel));
    }
    plates.push_back(plate);
  }
  return {{"plates", plates}, {"separation_um", cfg.separation}, {"temperature_K", cfg.temperature}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

MetalModel metal_model_from_string(const std::string& s) {
  if (s == "drude") return MetalModel::drude;
  if (s == "plasma") return MetalModel::plasma;
  throw ValidationError("metal model must be 'drude' or 'plasma', got '" + s + "'");
}

QuadratureRule quadrature_rule_from_string(const std::string& s) {
  if (s == "gk15") return QuadratureRule::gauss_kronrod_15;
  if (s == "gk31") return QuadratureRule::gauss_kronrod_31;
  if (s == "gk61") return QuadratureRule::gauss_kronrod_61;
  throw ValidationError("quadrature must be gk15, gk31 or gk61, got '" + s + "'");
}

std::string to_string(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::gauss_kronrod_15: return "gk15";
    case QuadratureRule::gauss_kronrod_31: return "gk31";
    case QuadratureRule::gauss_kronrod_61: return "gk61";
  }
  return "gk31";
}

std::uint64_t manifest_hash(const json& j) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex_hash(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace casimir::config
