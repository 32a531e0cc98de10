#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "casimir/engine.hpp"
#include "casimir/materials.hpp"

// JSON documents accepted by the command-line tool.
//
// Plate pair:
//   {
//     "plates": [ <plate>, <plate> ],
//     "separation_um": 1.0,
//     "temperature_K": 300,
//     "numerics": { "rel_tol_quadrature": 1e-9, "rel_tol_sum_tail": 1e-9,
//                   "max_matsubara_terms": 100000, "quadrature": "gk31", "workers": 0 }
//   }
//
// A plate is either a catalogue name ("Co") or an object
//   { "material": "Co" | <inline material>, "model": "drude" | "plasma", "mu0": 70 | {"table": "gd.csv"} }
//
// An inline material is
//   { "label": "...",
//     "permittivity": { "type": "drude", "plasma_frequency_eV": 3.97, "relaxation_eV": 0.036 }
//                   | { "type": "plasma", "plasma_frequency_eV": 9.0 }
//                   | { "type": "composite", "volume_fraction": 0.25,
//                       "host_permittivity": 2.56 | "host_table": "eps.csv" }
//                   | { "type": "static", "permittivity": 5.12 },
//     "permeability": 25 | { "table": "mu.csv" } | { "rows": [[280, 30], [293, 1]] } }
//
// Relative paths are resolved against the directory of the document.
namespace casimir::config {

using nlohmann::json;

MaterialModel material_from_json(const json& j, const std::filesystem::path& base_dir = {});
PermeabilityModel permeability_from_json(const json& j, const std::filesystem::path& base_dir = {});
NumericsPolicy policy_from_json(const json& j);
PlatePairConfig plate_pair_from_json(const json& j, const std::filesystem::path& base_dir = {});

json to_json(const MaterialModel& m);
json to_json(const PermeabilityModel& p);
json to_json(const NumericsPolicy& p);
/// Plates are echoed inline, so the result re-parses without the catalogue.
json to_json(const PlatePairConfig& cfg);

json read_json_file(const std::filesystem::path& path);

MetalModel metal_model_from_string(const std::string& s);
QuadratureRule quadrature_rule_from_string(const std::string& s);
std::string to_string(QuadratureRule rule);

/// FNV-1a 64-bit hash of the compact dump of j.
std::uint64_t manifest_hash(const json& j);
std::string hex_hash(std::uint64_t h);

}  // namespace casimir::config
