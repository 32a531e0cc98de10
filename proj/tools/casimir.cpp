// casimir: thermal Casimir pressure between magnetic and nonmagnetic plates.
//
//   casimir pressure   --config pair.json
//   casimir sweep      --config sweep.json
//   casimir compare    --config pair.json
//   casimir repulsion  --config pair.json --from 0.5 --to 6
//   casimir consistency --config pair.json --from 6
//   casimir materials list
//
// Exit status: 0 when every point converged, 2 when any point was flagged,
// 1 on usage or configuration errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "casimir/asymptotics.hpp"
#include "casimir/config.hpp"
#include "casimir/engine.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "casimir/sweep.hpp"
#include "casimir/units.hpp"

namespace {

using casimir::config::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_flagged = 2;

struct CommonOptions {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::optional<double> tol;
  std::optional<int> workers;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_config) {
  auto* cfg = cmd->add_option("--config", opts.config, "JSON configuration file")->check(CLI::ExistingFile);
  if (needs_config) cfg->required();
  cmd->add_option("--out", opts.out, "output file (stdout when omitted)");
  cmd->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--tol", opts.tol, "relative tolerance for quadrature and Matsubara tail")
      ->check(CLI::Range(1e-15, 0.5));
  cmd->add_option("--workers", opts.workers, "OpenMP worker threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
}

casimir::NumericsPolicy apply_overrides(casimir::NumericsPolicy policy, const CommonOptions& opts) {
  if (opts.tol) {
    policy.rel_tol_quadrature = *opts.tol;
    policy.rel_tol_sum_tail = *opts.tol;
  }
  if (opts.workers) policy.workers = *opts.workers;
  policy.validate();
  return policy;
}

struct LoadedPair {
  casimir::PlatePairConfig cfg;
  casimir::NumericsPolicy policy;
};

LoadedPair load_pair(const CommonOptions& opts) {
  const std::filesystem::path path(opts.config);
  const json doc = casimir::config::read_json_file(path);
  LoadedPair loaded;
  loaded.cfg = casimir::config::plate_pair_from_json(doc, path.parent_path());
  loaded.policy = casimir::config::policy_from_json(doc.contains("numerics") ? doc.at("numerics") : json());
  loaded.policy = apply_overrides(loaded.policy, opts);
  return loaded;
}

void emit(const CommonOptions& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opts.out);
  if (!file) throw casimir::ValidationError("cannot write '" + opts.out + "'");
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json result_json(const casimir::PressureResult& r) {
  return {{"pressure_Pa", r.pressure},
          {"reduced", r.reduced},
          {"relative", r.relative},
          {"zero_term_tm", r.zero_term_tm},
          {"zero_term_te", r.zero_term_te},
          {"nonzero_sum", r.nonzero_sum},
          {"tail_estimate", r.tail_estimate},
          {"terms_used", r.terms_used},
          {"converged", r.converged}};
}

int run_pressure(const CommonOptions& opts) {
  const LoadedPair in = load_pair(opts);
  casimir::PressureResult result;
  std::string error;
  try {
    result = casimir::pressure(in.cfg, in.policy, casimir::Execution::parallel);
  } catch (const casimir::ConvergenceError& e) {
    result = e.partial();
    error = e.what();
  }

  const json echo = {{"config", casimir::config::to_json(in.cfg)}, {"numerics", casimir::config::to_json(in.policy)}};
  if (opts.format == "json") {
    json doc = {{"version", casimir::tool_version},
                {"hash", casimir::config::hex_hash(casimir::config::manifest_hash(echo))},
                {"input", echo},
                {"result", result_json(result)}};
    if (!error.empty()) doc["error"] = error;
    emit(opts, dump(doc));
  } else {
    using casimir::format_number;
    std::ostringstream out;
    out << "# casimir " << casimir::tool_version << " pressure\n";
    out << "# manifest_hash: " << casimir::config::hex_hash(casimir::config::manifest_hash(echo)) << "\n";
    out << "# numerics: " << echo.at("numerics").dump() << "\n";
    out << "# config: " << echo.at("config").dump() << "\n";
    out << "separation_um,temperature_K,pressure_Pa,reduced,P_over_P0,zero_term_tm,zero_term_te,"
           "nonzero_sum,terms_used,status\n";
    out << format_number(in.cfg.separation) << ',' << format_number(in.cfg.temperature) << ','
        << format_number(result.pressure) << ',' << format_number(result.reduced) << ','
        << format_number(result.relative) << ',' << format_number(result.zero_term_tm) << ','
        << format_number(result.zero_term_te) << ',' << format_number(result.nonzero_sum) << ','
        << result.terms_used << ',' << (result.converged ? "ok" : "flagged") << '\n';
    emit(opts, out.str());
  }
  if (!error.empty()) std::cerr << "casimir: " << error << '\n';
  return result.converged ? exit_ok : exit_flagged;
}

int run_sweep_command(const CommonOptions& opts) {
  const std::filesystem::path path(opts.config);
  casimir::SweepSpec spec = casimir::sweep_spec_from_json(casimir::config::read_json_file(path), path.parent_path());
  spec.policy = apply_overrides(spec.policy, opts);
  if (opts.format == "json") spec.format = casimir::OutputFormat::json;
  const casimir::SweepResult result = casimir::run_sweep(spec);

  if (spec.format == casimir::OutputFormat::json) {
    emit(opts, dump(casimir::to_json(result)));
  } else {
    std::ostringstream out;
    casimir::write_csv(out, result);
    emit(opts, out.str());
  }
  if (!result.all_converged()) {
    std::cerr << "casimir: " << result.manifest.flagged << " of " << result.manifest.evaluations
              << " evaluations did not converge\n";
  }
  return result.all_converged() ? exit_ok : exit_flagged;
}

int run_compare(const CommonOptions& opts) {
  const LoadedPair in = load_pair(opts);
  const casimir::ModelComparison cmp =
      casimir::compare_models(in.cfg, in.cfg.separation, in.cfg.temperature, in.policy);
  if (opts.format == "json") {
    emit(opts, dump(casimir::to_json(cmp)));
  } else {
    using casimir::format_number;
    std::ostringstream out;
    out << "# casimir " << casimir::tool_version << " compare at a = " << format_number(in.cfg.separation)
        << " um, T = " << format_number(in.cfg.temperature) << " K\n";
    out << "variant,pressure_Pa,P_over_P0,terms_used\n";
    for (const auto& e : cmp.entries) {
      out << e.variant.name() << ',' << format_number(e.result.pressure) << ','
          << format_number(e.result.relative) << ',' << e.result.terms_used << '\n';
    }
    out << "\nfirst,second,absolute_Pa,relative\n";
    for (const auto& d : cmp.differences) {
      out << cmp.entries[d.first].variant.name() << ',' << cmp.entries[d.second].variant.name() << ','
          << format_number(d.absolute) << ',' << format_number(d.relative) << '\n';
    }
    const auto& c = cmp.closest();
    out << "# closest pair: " << cmp.entries[c.first].variant.name() << " / "
        << cmp.entries[c.second].variant.name() << '\n';
    emit(opts, out.str());
  }
  return exit_ok;
}

int run_repulsion(const CommonOptions& opts, double from, double to, std::size_t points) {
  const LoadedPair in = load_pair(opts);
  const casimir::RepulsionReport report = casimir::check_repulsion(in.cfg, from, to, points, in.policy);
  if (opts.format == "json") {
    emit(opts, dump(casimir::to_json(report)));
  } else {
    using casimir::format_number;
    std::ostringstream out;
    out << "# casimir " << casimir::tool_version << " repulsion: " << report.dielectric << " vs "
        << report.metal << " (" << casimir::to_string(report.metal_model) << ")\n";
    out << "# predicate at " << format_number(report.predicate_separation)
        << " um: " << (report.predicate ? "repulsive" : "attractive") << '\n';
    for (double x : report.crossings) out << "# crossing_um: " << format_number(x) << '\n';
    out << "separation_um,pressure_Pa,sign\n";
    for (const auto& s : report.scan) {
      out << format_number(s.separation) << ',' << format_number(s.pressure) << ','
          << (s.pressure > 0.0 ? "repulsive" : "attractive") << '\n';
    }
    emit(opts, out.str());
  }
  return exit_ok;
}

int run_consistency(const CommonOptions& opts, double from, std::size_t points) {
  const LoadedPair in = load_pair(opts);
  const casimir::ConsistencyReport report = casimir::consistency_report(in.cfg, from, in.policy, points);
  using casimir::format_number;
  if (opts.format == "json") {
    json rows = json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"separation_um", r.separation},
                      {"engine_Pa", r.engine},
                      {"closed_form_Pa", r.closed_form},
                      {"deviation", r.deviation}});
    }
    emit(opts, dump({{"scenario", report.scenario}, {"max_deviation", report.max_deviation}, {"rows", rows}}));
  } else {
    std::ostringstream out;
    out << "# scenario: " << report.scenario << ", max deviation " << format_number(report.max_deviation) << '\n';
    out << "separation_um,engine_Pa,closed_form_Pa,deviation\n";
    for (const auto& r : report.rows) {
      out << format_number(r.separation) << ',' << format_number(r.engine) << ','
          << format_number(r.closed_form) << ',' << format_number(r.deviation) << '\n';
    }
    emit(opts, out.str());
  }
  return exit_ok;
}

std::string describe(const casimir::MaterialModel& m) {
  using casimir::format_number;
  std::string perm = std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, casimir::DrudeParams>) {
          return "drude wp=" + format_number(p.plasma_frequency) + " eV gamma=" + format_number(p.relaxation) + " eV";
        } else if constexpr (std::is_same_v<T, casimir::PlasmaParams>) {
          return "plasma wp=" + format_number(p.plasma_frequency) + " eV";
        } else if constexpr (std::is_same_v<T, casimir::CompositeDielectricParams>) {
          return "composite f=" + format_number(p.volume_fraction);
        } else {
          return "static eps=" + format_number(p.value);
        }
      },
      m.permittivity);
  const std::string mu = m.permeability.is_tabulated() ? "table(T)" : format_number(m.permeability.constant());
  return perm + ", mu0=" + mu;
}

int run_materials_list(const CommonOptions& opts) {
  if (opts.format == "json") {
    json doc = json::object();
    for (const auto& name : casimir::builtin_material_names()) {
      doc[name] = casimir::config::to_json(casimir::builtin_material(name));
    }
    emit(opts, dump(doc));
    return exit_ok;
  }
  std::ostringstream out;
  out << "name,description\n";
  for (const auto& name : casimir::builtin_material_names()) {
    out << name << ',' << describe(casimir::builtin_material(name)) << '\n';
  }
  emit(opts, out.str());
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal Casimir pressure between magnetic and nonmagnetic plates"};
  app.set_version_flag("--version", casimir::tool_version);
  app.require_subcommand(1);

  CommonOptions pressure_opts, sweep_opts, compare_opts, repulsion_opts, consistency_opts, materials_opts;

  auto* pressure = app.add_subcommand("pressure", "pressure at a single separation and temperature");
  add_common(pressure, pressure_opts, true);

  auto* sweep = app.add_subcommand("sweep", "separation or temperature sweep from a sweep file");
  add_common(sweep, sweep_opts, true);

  auto* compare = app.add_subcommand("compare", "Drude/plasma x magnetic/nonmagnetic table at one point");
  add_common(compare, compare_opts, true);

  double rep_from = 0.5;
  double rep_to = 6.0;
  std::size_t rep_points = 24;
  auto* repulsion = app.add_subcommand("repulsion", "sign scan of a dielectric-metal pair");
  add_common(repulsion, repulsion_opts, true);
  repulsion->add_option("--from", rep_from, "smallest separation (um)")->check(CLI::PositiveNumber);
  repulsion->add_option("--to", rep_to, "largest separation (um)")->check(CLI::PositiveNumber);
  repulsion->add_option("--points", rep_points, "scan points")->check(CLI::Range(2, 10000));

  double cons_from = 6.0;
  std::size_t cons_points = 7;
  auto* consistency = app.add_subcommand("consistency", "engine against the closed form over [a, 4a]");
  add_common(consistency, consistency_opts, true);
  consistency->add_option("--from", cons_from, "smallest separation (um)")->check(CLI::PositiveNumber);
  consistency->add_option("--points", cons_points, "grid points")->check(CLI::Range(2, 1000));

  auto* materials = app.add_subcommand("materials", "built-in material catalogue");
  materials->require_subcommand(1);
  auto* list = materials->add_subcommand("list", "list catalogue entries");
  add_common(list, materials_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*pressure) return run_pressure(pressure_opts);
    if (*sweep) return run_sweep_command(sweep_opts);
    if (*compare) return run_compare(compare_opts);
    if (*repulsion) return run_repulsion(repulsion_opts, rep_from, rep_to, rep_points);
    if (*consistency) return run_consistency(consistency_opts, cons_from, cons_points);
    if (*list) return run_materials_list(materials_opts);
  } catch (const casimir::ConvergenceError& e) {
    std::cerr << "casimir: " << e.what() << '\n';
    return exit_flagged;
  } catch (const std::exception& e) {
    std::cerr << "casimir: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
