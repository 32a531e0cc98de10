#include "casimir/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "casimir/asymptotics.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using config::json;

namespace {

int worker_count(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::pressure: return "P";
    case Quantity::relative: return "P/P0";
    case Quantity::terms: return "terms";
  }
  return "P";
}

Quantity quantity_from_string(const std::string& s) {
  if (s == "P") return Quantity::pressure;
  if (s == "P/P0") return Quantity::relative;
  if (s == "terms") return Quantity::terms;
  throw ValidationError("quantity must be P, P/P0 or terms, got '" + s + "'");
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

std::string ModelVariant::name() const {
  const std::string model = metal ? std::string(to_string(*metal)) : "configured";
  return model + (magnetic ? "-magnetic" : "-nonmagnetic");
}

ModelVariant ModelVariant::parse(const std::string& name) {
  if (name == "as-configured") return {};
  const auto dash = name.find('-');
  if (dash == std::string::npos) throw ValidationError("bad model variant '" + name + "'");
  const std::string model = name.substr(0, dash);
  const std::string magnetism = name.substr(dash + 1);
  ModelVariant v;
  if (model != "configured") v.metal = config::metal_model_from_string(model);
  if (magnetism == "magnetic") {
    v.magnetic = true;
  } else if (magnetism == "nonmagnetic") {
    v.magnetic = false;
  } else {
    throw ValidationError("bad model variant '" + name + "'");
  }
  return v;
}

std::array<ModelVariant, 4> standard_variants() {
  return {ModelVariant{MetalModel::drude, true}, ModelVariant{MetalModel::drude, false},
          ModelVariant{MetalModel::plasma, true}, ModelVariant{MetalModel::plasma, false}};
}

PlatePairConfig apply_variant(PlatePairConfig cfg, const ModelVariant& variant) {
  for (std::size_t n = 0; n < 2; ++n) {
    MaterialModel& plate = n == 0 ? cfg.plate1 : cfg.plate2;
    if (variant.metal && plate.is_metal()) cfg.metal_model[n] = variant.metal;
    if (!variant.magnetic) plate = without_magnetism(std::move(plate));
  }
  return cfg;
}

void SweepSpec::validate() const {
  if (!(start < stop)) throw ValidationError("sweep start must be below stop");
  if (points < 2) throw ValidationError("sweep needs at least two points");
  if (!(start > 0.0)) throw ValidationError("sweep range must be positive");
  if (variants.empty()) throw ValidationError("sweep needs at least one variant");
  policy.validate();
}

std::vector<double> SweepSpec::grid_points() const {
  validate();
  std::vector<double> xs(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / last;
    xs[i] = grid == GridKind::linear ? start + t * (stop - start) : start * std::pow(stop / start, t);
  }
  xs.back() = stop;
  return xs;
}

SweepSpec sweep_spec_from_json(const json& j, const std::filesystem::path& base_dir) {
  SweepSpec spec;
  const std::string mode = j.value("mode", std::string("separation"));
  if (mode == "separation") {
    spec.mode = SweepMode::separation;
  } else if (mode == "temperature") {
    spec.mode = SweepMode::temperature;
  } else {
    throw ValidationError("mode must be 'separation' or 'temperature'");
  }
  spec.start = j.at("start").get<double>();
  spec.stop = j.at("stop").get<double>();
  spec.points = j.at("points").get<std::size_t>();
  const std::string grid = j.value("grid", std::string("linear"));
  if (grid == "linear") {
    spec.grid = GridKind::linear;
  } else if (grid == "log" || grid == "logarithmic") {
    spec.grid = GridKind::logarithmic;
  } else {
    throw ValidationError("grid must be 'linear' or 'log'");
  }
  const json& cfg = j.at("config");
  spec.config = config::plate_pair_from_json(cfg, base_dir);
  if (j.contains("numerics")) {
    spec.policy = config::policy_from_json(j.at("numerics"));
  } else if (cfg.contains("numerics")) {
    spec.policy = config::policy_from_json(cfg.at("numerics"));
  }
  if (j.contains("variants")) {
    spec.variants.clear();
    for (const auto& v : j.at("variants")) spec.variants.push_back(ModelVariant::parse(v.get<std::string>()));
  }
  spec.quantity = quantity_from_string(j.value("quantity", std::string("P/P0")));
  const std::string format = j.value("format", std::string("csv"));
  if (format == "csv") {
    spec.format = OutputFormat::csv;
  } else if (format == "json") {
    spec.format = OutputFormat::json;
  } else {
    throw ValidationError("format must be 'csv' or 'json'");
  }
  spec.validate();
  return spec;
}

json to_json(const SweepSpec& spec) {
  json variants = json::array();
  for (const auto& v : spec.variants) variants.push_back(v.name());
  return {{"mode", spec.mode == SweepMode::separation ? "separation" : "temperature"},
          {"start", spec.start},
          {"stop", spec.stop},
          {"points", spec.points},
          {"grid", spec.grid == GridKind::linear ? "linear" : "log"},
          {"config", config::to_json(spec.config)},
          {"numerics", config::to_json(spec.policy)},
          {"variants", variants},
          {"quantity", quantity_name(spec.quantity)},
          {"format", spec.format == OutputFormat::csv ? "csv" : "json"}};
}

double SweepResult::value(std::size_t i, std::size_t v) const {
  const PressureResult& r = cells[i][v].result;
  return spec.quantity == Quantity::pressure ? r.pressure : r.relative;
}

SweepResult run_sweep(const SweepSpec& spec, Execution exec) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult out;
  out.spec = spec;
  out.xs = spec.grid_points();
  const std::size_t nv = spec.variants.size();
  out.cells.assign(out.xs.size(), std::vector<SweepCell>(nv));

  std::vector<PlatePairConfig> variant_configs;
  for (const auto& v : spec.variants) variant_configs.push_back(apply_variant(spec.config, v));

  const auto tasks = static_cast<std::ptrdiff_t>(out.xs.size() * nv);
  auto evaluate = [&](std::ptrdiff_t task) {
    const auto i = static_cast<std::size_t>(task) / nv;
    const auto v = static_cast<std::size_t>(task) % nv;
    PlatePairConfig cfg = variant_configs[v];
    (spec.mode == SweepMode::separation ? cfg.separation : cfg.temperature) = out.xs[i];
    SweepCell& cell = out.cells[i][v];
    try {
      cell.result = pressure(cfg, spec.policy, Execution::serial,
                             spec.quantity == Quantity::terms ? &cell.terms : nullptr);
      cell.converged = true;
    } catch (const ConvergenceError& e) {
      cell.result = e.partial();
      cell.converged = false;
      cell.error = e.what();
    }
  };

  if (exec == Execution::parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count(spec.policy.workers))
    for (std::ptrdiff_t task = 0; task < tasks; ++task) {
      try {
        evaluate(task);
      } catch (...) {
#pragma omp critical(casimir_sweep_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::ptrdiff_t task = 0; task < tasks; ++task) evaluate(task);
  }

  RunManifest& m = out.manifest;
  m.config = to_json(spec);
  m.numerics = config::to_json(spec.policy);
  m.hash = config::hex_hash(config::manifest_hash(m.config));
  m.evaluations = static_cast<std::size_t>(tasks);
  for (const auto& row : out.cells) {
    for (const auto& cell : row) m.flagged += cell.converged ? 0 : 1;
  }
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  const RunManifest& m = result.manifest;
  out << "# casimir " << m.version << " sweep\n";
  out << "# manifest_hash: " << m.hash << "\n";
  out << "# mode: " << (spec.mode == SweepMode::separation ? "separation (um)" : "temperature (K)")
      << ", quantity: " << quantity_name(spec.quantity) << ", points: " << spec.points << "\n";
  out << "# numerics: " << m.numerics.dump() << "\n";
  out << "# config: " << m.config.at("config").dump() << "\n";
  out << "# evaluations: " << m.evaluations << ", flagged: " << m.flagged
      << ", wall_time_s: " << format_number(m.wall_seconds) << "\n";

  auto status = [&](std::size_t i) {
    std::string flagged;
    for (std::size_t v = 0; v < spec.variants.size(); ++v) {
      if (!result.cells[i][v].converged) flagged += (flagged.empty() ? "" : ";") + spec.variants[v].name();
    }
    return flagged.empty() ? std::string("ok") : "flagged:" + flagged;
  };

  if (spec.quantity == Quantity::terms) {
    out << "x,variant,l,tm,te,status\n";
    for (std::size_t i = 0; i < result.xs.size(); ++i) {
      for (std::size_t v = 0; v < spec.variants.size(); ++v) {
        const SweepCell& cell = result.cells[i][v];
        for (const auto& t : cell.terms) {
          out << format_number(result.xs[i]) << ',' << spec.variants[v].name() << ',' << t.l << ','
              << format_number(t.tm) << ',' << format_number(t.te) << ','
              << (cell.converged ? "ok" : "flagged") << '\n';
        }
      }
    }
    return;
  }

  out << "x";
  for (const auto& v : spec.variants) out << ',' << v.name();
  out << ",status\n";
  for (std::size_t i = 0; i < result.xs.size(); ++i) {
    out << format_number(result.xs[i]);
    for (std::size_t v = 0; v < spec.variants.size(); ++v) out << ',' << format_number(result.value(i, v));
    out << ',' << status(i) << '\n';
  }
}

json to_json(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  const RunManifest& m = result.manifest;
  json variants = json::array();
  for (const auto& v : spec.variants) variants.push_back(v.name());

  json rows = json::array();
  for (std::size_t i = 0; i < result.xs.size(); ++i) {
    json row = {{"x", result.xs[i]}};
    json values = json::array();
    json converged = json::array();
    json terms = json::array();
    for (std::size_t v = 0; v < spec.variants.size(); ++v) {
      const SweepCell& cell = result.cells[i][v];
      converged.push_back(cell.converged);
      if (spec.quantity == Quantity::terms) {
        json t = json::array();
        for (const auto& c : cell.terms) t.push_back({c.l, c.tm, c.te});
        terms.push_back(t);
      } else {
        values.push_back(result.value(i, v));
      }
    }
    if (spec.quantity == Quantity::terms) {
      row["terms"] = terms;
    } else {
      row["values"] = values;
    }
    row["converged"] = converged;
    rows.push_back(row);
  }

  return {{"manifest",
           {{"version", m.version},
            {"hash", m.hash},
            {"spec", m.config},
            {"numerics", m.numerics},
            {"wall_time_s", m.wall_seconds},
            {"evaluations", m.evaluations},
            {"flagged", m.flagged}}},
          {"quantity", quantity_name(spec.quantity)},
          {"x_unit", spec.mode == SweepMode::separation ? "um" : "K"},
          {"variants", variants},
          {"rows", rows}};
}

const PairwiseDifference& ModelComparison::closest() const {
  return *std::min_element(differences.begin(), differences.end(),
                           [](const auto& a, const auto& b) { return a.absolute < b.absolute; });
}

ModelComparison compare_models(const PlatePairConfig& cfg, double separation, double temperature,
                               const NumericsPolicy& policy) {
  ModelComparison cmp;
  cmp.config = cfg;
  cmp.config.separation = separation;
  cmp.config.temperature = temperature;
  const auto variants = standard_variants();
  for (std::size_t i = 0; i < variants.size(); ++i) {
    cmp.entries[i].variant = variants[i];
    cmp.entries[i].result = pressure(apply_variant(cmp.config, variants[i]), policy);
  }
  for (std::size_t i = 0; i < variants.size(); ++i) {
    for (std::size_t j = i + 1; j < variants.size(); ++j) {
      const double pi = cmp.entries[i].result.pressure;
      const double pj = cmp.entries[j].result.pressure;
      const double scale = std::max(std::abs(pi), std::abs(pj));
      cmp.differences.push_back({i, j, std::abs(pi - pj), scale > 0.0 ? std::abs(pi - pj) / scale : 0.0});
    }
  }
  return cmp;
}

json to_json(const ModelComparison& cmp) {
  json entries = json::array();
  for (const auto& e : cmp.entries) {
    entries.push_back({{"variant", e.variant.name()},
                       {"pressure_Pa", e.result.pressure},
                       {"relative", e.result.relative},
                       {"reduced", e.result.reduced},
                       {"terms_used", e.result.terms_used}});
  }
  json diffs = json::array();
  for (const auto& d : cmp.differences) {
    diffs.push_back({{"first", cmp.entries[d.first].variant.name()},
                     {"second", cmp.entries[d.second].variant.name()},
                     {"absolute_Pa", d.absolute},
                     {"relative", d.relative}});
  }
  const auto& c = cmp.closest();
  return {{"separation_um", cmp.config.separation},
          {"temperature_K", cmp.config.temperature},
          {"entries", entries},
          {"differences", diffs},
          {"closest_pair", {cmp.entries[c.first].variant.name(), cmp.entries[c.second].variant.name()}}};
}

RepulsionReport check_repulsion(const PlatePairConfig& cfg, double a_min, double a_max, std::size_t points,
                                const NumericsPolicy& policy) {
  cfg.validate();
  if (!(a_min > 0.0 && a_min < a_max)) throw ValidationError("repulsion scan needs 0 < a_min < a_max");
  if (points < 2) throw ValidationError("repulsion scan needs at least two points");
  const MaterialModel p1 = cfg.effective_plate(1);
  const MaterialModel p2 = cfg.effective_plate(2);
  if (p1.is_metal() == p2.is_metal()) {
    throw ClassificationError("repulsion scan needs one dielectric and one metal plate");
  }

  RepulsionReport report;
  const MaterialModel& metal = p1.is_metal() ? p1 : p2;
  report.dielectric = (p1.is_metal() ? p2 : p1).label;
  report.metal = metal.label;
  report.metal_model = std::holds_alternative<DrudeParams>(metal.permittivity) ? MetalModel::drude
                                                                               : MetalModel::plasma;
  PlatePairConfig at_max = cfg;
  at_max.separation = a_max;
  const ClassicalLimitScenario scenario = classify(at_max);
  report.predicate_separation = a_max;
  if (const auto* s = std::get_if<PlasmaDielectricMetal>(&scenario)) {
    report.predicate = repulsion_predicate(*s, a_max);
  }

  auto evaluate = [&](double a) {
    PlatePairConfig point = cfg;
    point.separation = a;
    return pressure(point, policy).pressure;
  };

  report.scan.resize(points);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count(policy.workers))
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points); ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const double a = i + 1 == static_cast<std::ptrdiff_t>(points) ? a_max : a_min * std::pow(a_max / a_min, t);
    try {
      report.scan[i] = {a, evaluate(a)};
    } catch (...) {
#pragma omp critical(casimir_repulsion_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < points; ++i) {
    report.repulsive_anywhere = report.repulsive_anywhere || report.scan[i].pressure > 0.0;
    if (i == 0 || sign(report.scan[i - 1].pressure) == sign(report.scan[i].pressure)) continue;
    double lo = report.scan[i - 1].separation;
    double hi = report.scan[i].separation;
    const double lo_sign = sign(report.scan[i - 1].pressure);
    while (hi - lo > crossing_tolerance) {
      const double mid = 0.5 * (lo + hi);
      (sign(evaluate(mid)) == lo_sign ? lo : hi) = mid;
    }
    report.crossings.push_back(0.5 * (lo + hi));
  }
  return report;
}

json to_json(const RepulsionReport& report) {
  json scan = json::array();
  for (const auto& s : report.scan) scan.push_back({{"separation_um", s.separation}, {"pressure_Pa", s.pressure}});
  return {{"dielectric", report.dielectric},
          {"metal", report.metal},
          {"metal_model", std::string(to_string(report.metal_model))},
          {"predicate", report.predicate},
          {"predicate_separation_um", report.predicate_separation},
          {"repulsive_anywhere", report.repulsive_anywhere},
          {"crossings_um", report.crossings},
          {"scan", scan}};
}

}  // namespace casimir
