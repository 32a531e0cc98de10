#include <cmath>
#include <limits>

#include "doctest.h"

#include "casimir/asymptotics.hpp"
#include "casimir/errors.hpp"
#include "casimir/units.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {

PlatePairConfig pair(const MaterialModel& a, const MaterialModel& b, double separation) {
  PlatePairConfig cfg;
  cfg.plate1 = a;
  cfg.plate2 = b;
  cfg.separation = separation;
  return cfg;
}

MaterialModel plasma(const char* name) { return with_metal_model(builtin_material(name), MetalModel::plasma); }

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("polylog3 special values") {
  CHECK(polylog3(0.0) == 0.0);
  CHECK(polylog3(1.0) == units::zeta3);
  CHECK(std::abs(polylog3(-1.0) - (-0.9015426773696957)) < 1e-14);
  CHECK(std::abs(polylog3(0.5) - 0.5372131936080402) < 1e-14);
  CHECK(std::abs(polylog3(-0.9) - (-0.8186382015443638)) < 1e-14);
  CHECK_THROWS_AS(polylog3(1.0000001), DomainError);
  CHECK_THROWS_AS(polylog3(-2.0), DomainError);
  CHECK_THROWS_AS(polylog3(std::nan("")), DomainError);
}

TEST_CASE("polylog3 against direct summation") {
  for (double z : {0.1, 0.5, 0.9, 0.99, -0.1, -0.5, -0.9, -0.99}) {
    CHECK(std::abs(polylog3(z) - oracle::polylog3_sum(z)) < 1e-12);
  }
}

TEST_CASE("polylog3 duplication") {
  for (double r = 0.05; r < 1.0; r += 0.05) {
    CHECK(std::abs(polylog3(r) + polylog3(-r) - 0.25 * polylog3(r * r)) < 1e-14);
  }
}

TEST_CASE("drude-similar limits") {
  const double a = 7.0, t = 300.0;
  CHECK(classical_pressure(DrudeSimilar{1.0}, a, t).reduced == -units::zeta3);
  const double inf = classical_pressure(DrudeSimilar{std::numeric_limits<double>::infinity()}, a, t).reduced;
  CHECK(inf == doctest::Approx(-2.0 * units::zeta3).epsilon(1e-15));
  const double big = classical_pressure(DrudeSimilar{1e8}, a, t).reduced;
  CHECK(std::abs(big / (-2.0 * units::zeta3) - 1.0) < 1e-6);
  const double co = classical_pressure(DrudeSimilar{70.0}, a, t).reduced;
  CHECK(co == doctest::Approx(-(units::zeta3 + oracle::polylog3_sum(69.0 * 69.0 / (71.0 * 71.0)))).epsilon(1e-12));
  const auto p = classical_pressure(DrudeSimilar{1.0}, a, t);
  CHECK(p.pressure == doctest::Approx(-units::boltzmann_si * t * units::zeta3 /
                                      (8.0 * units::pi * std::pow(a * 1e-6, 3))));
}

TEST_CASE("printed closed forms") {
  const double a = 10.0, t = 300.0, d = 0.02, z3 = units::zeta3;
  CHECK(classical_pressure(PlasmaSimilarFM{4.0, d}, a, t).reduced ==
        doctest::Approx(-2.0 * z3 * (1.0 - 3.0 * 2.0 * d / a)));
  CHECK(classical_pressure(DrudeDissimilarMetal{}, a, t).reduced == -z3);
  CHECK(classical_pressure(PlasmaDissimilarMetal{9.0, d, 0.03}, a, t).reduced ==
        doctest::Approx(-2.0 * z3 * (1.0 - 3.0 * (3.0 * d + 0.03) / (2.0 * a))));
  CHECK(classical_pressure(DrudeDielectricMetal{5.12}, a, t).reduced ==
        doctest::Approx(-oracle::polylog3_sum(4.12 / 6.12)));
  const double r_mu = 24.0 / 26.0;
  CHECK(classical_pressure(PlasmaDielectricMetal{5.12, 25.0, d}, a, t).reduced ==
        doctest::Approx(-(oracle::polylog3_sum(4.12 / 6.12) + oracle::polylog3_sum(-r_mu) * (1.0 - 3.0 * d / a))));
}

TEST_CASE("dissimilar plasma form reduces to the similar form") {
  for (double d : {0.01, 0.022, 0.05}) {
    for (double a : {3.0, 6.0, 12.0}) {
      CHECK(classical_pressure(PlasmaDissimilarMetal{1.0, d, d}, a, 300.0).reduced ==
            doctest::Approx(classical_pressure(PlasmaSimilarFM{1.0, d}, a, 300.0).reduced).epsilon(1e-15));
    }
  }
}

TEST_CASE("smallness warnings") {
  CHECK(classical_pressure(PlasmaSimilarFM{70.0, 0.0497}, 6.0, 300.0).warnings.empty());
  CHECK_FALSE(classical_pressure(PlasmaSimilarFM{70.0, 0.0497}, 1.0, 300.0).warnings.empty());
  CHECK_FALSE(classical_pressure(PlasmaDielectricMetal{5.12, 25.0, 0.0219}, 0.05, 300.0).warnings.empty());
}

TEST_CASE("invalid scenario parameters") {
  CHECK_THROWS_AS(classical_pressure(DrudeSimilar{0.5}, 1.0, 300.0), ValidationError);
  CHECK_THROWS_AS(classical_pressure(PlasmaSimilarFM{2.0, 0.0}, 1.0, 300.0), ValidationError);
  CHECK_THROWS_AS(classical_pressure(DrudeDielectricMetal{0.9}, 1.0, 300.0), ValidationError);
  CHECK_THROWS_AS(classical_pressure(DrudeSimilar{1.0}, -1.0, 300.0), ValidationError);
}

TEST_CASE("repulsion predicate") {
  CHECK(repulsion_predicate({5.12, 25.0, 1e-12}, 6.0));
  CHECK(oracle::polylog3_sum(4.12 / 6.12) < std::abs(oracle::polylog3_sum(-24.0 / 26.0)));
  for (double eps : {1.5, 5.12, 100.0}) CHECK_FALSE(repulsion_predicate({eps, 1.0, 0.02}, 6.0));
  CHECK_FALSE(repulsion_predicate({1e12, 1e6, 0.0}, 6.0));
}

TEST_CASE("classification") {
  const auto co = builtin_material("Co");
  const auto au = builtin_material("Au");
  const auto comp = builtin_material("polystyrene-composite");

  auto s = classify(pair(co, co, 6.0));
  REQUIRE(std::holds_alternative<DrudeSimilar>(s));
  CHECK(std::get<DrudeSimilar>(s).mu0 == 70.0);

  s = classify(pair(plasma("Co"), plasma("Co"), 6.0));
  REQUIRE(std::holds_alternative<PlasmaSimilarFM>(s));
  CHECK(std::get<PlasmaSimilarFM>(s).skin_depth == doctest::Approx(units::hbar_c / 3.97));

  CHECK(std::holds_alternative<DrudeDissimilarMetal>(classify(pair(co, au, 6.0))));

  s = classify(pair(plasma("Au"), plasma("Co"), 6.0));
  REQUIRE(std::holds_alternative<PlasmaDissimilarMetal>(s));
  CHECK(std::get<PlasmaDissimilarMetal>(s).mu0 == 70.0);
  CHECK(std::get<PlasmaDissimilarMetal>(s).skin_depth_magnetic == doctest::Approx(units::hbar_c / 3.97));

  CHECK(std::holds_alternative<DrudeDielectricMetal>(classify(pair(comp, au, 6.0))));
  s = classify(pair(plasma("Au"), comp, 6.0));
  REQUIRE(std::holds_alternative<PlasmaDielectricMetal>(s));
  CHECK(std::get<PlasmaDielectricMetal>(s).dielectric_permittivity == doctest::Approx(5.12));
  CHECK(std::get<PlasmaDielectricMetal>(s).mu0 == 25.0);

  CHECK_THROWS_AS(classify(pair(co, plasma("Au"), 6.0)), ClassificationError);
  CHECK_THROWS_AS(classify(pair(comp, comp, 6.0)), ClassificationError);
  CHECK_THROWS_AS(classify(pair(comp, co, 6.0)), ClassificationError);
  auto gd = builtin_material("Gd");
  gd.permeability = PermeabilityModel(20.0);
  CHECK_THROWS_AS(classify(pair(co, gd, 6.0)), ClassificationError);
}

TEST_CASE("consistency report") {
  const auto au = builtin_material("Au");
  const auto report = consistency_report(pair(au, au, 6.0), 6.0);
  CHECK(report.scenario == "drude-similar");
  CHECK(report.rows.size() == 7);
  CHECK(report.rows.front().separation == doctest::Approx(6.0));
  CHECK(report.rows.back().separation == doctest::Approx(24.0));
  CHECK(report.max_deviation < 0.01);

  const auto co = builtin_material("Co");
  CHECK(consistency_report(pair(co, co, 6.0), 6.0).max_deviation < 0.01);

  const auto near = consistency_report(pair(au, au, 0.5), 0.5, {}, 3);
  CHECK(near.max_deviation > 0.1);

  const auto comp = builtin_material("polystyrene-composite");
  CHECK_THROWS_AS(consistency_report(pair(comp, comp, 6.0), 6.0), ClassificationError);
}

}
