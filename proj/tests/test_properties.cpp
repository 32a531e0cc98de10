#include "doctest.h"

#include "properties.hpp"

namespace {

void require(const properties::Outcome& o) {
  INFO(o.name, ": ", o.failures, " of ", o.cases, " cases failed; first: ", o.first_failure);
  CHECK(o.cases >= 1000);
  CHECK(o.passed());
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("reflection bounds") { require(properties::reflection_bounds()); }
TEST_CASE("reflection symmetry") { require(properties::reflection_symmetry()); }
TEST_CASE("permittivity monotone") { require(properties::permittivity_monotone()); }
TEST_CASE("permeability policy") { require(properties::permeability_policy()); }
TEST_CASE("repulsion predicate sign") { require(properties::repulsion_predicate_sign()); }
TEST_CASE("attraction") { require(properties::attraction()); }
TEST_CASE("monotone decay") { require(properties::monotone_decay()); }
TEST_CASE("determinism") { require(properties::determinism()); }
TEST_CASE("convergence stability") { require(properties::convergence_stability()); }
TEST_CASE("magnetic locality") { require(properties::magnetic_locality()); }

}
