#include <string>

#include "doctest.h"
#include "tnep/case_io.hpp"
#include "tnep/oracle.hpp"
#include "tnep/types.hpp"

using namespace tnep;

#ifndef TNEP_DATA_DIR
#error "TNEP_DATA_DIR must point at the bundled case files"
#endif

namespace {

const PlanningCase& garver() {
  static PlanningCase pc = load_case_file(std::string(TNEP_DATA_DIR) + "/garver.json");
  return pc;
}

const Corridor& corridor(const PlanningCase& pc, const std::string& key) {
  for (const Corridor& c : pc.corridors)
    if (c.key() == key) return c;
  throw std::runtime_error("no corridor " + key);
}

}  // namespace

TEST_SUITE("system") {

TEST_CASE("annualize is the flat amortization charge") {
  EconomicParams econ;
  econ.amortization_rate = 0.11;
  CHECK(annualize(10000.0, econ) == doctest::Approx(1100.0).epsilon(1e-12));
  CHECK(annualize(3861.60, econ) == doctest::Approx(424.776).epsilon(1e-12));
  CHECK(annualize(0.0, econ) == 0.0);
}

TEST_CASE("bundled six-bus case loads with the documented shape") {
  const PlanningCase& pc = garver();
  CHECK(pc.buses.size() == 6);
  CHECK(pc.corridors.size() == 15);
  CHECK(pc.generators.size() == 4);
  CHECK(pc.storage_units.size() == 2);
  CHECK(pc.demands.size() == 5);
  CHECK(pc.representative_days.size() == 10);
  CHECK(pc.weight_sum_days() == doctest::Approx(365.0).epsilon(1e-9));

  const Corridor& c15 = corridor(pc, "1-5");
  CHECK(c15.reactance_pu == doctest::Approx(0.20));
  CHECK(c15.capacity_mw == doctest::Approx(100.0));
  CHECK(c15.circuit_capital_cost == doctest::Approx(3861.60));
  CHECK(pc.reference_bus() == 1);
}

TEST_CASE("plan capital cost reproduces the two reference plans") {
  const PlanningCase& pc = garver();

  ExpansionPlan nominal;
  nominal.lines_built = {{"2-3", 2}, {"3-5", 2}, {"4-6", 2}};
  nominal.storage_built = {{"S6", 2}};
  PlanCost a = plan_capital_cost(nominal, pc);
  CHECK(std::abs(a.capital - 47031.2) <= 0.1);
  CHECK(a.within_budget);

  ExpansionPlan stressed;
  stressed.lines_built = {{"2-3", 1}, {"2-6", 3}, {"3-5", 2}};
  stressed.storage_built = {{"S6", 3}};
  PlanCost b = plan_capital_cost(stressed, pc);
  CHECK(std::abs(b.capital - 58962.0) <= 0.1);
  CHECK(b.within_budget);

  CHECK(plan_capital_cost(ExpansionPlan{}, pc).capital == 0.0);
}

TEST_CASE("plan capital cost is additive over disjoint plans") {
  const PlanningCase& pc = garver();
  ExpansionPlan a, b, both;
  a.lines_built = {{"1-2", 1}, {"4-5", 2}};
  b.lines_built = {{"2-6", 1}};
  b.storage_built = {{"S6", 1}};
  both.lines_built = {{"1-2", 1}, {"4-5", 2}, {"2-6", 1}};
  both.storage_built = {{"S6", 1}};
  CHECK(plan_capital_cost(a, pc).capital + plan_capital_cost(b, pc).capital ==
        doctest::Approx(plan_capital_cost(both, pc).capital).epsilon(1e-12));
}

TEST_CASE("plan capital cost rejects unknown ids and over-building") {
  const PlanningCase& pc = garver();
  ExpansionPlan bad_corridor;
  bad_corridor.lines_built = {{"1-9", 1}};
  CHECK_THROWS_AS(plan_capital_cost(bad_corridor, pc), ValidationError);

  ExpansionPlan bad_storage;
  bad_storage.storage_built = {{"nope", 1}};
  CHECK_THROWS_AS(plan_capital_cost(bad_storage, pc), ValidationError);

  ExpansionPlan too_many;  // corridor 1-2 has 1 existing circuit, max_total 3
  too_many.lines_built = {{"1-2", 3}};
  CHECK_THROWS_AS(plan_capital_cost(too_many, pc), ValidationError);

  ExpansionPlan over_budget;  // affordable counts, unaffordable total
  over_budget.lines_built = {{"1-6", 3}, {"1-4", 2}, {"4-5", 3}, {"3-4", 3},
                             {"5-6", 3}, {"1-3", 3}, {"3-6", 3}};
  CHECK_FALSE(plan_capital_cost(over_budget, pc).within_budget);
}

TEST_CASE("serialize/parse round-trips the loaded case") {
  const PlanningCase& pc = garver();
  PlanningCase again = load_case(serialize_case(pc));
  CHECK(again == pc);

  PlanningCase toy = three_bus_toy();
  CHECK(load_case(serialize_case(toy)) == toy);
}

TEST_CASE("validation rejects dangling bus references") {
  PlanningCase pc = two_bus_toy();
  pc.demands[0].bus = 7;
  CHECK_THROWS_AS(validate(pc), ValidationError);
}

TEST_CASE("validation pins down the reference bus") {
  PlanningCase pc = two_bus_toy();
  pc.buses[1].is_reference = true;  // now two of them
  CHECK_THROWS_AS(validate(pc), ValidationError);
  pc.buses[0].is_reference = false;
  pc.buses[1].is_reference = false;
  CHECK_THROWS_AS(validate(pc), ValidationError);
}

TEST_CASE("a case without expansion candidates is still valid") {
  PlanningCase pc = two_bus_toy();
  pc.corridors[0].existing_circuits = 1;
  pc.corridors[0].max_total_circuits = 1;  // nothing left to build
  pc.storage_units.clear();
  CHECK_NOTHROW(validate(pc));
  CHECK(pc.candidate_storage_indices().empty());
}

TEST_CASE("weights must sum to a year") {
  PlanningCase pc = two_bus_toy();
  pc.representative_days[0].weight_days = 300.0;
  CHECK_THROWS_AS(validate(pc), ValidationError);
}

TEST_CASE("parse errors carry the offending key") {
  CHECK_THROWS_AS(load_case("not json at all"), ParseError);
  CHECK_THROWS_AS(load_case("{}"), ParseError);
  CHECK_THROWS_WITH_AS(load_case(R"({"buses": 3})"), doctest::Contains("buses"), ParseError);
}

TEST_CASE("deviation vector helpers") {
  const PlanningCase& pc = garver();
  DeviationVector u = pc.nominal_deviation();
  CHECK(u.demand.size() == 5);
  CHECK(u.conventional.size() == 3);
  CHECK(u.wind.size() == 1);
  CHECK(u.total_flags() == 0);
  u.demand[1] = 1;
  u.wind[0] = 1;
  CHECK(u.total_flags() == 2);
  CHECK(u.to_string().find('1') != std::string::npos);
}

}  // TEST_SUITE
