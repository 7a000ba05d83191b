#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "tnep/case_io.hpp"
#include "tnep/milp/solve.hpp"
#include "tnep/oracle.hpp"
#include "tnep/uncertainty.hpp"

using namespace tnep;

namespace {

const PlanningCase& garver() {
  static PlanningCase pc = load_case_file(std::string(TNEP_DATA_DIR) + "/garver.json");
  return pc;
}

}  // namespace

TEST_SUITE("uncertainty") {

TEST_CASE("vertex counts follow the budgeted binomial sums") {
  PlanningCase pc = garver();  // 5 demands, 3 conventional, 1 wind

  pc.uncertainty = {};  // all budgets zero
  CHECK(vertex_count(pc) == 1);

  pc.uncertainty.budget_demand = 1;
  CHECK(vertex_count(pc) == 6);  // C(5,0) + C(5,1)

  pc.uncertainty.budget_demand = 5;
  pc.uncertainty.budget_conventional = 3;
  pc.uncertainty.budget_wind = 1;
  CHECK(vertex_count(pc) == 512);  // 2^5 * 2^3 * 2^1
}

TEST_CASE("enumeration is lexicographic, duplicate-free, and budget-feasible") {
  PlanningCase pc = garver();
  pc.uncertainty.budget_demand = 2;
  pc.uncertainty.budget_conventional = 1;
  pc.uncertainty.budget_wind = 1;

  std::vector<DeviationVector> vs = enumerate_vertices(pc);
  CHECK(vs.size() == vertex_count(pc));
  CHECK(vs.front() == pc.nominal_deviation());

  std::set<DeviationVector> seen;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    CHECK(seen.insert(vs[i]).second);
    CHECK_NOTHROW(realize(pc, vs[i]));
    if (i > 0) CHECK(vs[i - 1] < vs[i]);
  }
}

TEST_CASE("budgets at group sizes include the all-flagged vector") {
  PlanningCase pc = three_bus_toy();
  pc.uncertainty.budget_demand = 1;
  pc.uncertainty.budget_conventional = 1;
  pc.uncertainty.budget_wind = 1;
  DeviationVector all;
  all.demand = {1};
  all.conventional = {1};
  all.wind = {1};
  std::vector<DeviationVector> vs = enumerate_vertices(pc);
  CHECK(std::find(vs.begin(), vs.end(), all) != vs.end());
}

TEST_CASE("enumeration refuses to blow past the cap") {
  PlanningCase pc = garver();
  pc.uncertainty.budget_demand = 5;
  pc.uncertainty.budget_conventional = 3;
  pc.uncertainty.budget_wind = 1;
  CHECK_THROWS_AS(enumerate_vertices(pc, 100), ConfigError);
}

TEST_CASE("realize applies single-sided deviations") {
  PlanningCase pc = garver();
  pc.uncertainty.budget_demand = 1;
  pc.uncertainty.budget_conventional = 1;
  pc.uncertainty.budget_wind = 1;

  DeviationVector u = pc.nominal_deviation();
  RealizedParameters nominal = realize(pc, u);
  CHECK(nominal.demand_level_mw[0] == doctest::Approx(100.0));
  CHECK(nominal.generator_capacity_mw[0] == doctest::Approx(150.0));

  u.demand[0] = 1;       // D1: 100 MW, +20%
  u.conventional[0] = 1; // G1: 150 MW, -50%
  u.wind[0] = 1;         // W3: 400 MW, -50%
  RealizedParameters r = realize(pc, u);
  CHECK(r.demand_level_mw[0] == doctest::Approx(120.0));
  CHECK(r.generator_capacity_mw[0] == doctest::Approx(75.0));
  // W3 is the only wind unit and sits last in case order.
  CHECK(r.generator_capacity_mw.back() == doctest::Approx(200.0));
  // Untouched entries keep nominal values.
  CHECK(r.demand_level_mw[1] == doctest::Approx(300.0));
}

TEST_CASE("realize rejects wrong shapes and busted budgets") {
  PlanningCase pc = garver();  // budgets all zero
  DeviationVector u = pc.nominal_deviation();
  u.demand[0] = 1;
  CHECK_THROWS_AS(realize(pc, u), ValidationError);  // over budget

  DeviationVector short_u;
  short_u.demand = {0, 0};
  CHECK_THROWS_AS(check_deviation_shape(pc, short_u), ValidationError);
}

TEST_CASE("budget rows cap the flag sums in a model") {
  PlanningCase pc = three_bus_toy();
  pc.uncertainty.budget_demand = 1;
  pc.uncertainty.budget_conventional = 0;
  pc.uncertainty.budget_wind = 1;

  milp::ModelBuilder mb;
  std::vector<milp::VarId> d{mb.add_binary("ud")};
  std::vector<milp::VarId> c{mb.add_binary("uc")};
  std::vector<milp::VarId> w{mb.add_binary("uw")};
  emit_budget_constraints(pc, mb, d, c, w);

  milp::LinExpr all;
  all.add(d[0], 1.0).add(c[0], 1.0).add(w[0], 1.0);
  mb.set_objective(milp::ObjSense::Maximize, all);
  milp::SolveResult r = milp::solve(mb);
  REQUIRE(r.status == milp::SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(2.0));   // demand + wind; conventional pinned
  CHECK(r.integral_value(c[0]) == 0);

  std::vector<milp::VarId> wrong;  // group size mismatch
  CHECK_THROWS_AS(emit_budget_constraints(pc, mb, d, wrong, w), ValidationError);
}

}  // TEST_SUITE
