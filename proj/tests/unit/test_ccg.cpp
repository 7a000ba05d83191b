#include <cmath>
#include <vector>

#include "doctest.h"
#include "tnep/ccg.hpp"
#include "tnep/oracle.hpp"
#include "tnep/uncertainty.hpp"

using namespace tnep;

namespace {

void check_bound_monotonicity(const IterationLog& log, double outer_tol, double inner_tol) {
  double prev_lower = -milp::kInfinity;
  double prev_upper = milp::kInfinity;
  for (const OuterIterationRecord& rec : log.outer) {
    CHECK(rec.lower >= prev_lower - 1e-9);
    CHECK(rec.upper <= prev_upper + 1e-9);
    prev_lower = rec.lower;
    prev_upper = rec.upper;
    double inner_lower = -milp::kInfinity;
    double inner_upper = milp::kInfinity;
    for (const InnerIterationRecord& ir : rec.inner) {
      CHECK(ir.lower >= inner_lower - 1e-9);
      CHECK(ir.upper <= inner_upper + 1e-9);
      inner_lower = ir.lower;
      inner_upper = ir.upper;
    }
    if (!rec.inner.empty())
      CHECK(rec.inner.back().upper - rec.inner.back().lower <= inner_tol + 1e-9);
  }
  REQUIRE(!log.outer.empty());
  CHECK(log.outer.back().upper - log.outer.back().lower <= outer_tol + 1e-9);
}

}  // namespace

TEST_SUITE("ccg") {

TEST_CASE("two-bus toy matches the extensive form and the frozen value") {
  PlanningCase pc = two_bus_toy();
  RobustSolution nested = solve_robust_tnep(pc);
  RobustSolution exact = extensive_form(pc);
  CHECK(std::abs(nested.total_annual_cost - exact.total_annual_cost) <= 1e-6);
  CHECK(nested.total_annual_cost == doctest::Approx(85010.0).epsilon(1e-9));
  CHECK(nested.plan.circuits("1-2") == 1);
  CHECK(nested.total_annual_cost ==
        doctest::Approx(annualize(nested.capital_cost, pc.economics) +
                        nested.worst_case_operating_cost)
            .epsilon(1e-12));
  check_bound_monotonicity(nested.log, pc.economics.outer_tolerance,
                           pc.economics.inner_tolerance);
}

TEST_CASE("three-bus toy matches the extensive form and the frozen value") {
  PlanningCase pc = three_bus_toy();
  RobustSolution nested = solve_robust_tnep(pc);
  RobustSolution exact = extensive_form(pc);
  CHECK(std::abs(nested.total_annual_cost - exact.total_annual_cost) <= 1e-6);
  CHECK(nested.total_annual_cost == doctest::Approx(84352.002222222).epsilon(1e-9));
  check_bound_monotonicity(nested.log, pc.economics.outer_tolerance,
                           pc.economics.inner_tolerance);
}

TEST_CASE("zero budgets converge in one outer iteration") {
  PlanningCase pc = three_bus_toy();
  pc.uncertainty.budget_demand = 0;
  pc.uncertainty.budget_conventional = 0;
  pc.uncertainty.budget_wind = 0;
  RobustSolution nested = solve_robust_tnep(pc);
  CHECK(nested.log.outer.size() == 1);
  CHECK(nested.worst_case_u == pc.nominal_deviation());
  RobustSolution exact = extensive_form(pc);
  CHECK(std::abs(nested.total_annual_cost - exact.total_annual_cost) <= 1e-6);
}

TEST_CASE("every master scenario respects the uncertainty budgets") {
  PlanningCase pc = three_bus_toy();
  RobustSolution nested = solve_robust_tnep(pc);
  for (const OuterIterationRecord& rec : nested.log.outer) {
    CHECK_NOTHROW(realize(pc, rec.next_scenario));
    for (const InnerIterationRecord& ir : rec.inner) CHECK_NOTHROW(realize(pc, ir.scenario));
  }
}

TEST_CASE("inner loop agrees with brute force on fixed plans") {
  for (PlanningCase pc : {two_bus_toy(), three_bus_toy()}) {
    OperationalModelTemplate tmpl(pc);
    std::vector<ExpansionPlan> plans(2);
    if (pc.buses.size() == 2) {
      plans[0].lines_built = {{"1-2", 1}};
      plans[1].storage_built = {{"S1", 1}};
    } else {
      plans[0].lines_built = {{"2-3", 1}};
      plans[1].lines_built = {{"1-3", 1}};
      plans[1].storage_built = {{"S2", 1}};
    }
    for (const ExpansionPlan& plan : plans) {
      InnerLoopResult inner = inner_loop(tmpl, plan, pc.economics.inner_tolerance,
                                         default_dual_bound(pc));
      WorstCase brute = brute_force_worst_case(pc, plan);
      CHECK(std::abs(inner.upper - brute.cost) <= 1e-6);
      CHECK(std::abs(brute.cost -
                     solve_operational(tmpl, plan, inner.next_scenario, tight_solver_defaults())
                         .cost) <= 1e-6);
    }
  }
}

TEST_CASE("the returned plan is worst-case certified against brute force") {
  PlanningCase pc = two_bus_toy();
  RobustSolution nested = solve_robust_tnep(pc);
  WorstCase brute = brute_force_worst_case(pc, nested.plan);
  CHECK(brute.cost <= nested.worst_case_operating_cost + 1e-6);
  CHECK(brute.cost >= nested.worst_case_operating_cost - 1e-6);
}

TEST_CASE("worst case grows with the uncertainty budgets") {
  PlanningCase pc = three_bus_toy();
  std::vector<ExpansionPlan> plans(4);
  plans[1].lines_built = {{"2-3", 1}};
  plans[2].storage_built = {{"S2", 2}};
  plans[3].lines_built = {{"2-3", 1}, {"1-3", 1}};
  plans[3].storage_built = {{"S2", 1}};

  for (const ExpansionPlan& plan : plans) {
    double prev = -milp::kInfinity;
    for (int level = 0; level <= 3; ++level) {
      // A chain of component-wise growing budgets.
      pc.uncertainty.budget_demand = level >= 1 ? 1 : 0;
      pc.uncertainty.budget_conventional = level >= 2 ? 1 : 0;
      pc.uncertainty.budget_wind = level >= 3 ? 1 : 0;
      WorstCase wc = brute_force_worst_case(pc, plan);
      CHECK(wc.cost >= prev - 1e-9);
      prev = wc.cost;
    }
  }
}

TEST_CASE("relaxing the mode binaries can only cheapen the recourse") {
  PlanningCase pc = relax_demo();
  OperationalModelTemplate binary(pc);
  FormulationOptions opts;
  opts.relax_mode_binaries = true;
  OperationalModelTemplate relaxed(pc, opts);

  OperationalSolve strict = solve_operational(binary, ExpansionPlan{}, pc.nominal_deviation(),
                                              tight_solver_defaults());
  OperationalSolve loose = solve_operational(relaxed, ExpansionPlan{}, pc.nominal_deviation(),
                                             tight_solver_defaults());
  CHECK(loose.cost < strict.cost - 1.0);  // strictly cheaper by a wide margin

  // The relaxed dispatch dissipates energy by charging and discharging at once.
  int simultaneous = 0;
  for (std::size_t i = 0; i < loose.vars.charge.size(); ++i) {
    const double pc_v = loose.raw.value(loose.vars.charge[i]);
    const double pd_v = loose.raw.value(loose.vars.discharge[i]);
    if (pc_v > 1e-6 && pd_v > 1e-6) ++simultaneous;
  }
  CHECK(simultaneous > 0);

  // The strict dispatch never does.
  for (std::size_t i = 0; i < strict.vars.charge.size(); ++i) {
    const double pc_v = strict.raw.value(strict.vars.charge[i]);
    const double pd_v = strict.raw.value(strict.vars.discharge[i]);
    CHECK_FALSE((pc_v > 1e-9 && pd_v > 1e-9));
  }
}

TEST_CASE("relaxed-mode robust solve runs the single-cut path") {
  PlanningCase pc = two_bus_toy();
  CcgConfig config;
  config.relax_mode_binaries = true;
  RobustSolution relaxed = solve_robust_tnep(pc, config);
  RobustSolution strict = solve_robust_tnep(pc);
  CHECK(relaxed.total_annual_cost <= strict.total_annual_cost + 1e-6);
  for (const OuterIterationRecord& rec : relaxed.log.outer)
    CHECK(rec.inner.size() <= 2);  // one exact dual cut closes the gap
}

TEST_CASE("limits and bad configuration fail loudly") {
  PlanningCase pc = two_bus_toy();

  CcgConfig no_time;
  no_time.time_limit_seconds = 1e-9;
  CHECK_THROWS_AS(solve_robust_tnep(pc, no_time), ConvergenceError);

  CcgConfig no_outer;
  no_outer.max_outer_iterations = 0;
  CHECK_THROWS_AS(solve_robust_tnep(pc, no_outer), ConvergenceError);

  CcgConfig bad_tol;
  bad_tol.outer_tolerance = -1.0;
  CHECK_THROWS_AS(solve_robust_tnep(pc, bad_tol), ConfigError);

  CcgConfig bad_bound;
  bad_bound.dual_bound = milp::kInfinity;
  CHECK_THROWS_AS(solve_robust_tnep(pc, bad_bound), ConfigError);

  try {
    solve_robust_tnep(pc, no_time);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.lower_bound <= e.upper_bound + 1e-9);
  }
}

TEST_CASE("oracle helpers shrink cases consistently") {
  PlanningCase pc = three_bus_toy();
  PlanningCase small = reduce_case(pc, 1, 2);
  CHECK(small.representative_days.size() == 1);
  CHECK(small.hours_per_day() == 2);
  CHECK(small.weight_sum_days() == doctest::Approx(365.0).epsilon(1e-9));
  CHECK_THROWS_AS(reduce_case(pc, 0, 2), ConfigError);
  CHECK_THROWS_AS(reduce_case(pc, 1, 0), ConfigError);

  PlanningCase toy = two_bus_toy();
  toy.uncertainty.budget_demand = 1;
  CHECK_THROWS_AS(brute_force_worst_case(toy, ExpansionPlan{}, tight_solver_defaults(), 1),
                  ConfigError);
}

}  // TEST_SUITE
