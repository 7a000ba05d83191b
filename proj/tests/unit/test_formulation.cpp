#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "tnep/case_io.hpp"
#include "tnep/ccg.hpp"
#include "tnep/formulation.hpp"
#include "tnep/oracle.hpp"
#include "tnep/uncertainty.hpp"

using namespace tnep;

namespace {

const milp::SolverConfig kTight = tight_solver_defaults();

// All plans of the two-bus toy: one candidate circuit, one candidate unit.
std::vector<ExpansionPlan> two_bus_plans() {
  std::vector<ExpansionPlan> out(4);
  out[1].lines_built = {{"1-2", 1}};
  out[2].storage_built = {{"S1", 1}};
  out[3].lines_built = {{"1-2", 1}};
  out[3].storage_built = {{"S1", 1}};
  return out;
}

double solve_objective(const milp::ModelBuilder& mb) {
  milp::SolveResult r = milp::solve(mb, kTight);
  REQUIRE(r.status == milp::SolveStatus::Optimal);
  return r.objective;
}

}  // namespace

TEST_SUITE("formulation") {

TEST_CASE("strong duality holds for random plan, deviation, and mode fixings") {
  std::mt19937 rng(20240811);
  auto run_harness = [&](const PlanningCase& pc, int trials) {
    OperationalModelTemplate tmpl(pc);
    std::vector<DeviationVector> vertices = enumerate_vertices(pc);
    std::vector<ExpansionPlan> plans;
    if (pc.buses.size() == 2) {
      plans = two_bus_plans();
    } else {
      plans.resize(3);
      plans[1].lines_built = {{"2-3", 1}, {"1-3", 1}};
      plans[1].storage_built = {{"S2", 1}};
      plans[2].lines_built = {{"2-3", 2}};
      plans[2].storage_built = {{"S2", 2}};
    }
    for (int t = 0; t < trials; ++t) {
      const ExpansionPlan& plan =
          plans[std::uniform_int_distribution<std::size_t>(0, plans.size() - 1)(rng)];
      const DeviationVector& u =
          vertices[std::uniform_int_distribution<std::size_t>(0, vertices.size() - 1)(rng)];

      OperationalModelTemplate::SymbolicLp lp = tmpl.instantiate_symbolic(plan);
      std::vector<double> z(static_cast<std::size_t>(lp.z_size));
      for (double& zi : z) zi = std::uniform_int_distribution<int>(0, 1)(rng);
      std::vector<double> u_flat = tmpl.flatten(u);

      milp::ModelBuilder primal = lp.materialize(u_flat, z);
      double primal_obj = solve_objective(primal);

      DualizedOperational dual = dualize_operational_lp(lp);
      milp::ModelBuilder dual_lp = build_dual_lp(dual, u_flat, z);
      double dual_obj = solve_objective(dual_lp);

      CAPTURE(t);
      CHECK(std::abs(primal_obj - dual_obj) <= 1e-6);
    }
  };
  run_harness(two_bus_toy(), 50);
  run_harness(three_bus_toy(), 20);
}

TEST_CASE("dual objective with the default bound matches the unbounded dual") {
  PlanningCase pc = three_bus_toy();
  OperationalModelTemplate tmpl(pc);
  ExpansionPlan plan;
  plan.storage_built = {{"S2", 1}};
  OperationalModelTemplate::SymbolicLp lp = tmpl.instantiate_symbolic(plan);
  std::vector<double> z(static_cast<std::size_t>(lp.z_size), 0.0);
  std::vector<double> u_flat = tmpl.flatten(pc.nominal_deviation());
  DualizedOperational dual = dualize_operational_lp(lp);
  double boxed =
      solve_objective(build_dual_lp(dual, u_flat, z, default_dual_bound(pc)));
  double free_dual = solve_objective(build_dual_lp(dual, u_flat, z));
  CHECK(std::abs(boxed - free_dual) <= 1e-6);
}

TEST_CASE("linearize_product equals the binary-continuous product on a grid") {
  for (int bval : {0, 1}) {
    for (double cval : {-10.0, -3.0, 0.0, 5.0, 10.0}) {
      milp::ModelBuilder mb;
      milp::VarId b = mb.add_binary("b");
      milp::VarId c = mb.add_continuous(-10.0, 10.0, "c");
      milp::VarId w = linearize_product(mb, b, c, -10.0, 10.0, "w");
      mb.add_constraint(milp::RowSense::Equal, milp::LinExpr(b, 1.0), bval);
      mb.add_constraint(milp::RowSense::Equal, milp::LinExpr(c, 1.0), cval);
      mb.set_objective(milp::ObjSense::Minimize, milp::LinExpr());
      milp::SolveResult r = milp::solve(mb, kTight);
      REQUIRE(r.status == milp::SolveStatus::Optimal);
      CHECK(r.value(w) == doctest::Approx(bval * cval).epsilon(1e-9));
    }
  }
}

TEST_CASE("linearize_product rejects crossed or infinite bounds") {
  milp::ModelBuilder mb;
  milp::VarId b = mb.add_binary("b");
  milp::VarId c = mb.add_continuous(-1.0, 1.0, "c");
  CHECK_THROWS_AS(linearize_product(mb, b, c, 2.0, 1.0), ConfigError);
  CHECK_THROWS_AS(linearize_product(mb, b, c, 0.0, milp::kInfinity), ConfigError);
}

TEST_CASE("doubling the big-M constant leaves the master optimum unchanged") {
  PlanningCase pc = three_bus_toy();
  auto master_objective = [&](double scale) {
    FormulationOptions opts;
    opts.big_m_scale = scale;
    OperationalModelTemplate tmpl(pc, opts);
    MasterModel master(tmpl);
    master.add_scenario(pc.nominal_deviation());
    DeviationVector stressed = pc.nominal_deviation();
    stressed.demand[0] = 1;
    master.add_scenario(stressed);
    milp::SolveResult r = master.solve(kTight);
    REQUIRE(r.status == milp::SolveStatus::Optimal);
    return r.objective;
  };
  CHECK(std::abs(master_objective(1.0) - master_objective(2.0)) <= 1e-6);
}

TEST_CASE("adding a scenario never decreases the master optimum") {
  PlanningCase pc = two_bus_toy();
  OperationalModelTemplate tmpl(pc);
  MasterModel master(tmpl);
  master.add_scenario(pc.nominal_deviation());
  milp::SolveResult r1 = master.solve(kTight);
  REQUIRE(r1.status == milp::SolveStatus::Optimal);

  DeviationVector stressed = pc.nominal_deviation();
  stressed.demand[0] = 1;
  master.add_scenario(stressed);
  milp::SolveResult r2 = master.solve(kTight);
  REQUIRE(r2.status == milp::SolveStatus::Optimal);
  CHECK(r2.objective >= r1.objective - 1e-9);

  CHECK_THROWS_AS(master.add_scenario(stressed), ConfigError);  // duplicate u
}

TEST_CASE("optimal dispatch never charges and discharges the same hour") {
  PlanningCase pc = three_bus_toy();
  OperationalModelTemplate tmpl(pc);
  ExpansionPlan plan;
  plan.lines_built = {{"2-3", 1}};
  plan.storage_built = {{"S2", 2}};
  DeviationVector worst = pc.nominal_deviation();
  worst.demand[0] = 1;
  worst.wind[0] = 1;
  OperationalSolve sol = solve_operational(tmpl, plan, worst, kTight);
  const int periods = tmpl.periods();
  const int instances = static_cast<int>(sol.vars.active_instances.size());
  REQUIRE(instances == 3);  // existing S1 plus two S2 units
  for (int s = 0; s < instances; ++s)
    for (int p = 0; p < periods; ++p) {
      const double pc_v = sol.raw.value(sol.vars.charge[static_cast<std::size_t>(s * periods + p)]);
      const double pd_v =
          sol.raw.value(sol.vars.discharge[static_cast<std::size_t>(s * periods + p)]);
      CHECK_FALSE((pc_v > 1e-9 && pd_v > 1e-9));
    }
}

TEST_CASE("energy trajectories stay in bounds and close the day") {
  PlanningCase pc = three_bus_toy();
  OperationalModelTemplate tmpl(pc);
  ExpansionPlan plan;
  plan.storage_built = {{"S2", 1}};
  OperationalSolve sol = solve_operational(tmpl, plan, pc.nominal_deviation(), kTight);
  const int H = tmpl.hours();
  for (std::size_t s = 0; s < sol.vars.active_instances.size(); ++s) {
    const StorageUnit& su =
        pc.storage_units[static_cast<std::size_t>(sol.vars.active_instances[s].unit)];
    for (int d = 0; d < tmpl.num_days(); ++d) {
      for (int t = 0; t < H; ++t) {
        const double e = sol.raw.value(
            sol.vars.energy[static_cast<std::size_t>(tmpl.idx(static_cast<int>(s), d, t))]);
        CHECK(e >= -1e-9);
        CHECK(e <= su.max_energy_mwh + 1e-9);
      }
      const double e_last = sol.raw.value(
          sol.vars.energy[static_cast<std::size_t>(tmpl.idx(static_cast<int>(s), d, H - 1))]);
      CHECK(e_last >= su.initial_energy_mwh - 1e-9);
    }
  }
}

TEST_CASE("an islanded generator bus dispatches nothing") {
  PlanningCase pc = load_case_file(std::string(TNEP_DATA_DIR) + "/garver.json");
  OperationalModelTemplate tmpl(pc);
  // Bus 6 starts with no circuits; with an empty plan its unit is stranded.
  OperationalSolve sol = solve_operational(tmpl, ExpansionPlan{}, pc.nominal_deviation(), kTight);
  const int g6 = 2;  // generators are G1, G3, G6, W3 in case order
  REQUIRE(pc.generators[g6].id == "G6");
  for (int d = 0; d < tmpl.num_days(); ++d)
    for (int t = 0; t < tmpl.hours(); ++t)
      CHECK(sol.raw.value(sol.vars.gen_p[static_cast<std::size_t>(tmpl.idx(g6, d, t))]) <= 1e-9);
}

TEST_CASE("a single-bus case reduces to a dispatch-only problem") {
  PlanningCase pc;
  pc.name = "island";
  pc.buses = {{1, true}};
  Generator g;
  g.id = "G";
  g.bus = 1;
  g.nominal_capacity_mw = 100.0;
  g.operating_cost_per_mwh = 10.0;
  pc.generators = {g};
  Demand d;
  d.id = "D";
  d.bus = 1;
  d.nominal_level_mw = 60.0;
  d.shed_cost_per_mwh = 1000.0;
  d.hourly_profile_ref = "D";
  pc.demands = {d};
  RepresentativeDay day;
  day.weight_days = 365.0;
  day.demand_factor["D"] = {1.0, 0.5};
  pc.representative_days = {day};
  pc.economics.amortization_rate = 0.1;
  pc.economics.investment_budget = 0.0;
  validate(pc);

  OperationalModelTemplate tmpl(pc);
  OperationalSolve sol = solve_operational(tmpl, ExpansionPlan{}, pc.nominal_deviation(), kTight);
  // 365 days x (60 + 30) MWh at 10 EUR/MWh, in thousands.
  CHECK(sol.cost == doctest::Approx(365.0 * 90.0 * 10.0 / 1000.0).epsilon(1e-9));
}

TEST_CASE("plans over budget are rejected at instantiation") {
  PlanningCase pc = two_bus_toy();
  pc.economics.investment_budget = 1000.0;  // line alone costs 3000
  OperationalModelTemplate tmpl(pc);
  ExpansionPlan plan;
  plan.lines_built = {{"1-2", 1}};
  milp::ModelBuilder mb;
  CHECK_THROWS_AS(tmpl.instantiate_fixed(mb, plan, pc.nominal_deviation()), ValidationError);
}

TEST_CASE("z pattern sizing tracks built instances and the relax switch") {
  PlanningCase pc = two_bus_toy();
  OperationalModelTemplate tmpl(pc);
  ExpansionPlan none, one;
  one.storage_built = {{"S1", 1}};
  CHECK(tmpl.z_pattern_size(none) == 0);
  CHECK(tmpl.z_pattern_size(one) == 4);  // 1 instance x 1 day x 4 hours

  FormulationOptions relax;
  relax.relax_mode_binaries = true;
  OperationalModelTemplate relaxed(pc, relax);
  CHECK(relaxed.z_pattern_size(one) == 0);
  OperationalModelTemplate::SymbolicLp lp = relaxed.instantiate_symbolic(one);
  CHECK(lp.z_size == 0);
}

}  // TEST_SUITE
