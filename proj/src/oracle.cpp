#include <algorithm>
#include <string>

#include "tnep/oracle.hpp"
#include "tnep/uncertainty.hpp"

namespace tnep {

PlanningCase two_bus_toy() {
  PlanningCase pc;
  pc.name = "two-bus";
  pc.buses = {{1, true}, {2, false}};
  pc.generators.push_back({"G1", 1, Technology::Conventional, 100.0, 40.0, {}});
  pc.demands.push_back({"D1", 2, 60.0, 5000.0, std::string("D1")});
  pc.corridors.push_back({1, 2, 0.2, 80.0, 0, 1, 3000.0});

  StorageUnit s;
  s.id = "S1";
  s.bus = 2;
  s.status = StorageStatus::Candidate;
  s.max_energy_mwh = 40.0;
  s.initial_energy_mwh = 10.0;
  s.charge_cap_mw = 20.0;
  s.discharge_cap_mw = 20.0;
  s.charge_efficiency = 0.9;
  s.discharge_efficiency = 0.9;
  s.max_buildable = 1;
  s.unit_capital_cost = 1500.0;
  pc.storage_units.push_back(s);

  RepresentativeDay day;
  day.weight_days = 365.0;
  day.demand_factor["D1"] = {0.8, 1.0, 0.9, 0.7};
  pc.representative_days.push_back(day);

  pc.economics = {0.11, 10000.0, 1e-6, 1e-6};
  pc.uncertainty.budget_demand = 1;
  pc.uncertainty.budget_conventional = 1;
  pc.uncertainty.budget_wind = 0;
  validate(pc);
  return pc;
}

PlanningCase three_bus_toy() {
  PlanningCase pc;
  pc.name = "three-bus";
  pc.buses = {{1, true}, {2, false}, {3, false}};
  pc.generators.push_back({"G1", 1, Technology::Conventional, 80.0, 50.0, {}});
  pc.generators.push_back({"W1", 3, Technology::Wind, 50.0, 0.0, std::string("W1")});
  pc.demands.push_back({"D1", 2, 70.0, 4000.0, std::string("D1")});
  pc.corridors.push_back({1, 2, 0.30, 60.0, 1, 2, 2500.0});
  pc.corridors.push_back({2, 3, 0.25, 50.0, 0, 2, 2000.0});
  pc.corridors.push_back({1, 3, 0.40, 40.0, 0, 1, 1800.0});

  StorageUnit existing;
  existing.id = "S1";
  existing.bus = 2;
  existing.status = StorageStatus::Existing;
  existing.max_energy_mwh = 30.0;
  existing.initial_energy_mwh = 5.0;
  existing.charge_cap_mw = 15.0;
  existing.discharge_cap_mw = 15.0;
  existing.charge_efficiency = 0.9;
  existing.discharge_efficiency = 1.0;
  pc.storage_units.push_back(existing);

  StorageUnit candidate;
  candidate.id = "S2";
  candidate.bus = 3;
  candidate.status = StorageStatus::Candidate;
  candidate.max_energy_mwh = 20.0;
  candidate.initial_energy_mwh = 2.0;
  candidate.charge_cap_mw = 10.0;
  candidate.discharge_cap_mw = 10.0;
  candidate.charge_efficiency = 0.85;
  candidate.discharge_efficiency = 0.95;
  candidate.max_buildable = 2;
  candidate.unit_capital_cost = 800.0;
  pc.storage_units.push_back(candidate);

  RepresentativeDay day;
  day.weight_days = 365.0;
  day.demand_factor["D1"] = {0.7, 1.0, 0.9, 0.6};
  day.wind_capacity_factor["W1"] = {0.9, 0.3, 0.2, 0.8};
  pc.representative_days.push_back(day);

  pc.economics = {0.11, 8000.0, 1e-6, 1e-6};
  pc.uncertainty.budget_demand = 1;
  pc.uncertainty.budget_conventional = 1;
  pc.uncertainty.budget_wind = 1;
  validate(pc);
  return pc;
}

PlanningCase relax_demo() {
  PlanningCase pc;
  pc.name = "relax-demo";
  pc.buses = {{1, true}, {2, false}, {3, false}};
  pc.generators.push_back({"W1", 1, Technology::Wind, 200.0, 0.0, std::string("W1")});
  pc.generators.push_back({"G2", 3, Technology::Conventional, 100.0, 500.0, {}});
  pc.demands.push_back({"D1", 3, 100.0, 1000.0, std::string("D1")});
  // The 2-3 leg is the bottleneck; extra load at bus 2 redistributes the
  // triangle's flows and lets more of bus 1's free energy through.
  pc.corridors.push_back({1, 2, 0.1, 200.0, 1, 1, 0.0});
  pc.corridors.push_back({2, 3, 0.1, 20.0, 1, 1, 0.0});
  pc.corridors.push_back({1, 3, 0.1, 200.0, 1, 1, 0.0});

  StorageUnit s;
  s.id = "S1";
  s.bus = 2;
  s.status = StorageStatus::Existing;
  s.max_energy_mwh = 30.0;
  s.initial_energy_mwh = 5.0;
  s.charge_cap_mw = 120.0;
  s.discharge_cap_mw = 80.0;
  s.charge_efficiency = 0.8;
  s.discharge_efficiency = 0.8;
  pc.storage_units.push_back(s);

  RepresentativeDay day;
  day.weight_days = 365.0;
  day.demand_factor["D1"] = {1.0, 1.0, 1.0, 1.0};
  day.wind_capacity_factor["W1"] = {1.0, 1.0, 1.0, 1.0};
  pc.representative_days.push_back(day);

  pc.economics = {0.11, 0.0, 1e-6, 1e-6};
  pc.uncertainty.budget_demand = 0;
  pc.uncertainty.budget_conventional = 0;
  pc.uncertainty.budget_wind = 0;
  validate(pc);
  return pc;
}

PlanningCase reduce_case(const PlanningCase& pc, int max_days, int hours_per_day) {
  if (max_days < 1 || hours_per_day < 1)
    throw ConfigError("reduce_case needs at least one day and one hour");
  if (hours_per_day > pc.hours_per_day())
    throw ConfigError("cannot extend a case's day beyond its recorded hours");
  PlanningCase out = pc;
  out.name = pc.name + "-reduced";
  if (static_cast<std::size_t>(max_days) < out.representative_days.size())
    out.representative_days.resize(static_cast<std::size_t>(max_days));
  double kept = 0.0;
  for (const RepresentativeDay& d : out.representative_days) kept += d.weight_days;
  for (RepresentativeDay& d : out.representative_days) {
    d.weight_days *= 365.0 / kept;
    for (auto& [name, profile] : d.demand_factor)
      profile.resize(static_cast<std::size_t>(hours_per_day));
    for (auto& [name, profile] : d.wind_capacity_factor)
      profile.resize(static_cast<std::size_t>(hours_per_day));
  }
  validate(out);
  return out;
}

WorstCase brute_force_worst_case(const PlanningCase& pc, const ExpansionPlan& plan,
                                 const milp::SolverConfig& config,
                                 std::size_t max_vertices) {
  const OperationalModelTemplate tmpl(pc);
  const std::vector<DeviationVector> vertices = enumerate_vertices(pc, max_vertices);
  WorstCase worst;
  worst.cost = -milp::kInfinity;
  for (const DeviationVector& u : vertices) {
    const double cost = solve_operational(tmpl, plan, u, config).cost;
    // Strict comparison keeps the first (lexicographically smallest) maximizer.
    if (cost > worst.cost) {
      worst.cost = cost;
      worst.u = u;
    }
  }
  return worst;
}

RobustSolution extensive_form(const PlanningCase& pc, const milp::SolverConfig& config,
                              std::size_t max_vertices) {
  const OperationalModelTemplate tmpl(pc);
  MasterModel master(tmpl);
  for (const DeviationVector& u : enumerate_vertices(pc, max_vertices)) master.add_scenario(u);
  const milp::SolveResult r = master.solve(config);

  RobustSolution sol;
  sol.plan = master.extract_plan(r);
  sol.capital_cost = plan_capital_cost(sol.plan, pc).capital;
  sol.worst_case_operating_cost = master.eta(r);
  sol.total_annual_cost = r.objective;
  int arg = 0;
  double best = -milp::kInfinity;
  for (int i = 0; i < master.num_scenarios(); ++i) {
    const double cost = master.scenario_operating_cost(i, r);
    if (cost > best) {
      best = cost;
      arg = i;
    }
  }
  sol.worst_case_u = master.scenarios()[static_cast<std::size_t>(arg)];
  sol.log.total_seconds = r.stats.wall_seconds;
  return sol;
}

}  // namespace tnep
