#include <algorithm>
#include <string>

#include "tnep/formulation.hpp"

namespace tnep {

using milp::LinExpr;
using milp::RowSense;
using milp::VarId;

MasterModel::MasterModel(const OperationalModelTemplate& tmpl) : tmpl_(tmpl) {
  const PlanningCase& pc = tmpl.planning_case();

  LinExpr budget;
  LinExpr objective;

  plan_vars_.line_build.reserve(static_cast<std::size_t>(tmpl.total_line_slots()));
  for (std::size_t l = 0; l < pc.corridors.size(); ++l) {
    const Corridor& c = pc.corridors[l];
    const int slots = tmpl.line_slots(static_cast<int>(l));
    std::vector<VarId> slot_vars;
    for (int k = 0; k < slots; ++k) {
      VarId x = mb_.add_binary("line:" + c.key() + ":" + std::to_string(k));
      slot_vars.push_back(x);
      plan_vars_.line_build.push_back(x);
      budget.add(x, c.circuit_capital_cost);
      objective.add(x, annualize(c.circuit_capital_cost, pc.economics));
    }
    // Interchangeable circuit slots: force the built ones to be a prefix.
    for (int k = 0; k + 1 < slots; ++k)
      mb_.add_constraint(RowSense::GreaterEqual,
                         LinExpr(slot_vars[static_cast<std::size_t>(k)], 1.0)
                             .add(slot_vars[static_cast<std::size_t>(k + 1)], -1.0),
                         0.0);
  }

  VarId prev;
  int prev_unit = -1;
  for (const StorageInstance& inst : tmpl.instances()) {
    if (!inst.candidate) continue;
    const StorageUnit& su = pc.storage_units[static_cast<std::size_t>(inst.unit)];
    VarId x = mb_.add_binary("storage:" + su.id + ":" + std::to_string(inst.copy));
    plan_vars_.storage_build.push_back(x);
    budget.add(x, su.unit_capital_cost);
    objective.add(x, annualize(su.unit_capital_cost, pc.economics));
    if (inst.unit == prev_unit)
      mb_.add_constraint(RowSense::GreaterEqual, LinExpr(prev, 1.0).add(x, -1.0), 0.0);
    prev = x;
    prev_unit = inst.unit;
  }

  plan_vars_.eta = mb_.add_continuous(0.0, milp::kInfinity, "eta");
  objective.add(plan_vars_.eta, 1.0);
  plan_vars_.budget_row = mb_.add_constraint(RowSense::LessEqual, budget,
                                             pc.economics.investment_budget, "budget");
  mb_.set_objective(milp::ObjSense::Minimize, objective);
}

void MasterModel::add_scenario(const DeviationVector& u) {
  if (std::find(scenarios_.begin(), scenarios_.end(), u) != scenarios_.end())
    throw ConfigError("scenario " + u.to_string() + " is already in the master");
  OperationalVars block = tmpl_.instantiate_master_block(mb_, plan_vars_, u);
  mb_.add_constraint(RowSense::GreaterEqual,
                     LinExpr(plan_vars_.eta, 1.0).add(block.operating_cost, -1.0), 0.0);
  scenarios_.push_back(u);
  scenario_costs_.push_back(block.operating_cost);
}

double MasterModel::scenario_operating_cost(int i, const milp::SolveResult& r) const {
  double total = 0.0;
  for (const milp::LinTerm& t : scenario_costs_.at(static_cast<std::size_t>(i)).terms())
    total += t.coef * r.value(t.var);
  return total;
}

milp::SolveResult MasterModel::solve(const milp::SolverConfig& config) {
  milp::SolveResult r = milp::solve(mb_, config);
  if (r.status != milp::SolveStatus::Optimal)
    throw SolverError(std::string("master problem did not solve to optimality: ") +
                      milp::to_string(r.status));
  return r;
}

ExpansionPlan MasterModel::extract_plan(const milp::SolveResult& r) const {
  const PlanningCase& pc = tmpl_.planning_case();
  ExpansionPlan plan;
  for (std::size_t l = 0; l < pc.corridors.size(); ++l) {
    const int offset = tmpl_.line_slot_offset(static_cast<int>(l));
    int count = 0;
    for (int k = 0; k < tmpl_.line_slots(static_cast<int>(l)); ++k)
      count += static_cast<int>(
          r.integral_value(plan_vars_.line_build[static_cast<std::size_t>(offset + k)]));
    if (count > 0) plan.lines_built[pc.corridors[l].key()] = count;
  }
  std::size_t pos = 0;
  for (const StorageInstance& inst : tmpl_.instances()) {
    if (!inst.candidate) continue;
    const StorageUnit& su = pc.storage_units[static_cast<std::size_t>(inst.unit)];
    if (r.integral_value(plan_vars_.storage_build[pos]) > 0) ++plan.storage_built[su.id];
    ++pos;
  }
  return plan;
}

}  // namespace tnep
