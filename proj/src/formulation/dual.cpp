#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "tnep/formulation.hpp"
#include "tnep/uncertainty.hpp"

namespace tnep {

using milp::LinExpr;
using milp::ModelBuilder;
using milp::RowOrigin;
using milp::RowSense;
using milp::StandardFormBlock;
using milp::VarId;

namespace {

// Per model row: the (param, coef) pairs that shift its right-hand side.
struct DepTable {
  std::vector<std::vector<std::pair<int, double>>> u;
  std::vector<std::vector<std::pair<int, double>>> z;
};

DepTable collect_deps(const OperationalModelTemplate::SymbolicLp& lp) {
  DepTable table;
  const auto rows = static_cast<std::size_t>(lp.mb.num_rows());
  table.u.resize(rows);
  table.z.resize(rows);
  for (const auto& d : lp.u_deps)
    table.u[static_cast<std::size_t>(d.row)].push_back({d.param, d.coef});
  for (const auto& d : lp.z_deps)
    table.z[static_cast<std::size_t>(d.row)].push_back({d.param, d.coef});
  return table;
}

DualizedOperational::Affine affine_for(const StandardFormBlock& block, std::int32_t i,
                                       const OperationalModelTemplate::SymbolicLp& lp,
                                       const DepTable& deps) {
  DualizedOperational::Affine a;
  a.constant = block.rhs[static_cast<std::size_t>(i)];
  const RowOrigin origin = block.origin[static_cast<std::size_t>(i)];
  if (origin.kind != RowOrigin::Kind::Constraint) return a;  // bounds are constant
  const std::size_t r = static_cast<std::size_t>(origin.index);
  // ≤ rows were negated on their way into the ≥ block, so their parametric
  // right-hand side terms flip sign with them.
  const double sign =
      lp.mb.row({origin.index}).sense == RowSense::LessEqual ? -1.0 : 1.0;
  for (const auto& [param, coef] : deps.u[r]) a.u_terms.push_back({param, sign * coef});
  for (const auto& [param, coef] : deps.z[r]) a.z_terms.push_back({param, sign * coef});
  return a;
}

double evaluate(const DualizedOperational::Affine& a, const std::vector<double>& u_flat,
                const std::vector<double>& z_values) {
  double v = a.constant;
  for (const auto& [param, coef] : a.u_terms) v += coef * u_flat[static_cast<std::size_t>(param)];
  for (const auto& [param, coef] : a.z_terms) v += coef * z_values[static_cast<std::size_t>(param)];
  return v;
}

}  // namespace

DualizedOperational dualize_operational_lp(const OperationalModelTemplate::SymbolicLp& lp) {
  const milp::StandardForm sf = milp::extract_standard_form(lp.mb);
  const DepTable deps = collect_deps(lp);

  DualizedOperational dual;
  dual.num_primal_vars = sf.num_vars;
  dual.num_eq = sf.equalities.rows();
  dual.num_ineq = sf.inequalities.rows();
  dual.primal_objective = sf.objective;
  dual.primal_offset = sf.objective_offset;
  dual.u_size = lp.u_size;
  dual.z_size = lp.z_size;

  dual.eq_rhs.reserve(static_cast<std::size_t>(dual.num_eq));
  for (std::int32_t i = 0; i < dual.num_eq; ++i)
    dual.eq_rhs.push_back(affine_for(sf.equalities, i, lp, deps));
  dual.ineq_rhs.reserve(static_cast<std::size_t>(dual.num_ineq));
  for (std::int32_t i = 0; i < dual.num_ineq; ++i)
    dual.ineq_rhs.push_back(affine_for(sf.inequalities, i, lp, deps));

  dual.columns.resize(static_cast<std::size_t>(dual.num_primal_vars));
  for (std::int32_t i = 0; i < dual.num_eq; ++i)
    for (std::int32_t k = sf.equalities.row_start[static_cast<std::size_t>(i)];
         k < sf.equalities.row_start[static_cast<std::size_t>(i) + 1]; ++k)
      dual.columns[static_cast<std::size_t>(sf.equalities.col[static_cast<std::size_t>(k)])]
          .push_back({true, i, sf.equalities.coef[static_cast<std::size_t>(k)]});
  for (std::int32_t i = 0; i < dual.num_ineq; ++i)
    for (std::int32_t k = sf.inequalities.row_start[static_cast<std::size_t>(i)];
         k < sf.inequalities.row_start[static_cast<std::size_t>(i) + 1]; ++k)
      dual.columns[static_cast<std::size_t>(sf.inequalities.col[static_cast<std::size_t>(k)])]
          .push_back({false, i, sf.inequalities.coef[static_cast<std::size_t>(k)]});
  return dual;
}

milp::ModelBuilder build_dual_lp(const DualizedOperational& dual,
                                 const std::vector<double>& u_flat,
                                 const std::vector<double>& z_values, double dual_bound) {
  if (static_cast<int>(u_flat.size()) != dual.u_size)
    throw ConfigError("u vector has the wrong size for this dual system");
  if (static_cast<int>(z_values.size()) != dual.z_size)
    throw ConfigError("z pattern has the wrong size for this dual system");

  ModelBuilder mb;
  std::vector<VarId> lambda;
  lambda.reserve(static_cast<std::size_t>(dual.num_eq));
  std::vector<VarId> mu;
  mu.reserve(static_cast<std::size_t>(dual.num_ineq));
  LinExpr objective;
  for (std::int32_t i = 0; i < dual.num_eq; ++i) {
    VarId v = mb.add_continuous(-dual_bound, dual_bound);
    lambda.push_back(v);
    objective.add(v, evaluate(dual.eq_rhs[static_cast<std::size_t>(i)], u_flat, z_values));
  }
  for (std::int32_t i = 0; i < dual.num_ineq; ++i) {
    VarId v = mb.add_continuous(0.0, dual_bound);
    mu.push_back(v);
    objective.add(v, evaluate(dual.ineq_rhs[static_cast<std::size_t>(i)], u_flat, z_values));
  }
  for (std::int32_t v = 0; v < dual.num_primal_vars; ++v) {
    LinExpr col;
    for (const DualizedOperational::ColumnEntry& e : dual.columns[static_cast<std::size_t>(v)])
      col.add(e.equality ? lambda[static_cast<std::size_t>(e.row)]
                         : mu[static_cast<std::size_t>(e.row)],
              e.coef);
    mb.add_constraint(RowSense::Equal, col, dual.primal_objective[static_cast<std::size_t>(v)]);
  }
  mb.set_objective(milp::ObjSense::Maximize, objective, dual.primal_offset);
  return mb;
}

InnerMaster::InnerMaster(const OperationalModelTemplate& tmpl, const ExpansionPlan& plan,
                         double dual_bound)
    : tmpl_(tmpl), dual_bound_(dual_bound) {
  if (!(dual_bound > 0.0) || !std::isfinite(dual_bound))
    throw ConfigError("a finite positive dual bound is required to linearize the cuts");
  dual_ = dualize_operational_lp(tmpl.instantiate_symbolic(plan));

  const PlanningCase& pc = tmpl.planning_case();
  std::vector<VarId> demand_flags, conv_flags, wind_flags;
  for (std::size_t j = 0; j < pc.demands.size(); ++j)
    demand_flags.push_back(mb_.add_binary("u_demand:" + pc.demands[j].id));
  for (int g : pc.conventional_indices())
    conv_flags.push_back(mb_.add_binary("u_conv:" + pc.generators[static_cast<std::size_t>(g)].id));
  for (int g : pc.wind_indices())
    wind_flags.push_back(mb_.add_binary("u_wind:" + pc.generators[static_cast<std::size_t>(g)].id));
  emit_budget_constraints(pc, mb_, demand_flags, conv_flags, wind_flags);
  u_vars_ = demand_flags;
  u_vars_.insert(u_vars_.end(), conv_flags.begin(), conv_flags.end());
  u_vars_.insert(u_vars_.end(), wind_flags.begin(), wind_flags.end());

  xi_ = mb_.add_continuous(0.0, milp::kInfinity, "xi");
}

void InnerMaster::add_cut(const std::vector<double>& z_pattern) {
  if (static_cast<int>(z_pattern.size()) != dual_.z_size)
    throw ConfigError("z pattern has the wrong size for this plan");
  const double b = dual_bound_;

  std::vector<VarId> lambda;
  lambda.reserve(static_cast<std::size_t>(dual_.num_eq));
  std::vector<VarId> mu;
  mu.reserve(static_cast<std::size_t>(dual_.num_ineq));
  for (std::int32_t i = 0; i < dual_.num_eq; ++i) lambda.push_back(mb_.add_continuous(-b, b));
  for (std::int32_t i = 0; i < dual_.num_ineq; ++i) mu.push_back(mb_.add_continuous(0.0, b));

  for (std::int32_t v = 0; v < dual_.num_primal_vars; ++v) {
    LinExpr col;
    for (const DualizedOperational::ColumnEntry& e : dual_.columns[static_cast<std::size_t>(v)])
      col.add(e.equality ? lambda[static_cast<std::size_t>(e.row)]
                         : mu[static_cast<std::size_t>(e.row)],
              e.coef);
    mb_.add_constraint(RowSense::Equal, col,
                       dual_.primal_objective[static_cast<std::size_t>(v)]);
  }

  // ξ ≤ λᵀr(u) + μᵀs(u, z̄): constants (including the z̄ part) multiply the
  // duals directly; every u-dependent term becomes a linearized product.
  LinExpr cut(xi_, 1.0);
  auto accumulate = [&](const std::vector<DualizedOperational::Affine>& rhs,
                        const std::vector<VarId>& duals, double lo) {
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      const DualizedOperational::Affine& a = rhs[i];
      double c = a.constant;
      for (const auto& [param, coef] : a.z_terms)
        c += coef * z_pattern[static_cast<std::size_t>(param)];
      cut.add(duals[i], -c);
      for (const auto& [param, coef] : a.u_terms) {
        VarId w = linearize_product(mb_, u_vars_[static_cast<std::size_t>(param)], duals[i],
                                    lo, dual_bound_);
        cut.add(w, -coef);
      }
    }
  };
  accumulate(dual_.eq_rhs, lambda, -dual_bound_);
  accumulate(dual_.ineq_rhs, mu, 0.0);
  mb_.add_constraint(RowSense::LessEqual, cut, dual_.primal_offset);
  ++cuts_;
}

InnerMaster::Outcome InnerMaster::solve(const milp::SolverConfig& config) {
  if (cuts_ == 0) throw ConfigError("inner master needs at least one cut before solving");
  mb_.set_objective(milp::ObjSense::Maximize, LinExpr(xi_, 1.0));
  milp::SolveResult r = milp::solve(mb_, config);
  if (r.status == milp::SolveStatus::Unbounded)
    throw ConfigError("inner master is unbounded; a finite dual bound is required");
  if (r.status != milp::SolveStatus::Optimal)
    throw SolverError(std::string("inner master did not solve to optimality: ") +
                      milp::to_string(r.status));

  const PlanningCase& pc = tmpl_.planning_case();
  Outcome out;
  out.xi = r.objective;
  std::size_t at = 0;
  out.u.demand.resize(pc.demands.size());
  for (auto& flag : out.u.demand)
    flag = static_cast<std::uint8_t>(r.integral_value(u_vars_[at++]));
  out.u.conventional.resize(pc.conventional_indices().size());
  for (auto& flag : out.u.conventional)
    flag = static_cast<std::uint8_t>(r.integral_value(u_vars_[at++]));
  out.u.wind.resize(pc.wind_indices().size());
  for (auto& flag : out.u.wind)
    flag = static_cast<std::uint8_t>(r.integral_value(u_vars_[at++]));
  return out;
}

}  // namespace tnep
