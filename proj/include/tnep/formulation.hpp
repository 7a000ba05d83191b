#pragma once

#include <vector>

#include "tnep/milp/model.hpp"
#include "tnep/milp/solve.hpp"
#include "tnep/milp/standard_form.hpp"
#include "tnep/types.hpp"

namespace tnep {

// One concrete storage unit in the operational problem.  Existing units give
// one instance; a candidate site with max_buildable B gives B unit-sized
// instances, each with its own build binary in the master.
struct StorageInstance {
  int unit = 0;  // index into PlanningCase::storage_units
  int copy = 0;
  bool candidate = false;
};

struct FormulationOptions {
  // Mode binaries z become continuous in [0,1]; exposes the simultaneous
  // charge/discharge behaviour the binaries exist to forbid.
  bool relax_mode_binaries = false;
  // Multiplies the candidate-line disjunction constant; big-M validity tests
  // double it and expect the objective to stay put.
  double big_m_scale = 1.0;
};

// Variable ids of one operational block, all indexed (entity, day, hour)
// through idx() helpers on the template.  `mode` is empty when z was fixed.
struct OperationalVars {
  std::vector<milp::VarId> gen_p;
  std::vector<milp::VarId> shed;
  std::vector<milp::VarId> angle;
  std::vector<milp::VarId> flow_existing;   // corridor-major, only existing>0 corridors
  std::vector<milp::VarId> flow_candidate;  // corridor-slot-major
  std::vector<milp::VarId> charge;
  std::vector<milp::VarId> discharge;
  std::vector<milp::VarId> energy;
  std::vector<milp::VarId> mode;
  std::vector<StorageInstance> active_instances;
  std::vector<int> active_line_slots;  // global slot indices present in this block
  milp::LinExpr operating_cost;        // weighted cost of this block's dispatch
};

// First-stage investment variables of the master problem.
struct PlanVars {
  std::vector<milp::VarId> line_build;     // per corridor slot, corridor-major
  std::vector<milp::VarId> storage_build;  // per candidate instance
  milp::VarId eta;
  milp::RowId budget_row;
};

// The lower-level problem in parametric form.  Instantiates the fixed-plan
// MILP (inner subproblem and oracle evaluations), the master's per-scenario
// blocks, and the z-fixed LP whose right-hand side stays symbolic in (u, z)
// for dualization.  All three share one emitter so they cannot drift apart.
class OperationalModelTemplate {
 public:
  explicit OperationalModelTemplate(const PlanningCase& pc, FormulationOptions opts = {});

  const PlanningCase& planning_case() const { return *pc_; }
  const FormulationOptions& options() const { return opts_; }

  int num_days() const { return days_; }
  int hours() const { return hours_; }
  int periods() const { return days_ * hours_; }
  int idx(int entity, int day, int hour) const {
    return (entity * days_ + day) * hours_ + hour;
  }

  // All storage instances, existing first; master blocks use every one,
  // fixed-plan blocks use the built subset.
  const std::vector<StorageInstance>& instances() const { return instances_; }
  std::vector<StorageInstance> built_instances(const ExpansionPlan& plan) const;

  int total_line_slots() const { return total_line_slots_; }
  int line_slot_offset(int corridor) const { return slot_offset_[static_cast<std::size_t>(corridor)]; }
  int line_slots(int corridor) const;
  double big_m(int corridor) const;

  // Size of a z pattern for the given plan: built instances × days × hours.
  int z_pattern_size(const ExpansionPlan& plan) const;

  // (A) Fixed plan and uncertainty, z binary: the operational MILP.
  OperationalVars instantiate_fixed(milp::ModelBuilder& mb, const ExpansionPlan& plan,
                                    const DeviationVector& u) const;

  // (B) Scenario block wired to master investment variables.
  OperationalVars instantiate_master_block(milp::ModelBuilder& mb, const PlanVars& x,
                                           const DeviationVector& u) const;

  // (C) z fixed, u and z kept symbolic on the right-hand side.
  struct RhsDependency {
    std::int32_t row = -1;   // model row index
    std::int32_t param = -1; // flat u index or z-pattern index
    double coef = 0.0;
  };
  struct SymbolicLp {
    milp::ModelBuilder mb;  // rhs stored at u = 0, z = 0
    OperationalVars vars;
    std::vector<RhsDependency> u_deps;
    std::vector<RhsDependency> z_deps;
    std::vector<StorageInstance> active_instances;
    int z_size = 0;
    int u_size = 0;

    // Copy with the right-hand side evaluated at concrete (u, z).
    milp::ModelBuilder materialize(const std::vector<double>& u_flat,
                                   const std::vector<double>& z_values) const;
  };
  SymbolicLp instantiate_symbolic(const ExpansionPlan& plan) const;

  // Flattened u in the fixed group order: demands, conventional, wind.
  std::vector<double> flatten(const DeviationVector& u) const;
  int u_size() const;

 private:
  struct EmitContext;
  OperationalVars emit(EmitContext& ctx) const;

  const PlanningCase* pc_;
  FormulationOptions opts_;
  int days_ = 0;
  int hours_ = 0;
  std::vector<StorageInstance> instances_;
  std::vector<int> slot_offset_;  // per corridor, into line-slot space
  int total_line_slots_ = 0;
};

// Dual system of the z-fixed LP: variables (λ per equality, μ ≥ 0 per
// inequality), feasibility rows Bᵀλ + Gᵀμ = b, and the affine right-hand
// sides r(u), s(u, z) whose products with the duals form the cut objective.
struct DualizedOperational {
  struct Affine {
    double constant = 0.0;
    std::vector<std::pair<int, double>> u_terms;  // (flat u index, coef)
    std::vector<std::pair<int, double>> z_terms;  // (z pattern index, coef)
  };
  struct ColumnEntry {
    bool equality = false;
    std::int32_t row = 0;  // index into the eq or ineq dual-variable space
    double coef = 0.0;
  };

  int num_primal_vars = 0;
  int num_eq = 0;
  int num_ineq = 0;
  std::vector<double> primal_objective;           // b
  double primal_offset = 0.0;
  std::vector<Affine> eq_rhs;                     // r
  std::vector<Affine> ineq_rhs;                   // s
  std::vector<std::vector<ColumnEntry>> columns;  // per primal variable
  int u_size = 0;
  int z_size = 0;
};

DualizedOperational dualize_operational_lp(const OperationalModelTemplate::SymbolicLp& lp);

// Standalone dual LP at concrete (u, z): max λᵀr + μᵀs over the dual
// feasible set. `dual_bound` caps |λ| and μ; pass infinity for the exact
// unbounded-variable dual.
milp::ModelBuilder build_dual_lp(const DualizedOperational& dual,
                                 const std::vector<double>& u_flat,
                                 const std::vector<double>& z_values,
                                 double dual_bound = milp::kInfinity);

// w = binary × continuous via the four standard rows; bounds must be finite.
milp::VarId linearize_product(milp::ModelBuilder& mb, milp::VarId binary,
                              milp::VarId continuous, double lower, double upper,
                              const std::string& name = {});

// Valid magnitude cap for balance prices and inequality multipliers: the
// worst shed cost times the worst-case total demand, over a year of days.
// Every balance row can be priced out by shedding, so no optimal dual
// component exceeds this by construction.
double default_dual_bound(const PlanningCase& pc);

// Outer master (investment variables, η, one operational block per adopted
// uncertainty realization).  Columns accumulate across outer iterations.
class MasterModel {
 public:
  explicit MasterModel(const OperationalModelTemplate& tmpl);

  // Adds the scenario block for u; throws ConfigError on duplicate u.
  void add_scenario(const DeviationVector& u);
  int num_scenarios() const { return static_cast<int>(scenarios_.size()); }
  const std::vector<DeviationVector>& scenarios() const { return scenarios_; }

  milp::SolveResult solve(const milp::SolverConfig& config);
  ExpansionPlan extract_plan(const milp::SolveResult& r) const;
  double eta(const milp::SolveResult& r) const { return r.value(plan_vars_.eta); }
  // Operating cost of scenario i's block in a solved master.
  double scenario_operating_cost(int i, const milp::SolveResult& r) const;
  const milp::ModelBuilder& model() const { return mb_; }

 private:
  const OperationalModelTemplate& tmpl_;
  milp::ModelBuilder mb_;
  PlanVars plan_vars_;
  std::vector<DeviationVector> scenarios_;
  std::vector<milp::LinExpr> scenario_costs_;
};

// Inner-loop master: maximize ξ over (u, λ_k, μ_k) subject to budget rows,
// per-cut dual feasibility, and ξ ≤ each cut's dual objective with the
// bilinear dual×u terms linearized exactly.
class InnerMaster {
 public:
  InnerMaster(const OperationalModelTemplate& tmpl, const ExpansionPlan& plan,
              double dual_bound);

  void add_cut(const std::vector<double>& z_pattern);
  int num_cuts() const { return cuts_; }

  struct Outcome {
    double xi = 0.0;
    DeviationVector u;
  };
  // Throws ConfigError if the model is unbounded (dual bound missing) and
  // requires at least one cut.
  Outcome solve(const milp::SolverConfig& config);

  const milp::ModelBuilder& model() const { return mb_; }

 private:
  const OperationalModelTemplate& tmpl_;
  DualizedOperational dual_;
  milp::ModelBuilder mb_;
  milp::VarId xi_;
  std::vector<milp::VarId> u_vars_;  // flat order
  double dual_bound_ = 0.0;
  int cuts_ = 0;
};

// Operational MILP for a fixed plan and deviation: convenience wrapper used
// by the inner loop and the oracles.
struct OperationalSolve {
  double cost = 0.0;
  std::vector<double> z_pattern;  // over built instances × days × hours
  milp::SolveResult raw;
  OperationalVars vars;
};
OperationalSolve solve_operational(const OperationalModelTemplate& tmpl,
                                   const ExpansionPlan& plan, const DeviationVector& u,
                                   const milp::SolverConfig& config);

}  // namespace tnep
