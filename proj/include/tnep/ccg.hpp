#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tnep/formulation.hpp"
#include "tnep/types.hpp"

namespace tnep {

// Internal solves close the bound gap to 1e-6, so the relative MIP gap is
// disabled in favour of an absolute one; a relative 1e-9 at a 1e5-scale
// objective would already exceed the target.
inline milp::SolverConfig tight_solver_defaults() {
  milp::SolverConfig c;
  c.mip_rel_gap = 0.0;
  c.mip_abs_gap = 1e-9;
  return c;
}

struct CcgConfig {
  // Bound-gap targets; unset means: take them from the case's economics.
  std::optional<double> outer_tolerance;
  std::optional<double> inner_tolerance;
  int max_outer_iterations = 50;
  int max_inner_iterations = 200;
  double time_limit_seconds = milp::kInfinity;
  // Cap on |λ| and μ in the inner master; 0 derives default_dual_bound from
  // the case, anything else is used as given (infinity is a ConfigError).
  double dual_bound = 0.0;
  // Diagnostic: drop the charge/discharge exclusivity binaries to continuous
  // [0,1].  The recourse becomes an LP and the inner loop collapses to a
  // single exact dual cut per plan.
  bool relax_mode_binaries = false;
  double big_m_scale = 1.0;
  milp::SolverConfig solver = tight_solver_defaults();
  // Called with one line per completed solve step when set.
  std::function<void(const std::string&)> progress;
};

struct InnerIterationRecord {
  int iteration = 0;  // 1-based
  double lower = 0.0;
  double upper = 0.0;
  double subproblem_cost = 0.0;        // operational optimum at `scenario`
  DeviationVector scenario;            // the u this iteration evaluated
  std::vector<double> mode_pattern;    // its optimal z, built units × day × hour
  double subproblem_seconds = 0.0;
  double master_seconds = 0.0;
};

struct OuterIterationRecord {
  int iteration = 0;  // 1-based
  double lower = 0.0;
  double upper = 0.0;
  ExpansionPlan plan;
  DeviationVector next_scenario;  // worst case found for `plan`
  double plan_worst_cost = 0.0;   // inner-loop upper bound for `plan`
  std::vector<InnerIterationRecord> inner;
  double master_seconds = 0.0;
};

struct IterationLog {
  std::vector<OuterIterationRecord> outer;
  double total_seconds = 0.0;
};

struct RobustSolution {
  ExpansionPlan plan;
  DeviationVector worst_case_u;
  double capital_cost = 0.0;
  double worst_case_operating_cost = 0.0;
  // Annualized capital plus the plan's worst-case annual operating cost.
  double total_annual_cost = 0.0;
  IterationLog log;
};

struct InnerLoopResult {
  double upper = 0.0;             // converged worst-case cost bound
  DeviationVector next_scenario;  // maximizer, fed back to the outer master
  std::vector<InnerIterationRecord> records;
};

// Worst-case search for a fixed plan: alternates the operational subproblem
// (lower bound, new z pattern) with the dualized cut master (upper bound,
// new u) until the gap closes.
InnerLoopResult inner_loop(const OperationalModelTemplate& tmpl, const ExpansionPlan& plan,
                           double tolerance, double dual_bound, const CcgConfig& config = {});

// Full nested column-and-constraint generation run.  Throws
// ConvergenceError with the final bounds when an iteration or time limit is
// hit first.
RobustSolution solve_robust_tnep(const PlanningCase& pc, const CcgConfig& config = {});

}  // namespace tnep
