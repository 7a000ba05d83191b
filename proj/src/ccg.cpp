#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "tnep/ccg.hpp"

namespace tnep {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void emit_progress(const CcgConfig& config, const std::string& line) {
  if (config.progress) config.progress(line);
}

// Remaining solve budget, or a ConvergenceError once it is spent.
milp::SolverConfig budgeted(const CcgConfig& config, Clock::time_point start,
                            double lower, double upper) {
  milp::SolverConfig s = config.solver;
  if (std::isfinite(config.time_limit_seconds)) {
    const double left = config.time_limit_seconds - seconds_since(start);
    if (left <= 0.0)
      throw ConvergenceError("time limit reached before the bound gap closed", lower, upper);
    s.time_limit_seconds = std::min(s.time_limit_seconds, left);
  }
  return s;
}

std::vector<int> rounded_pattern(const std::vector<double>& z) {
  std::vector<int> out;
  out.reserve(z.size());
  for (double v : z) out.push_back(v > 0.5 ? 1 : 0);
  return out;
}

std::string format_bounds(double lower, double upper) {
  std::ostringstream os;
  os.precision(10);
  os << "LB=" << lower << " UB=" << upper;
  return os.str();
}

InnerLoopResult run_inner_loop(const OperationalModelTemplate& tmpl,
                               const ExpansionPlan& plan, double tolerance,
                               double dual_bound, const CcgConfig& config,
                               Clock::time_point start) {
  const bool relaxed = tmpl.options().relax_mode_binaries;
  InnerMaster master(tmpl, plan, dual_bound);

  double lower = -milp::kInfinity;
  double upper = milp::kInfinity;
  DeviationVector u = tmpl.planning_case().nominal_deviation();
  std::set<std::pair<DeviationVector, std::vector<int>>> seen;
  InnerLoopResult result;

  for (int l = 1; l <= config.max_inner_iterations; ++l) {
    InnerIterationRecord rec;
    rec.iteration = l;
    rec.scenario = u;

    OperationalSolve sub =
        solve_operational(tmpl, plan, u, budgeted(config, start, lower, upper));
    rec.subproblem_cost = sub.cost;
    rec.subproblem_seconds = sub.raw.stats.wall_seconds;
    rec.mode_pattern = sub.z_pattern;
    lower = std::max(lower, sub.cost);

    // Progress guarantee: a (u, z) pair that repeats can only reproduce an
    // existing cut, so the loop would cycle without moving the bounds.
    const std::vector<int> pattern = relaxed ? std::vector<int>{} : rounded_pattern(sub.z_pattern);
    if (!seen.insert({u, pattern}).second)
      throw ConvergenceError("inner loop revisited a (u, z) pair without closing the gap",
                             lower, upper);

    std::vector<double> cut_pattern(pattern.begin(), pattern.end());
    master.add_cut(cut_pattern);
    InnerMaster::Outcome best = master.solve(budgeted(config, start, lower, upper));
    // Every cut master optimum bounds the worst case, so the best one seen
    // stands; taking the min also keeps solver-gap noise out of the trace.
    upper = std::min(upper, best.xi);

    rec.lower = lower;
    rec.upper = upper;
    result.records.push_back(rec);
    emit_progress(config, "  inner " + std::to_string(l) + ": " + format_bounds(lower, upper));

    if (upper - lower < tolerance) {
      result.upper = upper;
      result.next_scenario = best.u;
      return result;
    }
    u = best.u;
  }
  throw ConvergenceError("inner loop hit its iteration limit", lower, upper);
}

}  // namespace

InnerLoopResult inner_loop(const OperationalModelTemplate& tmpl, const ExpansionPlan& plan,
                           double tolerance, double dual_bound, const CcgConfig& config) {
  return run_inner_loop(tmpl, plan, tolerance, dual_bound, config, Clock::now());
}

RobustSolution solve_robust_tnep(const PlanningCase& pc, const CcgConfig& config) {
  validate(pc);
  const Clock::time_point start = Clock::now();
  const double tol_outer = config.outer_tolerance.value_or(pc.economics.outer_tolerance);
  const double tol_inner = config.inner_tolerance.value_or(pc.economics.inner_tolerance);
  if (!(tol_outer > 0.0) || !(tol_inner > 0.0))
    throw ConfigError("bound-gap tolerances must be positive");
  const double dual_bound = config.dual_bound == 0.0 ? default_dual_bound(pc) : config.dual_bound;

  FormulationOptions fopts;
  fopts.relax_mode_binaries = config.relax_mode_binaries;
  fopts.big_m_scale = config.big_m_scale;
  const OperationalModelTemplate tmpl(pc, fopts);

  MasterModel master(tmpl);
  std::vector<DeviationVector> scenarios{pc.nominal_deviation()};
  master.add_scenario(scenarios.front());

  double lower = -milp::kInfinity;
  double upper = milp::kInfinity;
  RobustSolution best;

  for (int j = 1; j <= config.max_outer_iterations; ++j) {
    OuterIterationRecord rec;
    rec.iteration = j;

    milp::SolveResult mr = master.solve(budgeted(config, start, lower, upper));
    rec.master_seconds = mr.stats.wall_seconds;
    // The master only gains scenario blocks, so its optimum cannot drop; a
    // dip in the returned objective is solver-gap noise and is ignored.
    lower = std::max(lower, mr.objective);
    const ExpansionPlan plan = master.extract_plan(mr);
    rec.plan = plan;
    emit_progress(config, "outer " + std::to_string(j) + " master: " + format_bounds(lower, upper));

    InnerLoopResult inner =
        run_inner_loop(tmpl, plan, tol_inner, dual_bound, config, start);
    rec.inner = std::move(inner.records);
    rec.next_scenario = inner.next_scenario;
    rec.plan_worst_cost = inner.upper;

    const double capital = plan_capital_cost(plan, pc).capital;
    const double candidate = annualize(capital, pc.economics) + inner.upper;
    if (candidate < upper) {
      upper = candidate;
      best.plan = plan;
      best.worst_case_u = inner.next_scenario;
      best.capital_cost = capital;
      best.worst_case_operating_cost = inner.upper;
      best.total_annual_cost = candidate;
    }

    rec.lower = lower;
    rec.upper = upper;
    best.log.outer.push_back(rec);
    emit_progress(config, "outer " + std::to_string(j) + ": " + format_bounds(lower, upper));

    if (upper - lower < tol_outer) {
      best.log.total_seconds = seconds_since(start);
      return best;
    }

    for (const DeviationVector& s : scenarios)
      if (s == inner.next_scenario)
        throw ConvergenceError(
            "worst-case scenario " + s.to_string() + " repeated without closing the gap",
            lower, upper);
    scenarios.push_back(inner.next_scenario);
    master.add_scenario(inner.next_scenario);
  }
  throw ConvergenceError("outer loop hit its iteration limit", lower, upper);
}

}  // namespace tnep
