#pragma once

#include <cstddef>

#include "tnep/ccg.hpp"
#include "tnep/types.hpp"

namespace tnep {

// Desk-scale instances used for independent verification.  Each solves in
// well under a second, so brute force over every uncertainty vertex and the
// all-vertex extensive form stay cheap.

// One candidate corridor, one conventional unit, one demand, one candidate
// storage site, a single 4-hour representative day.
PlanningCase two_bus_toy();

// Adds a wind unit, an existing storage unit, and a loop of corridors so
// that flows are governed by angle differences rather than a radial tree.
PlanningCase three_bus_toy();

// Demonstration instance for the charge/discharge exclusivity binaries: a
// congested triangle where free upstream generation is bottled up, so a
// relaxed storage unit dissipates energy (charging and discharging in the
// same hour) to act as a dump load at the relief bus.  With binaries
// enforced the dump is limited by the energy capacity and the cost is
// strictly higher.
PlanningCase relax_demo();

// Truncates a case to its first `max_days` representative days and the
// first `hours_per_day` hours of each, rescaling weights to keep their
// 365-day sum.  Used to shrink full cases to oracle scale.
PlanningCase reduce_case(const PlanningCase& pc, int max_days, int hours_per_day);

struct WorstCase {
  double cost = 0.0;
  DeviationVector u;
};

// Exhaustive worst case for a fixed plan: one operational solve per
// uncertainty vertex, ties broken toward the lexicographically smallest u.
// Throws ConfigError when the vertex count exceeds `max_vertices`.
WorstCase brute_force_worst_case(const PlanningCase& pc, const ExpansionPlan& plan,
                                 const milp::SolverConfig& config = tight_solver_defaults(),
                                 std::size_t max_vertices = 4096);

// Globally optimal robust plan via the deterministic equivalent: one MILP
// holding an operational copy for every uncertainty vertex.  The returned
// log is empty; this is the ground truth the iterative algorithm is checked
// against.
RobustSolution extensive_form(const PlanningCase& pc,
                              const milp::SolverConfig& config = tight_solver_defaults(),
                              std::size_t max_vertices = 4096);

}  // namespace tnep
