#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tnep/milp/model.hpp"

namespace tnep::milp {

enum class SolveStatus { Optimal, Infeasible, Unbounded, LimitReached };

const char* to_string(SolveStatus s);

struct SolverConfig {
  double mip_rel_gap = 1e-9;
  double mip_abs_gap = 1e-9;
  double feasibility_tolerance = 1e-9;
  double time_limit_seconds = kInfinity;
  int threads = 1;
  int random_seed = 0;
  bool log_to_console = false;
  // Path to an alternative solver shared library.  Empty means: use the
  // library named by the TNEP_SOLVER_LIB environment variable if set,
  // otherwise the built-in statically linked solver.
  std::string solver_library;
};

struct SolveStats {
  double wall_seconds = 0.0;
  double mip_gap = 0.0;
  std::int64_t simplex_iterations = 0;
  std::int64_t branch_nodes = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::LimitReached;
  double objective = std::nan("");
  std::vector<double> values;  // one entry per variable when a solution exists
  SolveStats stats;

  bool optimal() const { return status == SolveStatus::Optimal; }
  double value(VarId id) const { return values.at(static_cast<std::size_t>(id.index)); }
  // Rounds a binary/integer variable's value, refusing values far from any
  // integer so a drifting solve cannot be misread as a clean plan.
  std::int64_t integral_value(VarId id) const;
};

// Solves the model as-is.  Infeasible and unbounded outcomes come back as
// statuses; backend failures (load errors, numerical breakdown) throw
// SolverError.
SolveResult solve(const ModelBuilder& model, const SolverConfig& config = {});

// Version string of the backing solver, for diagnostics.
std::string solver_version(const SolverConfig& config = {});

}  // namespace tnep::milp
