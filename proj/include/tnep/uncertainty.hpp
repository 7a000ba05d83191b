#pragma once

#include <vector>

#include "tnep/milp/model.hpp"
#include "tnep/types.hpp"

namespace tnep {

// Demand levels and generator capacities after applying one deviation
// vector.  Hourly profile factors are not applied here; they multiply these
// values inside the operational model.
struct RealizedParameters {
  std::vector<double> demand_level_mw;        // per demand, case order
  std::vector<double> generator_capacity_mw;  // per generator, case order
};

// Throws ValidationError if the vector's shape does not match the case or a
// group exceeds its budget.
RealizedParameters realize(const PlanningCase& pc, const DeviationVector& u);

void check_deviation_shape(const PlanningCase& pc, const DeviationVector& u);

// Number of budget-feasible 0/1 deviation vectors, saturating at 2^62 to
// stay overflow-safe for comparison against enumeration caps.
unsigned long long vertex_count(const PlanningCase& pc);

// All budget-feasible vectors in lexicographic order (demand flags first,
// then conventional, then wind).  Guarded by a hard cap on the result size.
std::vector<DeviationVector> enumerate_vertices(const PlanningCase& pc,
                                                std::size_t max_vertices = 1u << 22);

struct BudgetRows {
  milp::RowId demand;
  milp::RowId conventional;
  milp::RowId wind;
};

// Adds the three cardinality rows over caller-created binary flag variables.
// Throws ValidationError when the variable groups do not match the case.
BudgetRows emit_budget_constraints(const PlanningCase& pc, milp::ModelBuilder& mb,
                                   const std::vector<milp::VarId>& demand_flags,
                                   const std::vector<milp::VarId>& conventional_flags,
                                   const std::vector<milp::VarId>& wind_flags);

}  // namespace tnep
