#pragma once

#include <map>
#include <string>
#include <vector>

#include "tnep/ccg.hpp"
#include "tnep/clustering.hpp"
#include "tnep/types.hpp"

namespace tnep {

// Flat result of one robust solve, the column set of the solve command:
// what was built, what it costs, the adversarial realization, and how hard
// the algorithm had to work.  Money in 10^3 EUR, like the case files.
struct SolveReport {
  std::string case_name;
  int gamma_demand = 0;
  int gamma_conventional = 0;
  int gamma_wind = 0;
  std::map<std::string, int> lines_built;
  std::map<std::string, int> storage_built;
  double capital_cost = 0.0;
  double annualized_capital_cost = 0.0;
  double worst_case_operating_cost = 0.0;
  double total_annual_cost = 0.0;
  DeviationVector worst_case_u;
  int outer_iterations = 0;
  int inner_iterations = 0;  // summed over outer iterations
  double wall_seconds = 0.0;

  friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

SolveReport make_report(const PlanningCase& pc, const RobustSolution& sol);

// JSON round-trip: report_from_json(report_to_json(r)) == r.  Timing is the
// only field expected to differ between otherwise identical runs.
std::string report_to_json(const SolveReport& r);
SolveReport report_from_json(const std::string& text);

// One header line plus one data row; money printed with one decimal.
std::string report_to_csv(const SolveReport& r);

// Stability-sweep table: one row per requested cluster count.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace tnep
