#include <atomic>
#include <thread>

#include "tnep/ccg.hpp"
#include "tnep/clustering.hpp"

namespace tnep {

namespace {

SweepRow run_point(const PlanningCase& case_template, const HourlySeries& series, int k,
                   unsigned seed, const CcgConfig& config) {
  SweepRow row;
  row.clusters_requested = k;
  try {
    PlanningCase pc = case_template;
    pc.representative_days = build_representative_days(series, k, seed);
    validate(pc);
    row.days_used = static_cast<int>(pc.representative_days.size());
    RobustSolution sol = solve_robust_tnep(pc, config);
    row.total_annual_cost = sol.total_annual_cost;
    row.capital_cost = sol.capital_cost;
    row.outer_iterations = static_cast<int>(sol.log.outer.size());
    row.seconds = sol.log.total_seconds;
  } catch (const Error& e) {
    row.note = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> stability_sweep(const PlanningCase& case_template,
                                      const HourlySeries& series,
                                      const std::vector<int>& cluster_counts,
                                      unsigned seed, const CcgConfig& config, int jobs) {
  if (jobs < 1) throw ConfigError("sweep jobs must be at least 1");
  std::vector<SweepRow> table(cluster_counts.size());
  if (table.empty()) return table;

  CcgConfig point_config = config;
  // Interleaved progress lines from concurrent points help nobody.
  if (jobs > 1) point_config.progress = nullptr;

  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < table.size(); i = cursor.fetch_add(1))
      table[i] = run_point(case_template, series, cluster_counts[i], seed, point_config);
  };

  if (jobs == 1) {
    work();
    return table;
  }
  std::vector<std::thread> pool;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), table.size());
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (std::thread& th : pool) th.join();
  return table;
}

}  // namespace tnep
