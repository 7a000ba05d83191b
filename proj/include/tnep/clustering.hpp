#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tnep/types.hpp"

namespace tnep {

// A year (or any run) of hourly data for several named signals, sliced into
// days.  Demand signals hold fractions of nominal level, wind signals hold
// capacity factors.
struct HourlySeries {
  std::vector<std::string> names;
  std::vector<std::uint8_t> is_wind;  // parallel to names
  int hours_per_day = 0;
  // One flat vector per day, laid out signal-major: entry s*hours + h.
  std::vector<std::vector<double>> days;

  int num_days() const { return static_cast<int>(days.size()); }
  int num_signals() const { return static_cast<int>(names.size()); }
  double value(int day, int signal, int hour) const {
    return days[static_cast<std::size_t>(day)]
               [static_cast<std::size_t>(signal * hours_per_day + hour)];
  }
};

// Reads "day,hour,<signal ids...>" CSV.  Every id in demand_ids and wind_ids
// must appear in the header; kinds are assigned by membership.  Hours must
// run 0..H-1 within each day and days must be complete.
HourlySeries parse_hourly_csv(std::istream& in, const std::vector<std::string>& demand_ids,
                              const std::vector<std::string>& wind_ids);
HourlySeries load_hourly_csv(const std::string& path,
                             const std::vector<std::string>& demand_ids,
                             const std::vector<std::string>& wind_ids);

// K-means over whole days (each day one point, signals standardized), with
// the representative of each cluster chosen as its medoid in original units.
// Weights are cluster shares of a 365-day year, so they sum to 365.  If two
// centroids collapse onto identical day sets the survivors keep the weight,
// which can return fewer than k days.
std::vector<RepresentativeDay> build_representative_days(const HourlySeries& series,
                                                         int k, unsigned seed);

struct SweepRow {
  int clusters_requested = 0;
  int days_used = 0;
  double total_annual_cost = 0.0;
  double capital_cost = 0.0;
  int outer_iterations = 0;
  double seconds = 0.0;
  std::string note;  // empty on success, otherwise why the run was skipped
};

struct CcgConfig;  // ccg.hpp

// Re-clusters the series for each k, swaps the days into the case, and runs
// the robust solve, collecting one row per k.  A failed run records its
// reason in `note` instead of aborting the sweep.  Points run on up to
// `jobs` threads; above 1 the per-solve progress callback is dropped, and
// rows keep the order of `cluster_counts` either way.
std::vector<SweepRow> stability_sweep(const PlanningCase& case_template,
                                      const HourlySeries& series,
                                      const std::vector<int>& cluster_counts,
                                      unsigned seed, const CcgConfig& config, int jobs = 1);

}  // namespace tnep
