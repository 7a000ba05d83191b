#pragma once

#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tnep/errors.hpp"

namespace tnep {

struct Bus {
  int id = 0;
  bool is_reference = false;
  friend bool operator==(const Bus&, const Bus&) = default;
};

enum class Technology { Conventional, Wind };

struct Generator {
  std::string id;
  int bus = 0;
  Technology technology = Technology::Conventional;
  double nominal_capacity_mw = 0.0;
  double operating_cost_per_mwh = 0.0;
  // Names a wind capacity-factor profile in the representative days.
  // Conventional units must not carry one.
  std::optional<std::string> hourly_profile_ref;
  friend bool operator==(const Generator&, const Generator&) = default;
};

enum class StorageStatus { Existing, Candidate };

struct StorageUnit {
  std::string id;
  int bus = 0;
  StorageStatus status = StorageStatus::Existing;
  double max_energy_mwh = 0.0;
  double initial_energy_mwh = 0.0;
  double charge_cap_mw = 0.0;
  double discharge_cap_mw = 0.0;
  double charge_efficiency = 1.0;
  double discharge_efficiency = 1.0;
  // Candidate-only fields; an existing unit keeps the defaults.
  int max_buildable = 0;
  double unit_capital_cost = 0.0;
  friend bool operator==(const StorageUnit&, const StorageUnit&) = default;
};

struct Demand {
  std::string id;
  int bus = 0;
  double nominal_level_mw = 0.0;
  double shed_cost_per_mwh = 0.0;
  std::optional<std::string> hourly_profile_ref;
  friend bool operator==(const Demand&, const Demand&) = default;
};

// A transmission corridor between two buses.  All circuits in the corridor
// share reactance, rating, and build cost.
struct Corridor {
  int from_bus = 0;
  int to_bus = 0;
  double reactance_pu = 0.0;
  double capacity_mw = 0.0;
  int existing_circuits = 0;
  int max_total_circuits = 0;
  double circuit_capital_cost = 0.0;

  std::string key() const {
    return std::to_string(from_bus) + "-" + std::to_string(to_bus);
  }
  friend bool operator==(const Corridor&, const Corridor&) = default;
};

// One clustered day: a weight in days per year plus hourly shapes keyed by
// profile name.  Demand entries are fractions of the nominal level, wind
// entries are capacity factors.
struct RepresentativeDay {
  double weight_days = 0.0;
  std::map<std::string, std::vector<double>> demand_factor;
  std::map<std::string, std::vector<double>> wind_capacity_factor;
  friend bool operator==(const RepresentativeDay&, const RepresentativeDay&) = default;
};

struct EconomicParams {
  // Fraction of capital cost charged per year.
  double amortization_rate = 0.0;
  // Cap on total (un-annualized) capital spending, in the case's money unit.
  double investment_budget = 0.0;
  double outer_tolerance = 1e-6;
  double inner_tolerance = 1e-6;
  friend bool operator==(const EconomicParams&, const EconomicParams&) = default;
};

// Budgeted interval uncertainty: each flagged demand rises by its deviation
// fraction, each flagged unit's capacity falls by its deviation fraction,
// and at most budget_* entries per group may be flagged at once.
struct UncertaintySpec {
  int budget_demand = 0;
  int budget_conventional = 0;
  int budget_wind = 0;
  double demand_deviation = 0.20;
  double conventional_deviation = 0.50;
  double wind_deviation = 0.50;
  friend bool operator==(const UncertaintySpec&, const UncertaintySpec&) = default;
};

// One vertex of the uncertainty set: a 0/1 flag per demand, per conventional
// unit, and per wind unit, in case order.
struct DeviationVector {
  std::vector<std::uint8_t> demand;
  std::vector<std::uint8_t> conventional;
  std::vector<std::uint8_t> wind;

  int total_flags() const;
  std::string to_string() const;
  friend bool operator==(const DeviationVector&, const DeviationVector&) = default;
  friend auto operator<=>(const DeviationVector&, const DeviationVector&) = default;
};

struct PlanningCase {
  std::string name;
  std::vector<Bus> buses;
  std::vector<Generator> generators;
  std::vector<StorageUnit> storage_units;
  std::vector<Demand> demands;
  std::vector<Corridor> corridors;
  std::vector<RepresentativeDay> representative_days;
  EconomicParams economics;
  UncertaintySpec uncertainty;
  double base_mva = 100.0;
  double max_angle_rad = std::numbers::pi;

  int reference_bus() const;
  int bus_position(int bus_id) const;  // throws ValidationError if unknown
  int hours_per_day() const;
  std::vector<int> conventional_indices() const;
  std::vector<int> wind_indices() const;
  std::vector<int> candidate_storage_indices() const;
  DeviationVector nominal_deviation() const;  // all-zero flags
  double weight_sum_days() const;

  friend bool operator==(const PlanningCase&, const PlanningCase&) = default;
};

// Chosen investments: new circuits per corridor key "from-to" and new unit
// counts per candidate storage id.  Absent keys mean zero.
struct ExpansionPlan {
  std::map<std::string, int> lines_built;
  std::map<std::string, int> storage_built;

  int circuits(const std::string& corridor_key) const;
  int storage_units(const std::string& storage_id) const;
  bool empty() const { return lines_built.empty() && storage_built.empty(); }
  friend bool operator==(const ExpansionPlan&, const ExpansionPlan&) = default;
  friend auto operator<=>(const ExpansionPlan&, const ExpansionPlan&) = default;
};

struct PlanCost {
  double capital = 0.0;
  bool within_budget = true;
};

// Total capital cost of a plan; throws ValidationError on unknown corridor
// keys or storage ids, or counts outside the buildable range.
PlanCost plan_capital_cost(const ExpansionPlan& plan, const PlanningCase& pc);

// Capital cost to an equivalent annual charge.
double annualize(double capital_cost, const EconomicParams& econ);

// Structural checks; throws ValidationError with the first problem found.
void validate(const PlanningCase& pc);

}  // namespace tnep
