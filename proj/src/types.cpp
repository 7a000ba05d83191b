#include "tnep/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tnep {

int DeviationVector::total_flags() const {
  auto count = [](const std::vector<std::uint8_t>& v) {
    return static_cast<int>(std::count(v.begin(), v.end(), std::uint8_t{1}));
  };
  return count(demand) + count(conventional) + count(wind);
}

std::string DeviationVector::to_string() const {
  auto bits = [](const std::vector<std::uint8_t>& v) {
    std::string s;
    for (auto b : v) s += b ? '1' : '0';
    return s;
  };
  return "D:" + bits(demand) + "|G:" + bits(conventional) + "|W:" + bits(wind);
}

int PlanningCase::reference_bus() const {
  for (const Bus& b : buses)
    if (b.is_reference) return b.id;
  throw ValidationError("case has no reference bus");
}

int PlanningCase::bus_position(int bus_id) const {
  for (std::size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == bus_id) return static_cast<int>(i);
  throw ValidationError("unknown bus id " + std::to_string(bus_id));
}

int PlanningCase::hours_per_day() const {
  if (representative_days.empty())
    throw ValidationError("case has no representative days");
  const RepresentativeDay& d = representative_days.front();
  if (!d.demand_factor.empty()) return static_cast<int>(d.demand_factor.begin()->second.size());
  if (!d.wind_capacity_factor.empty())
    return static_cast<int>(d.wind_capacity_factor.begin()->second.size());
  throw ValidationError("representative day carries no profiles");
}

std::vector<int> PlanningCase::conventional_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].technology == Technology::Conventional) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> PlanningCase::wind_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].technology == Technology::Wind) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> PlanningCase::candidate_storage_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < storage_units.size(); ++i)
    if (storage_units[i].status == StorageStatus::Candidate) out.push_back(static_cast<int>(i));
  return out;
}

DeviationVector PlanningCase::nominal_deviation() const {
  DeviationVector u;
  u.demand.assign(demands.size(), 0);
  u.conventional.assign(conventional_indices().size(), 0);
  u.wind.assign(wind_indices().size(), 0);
  return u;
}

double PlanningCase::weight_sum_days() const {
  double s = 0.0;
  for (const RepresentativeDay& d : representative_days) s += d.weight_days;
  return s;
}

int ExpansionPlan::circuits(const std::string& corridor_key) const {
  auto it = lines_built.find(corridor_key);
  return it == lines_built.end() ? 0 : it->second;
}

int ExpansionPlan::storage_units(const std::string& storage_id) const {
  auto it = storage_built.find(storage_id);
  return it == storage_built.end() ? 0 : it->second;
}

PlanCost plan_capital_cost(const ExpansionPlan& plan, const PlanningCase& pc) {
  PlanCost out;
  for (const auto& [key, count] : plan.lines_built) {
    auto it = std::find_if(pc.corridors.begin(), pc.corridors.end(),
                           [&](const Corridor& c) { return c.key() == key; });
    if (it == pc.corridors.end())
      throw ValidationError("plan builds lines in unknown corridor " + key);
    if (count < 0 || it->existing_circuits + count > it->max_total_circuits)
      throw ValidationError("corridor " + key + " cannot take " +
                            std::to_string(count) + " new circuits");
    out.capital += count * it->circuit_capital_cost;
  }
  for (const auto& [id, count] : plan.storage_built) {
    auto it = std::find_if(pc.storage_units.begin(), pc.storage_units.end(),
                           [&](const StorageUnit& s) { return s.id == id; });
    if (it == pc.storage_units.end() || it->status != StorageStatus::Candidate)
      throw ValidationError("plan builds storage at unknown candidate " + id);
    if (count < 0 || count > it->max_buildable)
      throw ValidationError("storage candidate " + id + " cannot take " +
                            std::to_string(count) + " units");
    out.capital += count * it->unit_capital_cost;
  }
  out.within_budget = out.capital <= pc.economics.investment_budget + 1e-6;
  return out;
}

double annualize(double capital_cost, const EconomicParams& econ) {
  return econ.amortization_rate * capital_cost;
}

namespace {

void check(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace

void validate(const PlanningCase& pc) {
  check(!pc.buses.empty(), "case has no buses");
  std::set<int> bus_ids;
  int reference_count = 0;
  for (const Bus& b : pc.buses) {
    check(bus_ids.insert(b.id).second, "duplicate bus id " + std::to_string(b.id));
    reference_count += b.is_reference ? 1 : 0;
  }
  check(reference_count == 1, "case needs exactly one reference bus, has " +
                                  std::to_string(reference_count));
  check(pc.base_mva > 0.0, "base power must be positive");
  check(pc.max_angle_rad > 0.0, "angle limit must be positive");

  std::set<std::string> ids;
  for (const Generator& g : pc.generators) {
    check(ids.insert("g:" + g.id).second, "duplicate generator id " + g.id);
    check(bus_ids.count(g.bus) == 1, "generator " + g.id + " sits on unknown bus");
    check(g.nominal_capacity_mw >= 0.0, "generator " + g.id + " has negative capacity");
    check(g.operating_cost_per_mwh >= 0.0, "generator " + g.id + " has negative cost");
    if (g.technology == Technology::Wind)
      check(g.hourly_profile_ref.has_value(), "wind unit " + g.id + " lacks a profile");
    else
      check(!g.hourly_profile_ref.has_value(),
            "conventional unit " + g.id + " must not carry a profile");
  }

  for (const Demand& d : pc.demands) {
    check(ids.insert("d:" + d.id).second, "duplicate demand id " + d.id);
    check(bus_ids.count(d.bus) == 1, "demand " + d.id + " sits on unknown bus");
    check(d.nominal_level_mw >= 0.0, "demand " + d.id + " has negative level");
    check(d.shed_cost_per_mwh >= 0.0, "demand " + d.id + " has negative shed cost");
    check(d.hourly_profile_ref.has_value(), "demand " + d.id + " lacks a profile");
  }

  for (const StorageUnit& s : pc.storage_units) {
    check(ids.insert("s:" + s.id).second, "duplicate storage id " + s.id);
    check(bus_ids.count(s.bus) == 1, "storage " + s.id + " sits on unknown bus");
    check(s.max_energy_mwh >= 0.0, "storage " + s.id + " has negative energy capacity");
    check(s.initial_energy_mwh >= 0.0 && s.initial_energy_mwh <= s.max_energy_mwh,
          "storage " + s.id + " initial energy outside [0, max]");
    check(s.charge_cap_mw >= 0.0 && s.discharge_cap_mw >= 0.0,
          "storage " + s.id + " has negative power rating");
    check(s.charge_efficiency > 0.0 && s.charge_efficiency <= 1.0,
          "storage " + s.id + " charge efficiency outside (0, 1]");
    check(s.discharge_efficiency > 0.0 && s.discharge_efficiency <= 1.0,
          "storage " + s.id + " discharge efficiency outside (0, 1]");
    if (s.status == StorageStatus::Candidate) {
      check(s.max_buildable >= 1, "candidate storage " + s.id + " allows zero units");
      check(s.unit_capital_cost >= 0.0, "candidate storage " + s.id + " has negative cost");
    } else {
      check(s.max_buildable == 0, "existing storage " + s.id + " must not be buildable");
    }
  }

  std::set<std::pair<int, int>> corridor_pairs;
  for (const Corridor& c : pc.corridors) {
    check(c.from_bus != c.to_bus, "corridor " + c.key() + " loops on one bus");
    check(bus_ids.count(c.from_bus) == 1 && bus_ids.count(c.to_bus) == 1,
          "corridor " + c.key() + " touches an unknown bus");
    auto pair = std::minmax(c.from_bus, c.to_bus);
    check(corridor_pairs.insert({pair.first, pair.second}).second,
          "duplicate corridor between buses " + c.key());
    check(c.reactance_pu > 0.0, "corridor " + c.key() + " needs positive reactance");
    check(c.capacity_mw > 0.0, "corridor " + c.key() + " needs positive capacity");
    check(c.existing_circuits >= 0, "corridor " + c.key() + " has negative circuits");
    check(c.max_total_circuits >= c.existing_circuits,
          "corridor " + c.key() + " caps circuits below the existing count");
    check(c.circuit_capital_cost >= 0.0, "corridor " + c.key() + " has negative cost");
  }

  check(!pc.representative_days.empty(), "case has no representative days");
  check(std::abs(pc.weight_sum_days() - 365.0) <= 1e-6,
        "representative-day weights must sum to 365");
  const int hours = pc.hours_per_day();
  check(hours >= 1, "representative days need at least one hour");
  for (std::size_t di = 0; di < pc.representative_days.size(); ++di) {
    const RepresentativeDay& day = pc.representative_days[di];
    const std::string where = "representative day " + std::to_string(di);
    check(day.weight_days > 0.0, where + " has non-positive weight");
    for (const auto& [name, vals] : day.demand_factor) {
      check(static_cast<int>(vals.size()) == hours, where + " profile " + name +
                                                        " has the wrong hour count");
      for (double v : vals) check(v >= 0.0, where + " profile " + name + " dips negative");
    }
    for (const auto& [name, vals] : day.wind_capacity_factor) {
      check(static_cast<int>(vals.size()) == hours, where + " profile " + name +
                                                        " has the wrong hour count");
      for (double v : vals)
        check(v >= 0.0 && v <= 1.0, where + " capacity factor " + name + " outside [0, 1]");
    }
    for (const Demand& d : pc.demands)
      check(day.demand_factor.count(*d.hourly_profile_ref) == 1,
            where + " misses demand profile " + *d.hourly_profile_ref);
    for (const Generator& g : pc.generators)
      if (g.technology == Technology::Wind)
        check(day.wind_capacity_factor.count(*g.hourly_profile_ref) == 1,
              where + " misses wind profile " + *g.hourly_profile_ref);
  }

  check(pc.economics.amortization_rate >= 0.0 && pc.economics.amortization_rate <= 1.0,
        "amortization rate outside [0, 1]");
  check(pc.economics.investment_budget >= 0.0, "investment budget is negative");
  check(pc.economics.outer_tolerance > 0.0 && pc.economics.inner_tolerance > 0.0,
        "tolerances must be positive");

  const UncertaintySpec& u = pc.uncertainty;
  check(u.budget_demand >= 0 && u.budget_conventional >= 0 && u.budget_wind >= 0,
        "uncertainty budgets must be non-negative");
  check(u.demand_deviation >= 0.0, "demand deviation is negative");
  check(u.conventional_deviation >= 0.0 && u.conventional_deviation <= 1.0,
        "conventional deviation outside [0, 1]");
  check(u.wind_deviation >= 0.0 && u.wind_deviation <= 1.0,
        "wind deviation outside [0, 1]");
}

}  // namespace tnep
