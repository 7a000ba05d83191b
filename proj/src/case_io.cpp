#include "tnep/case_io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tnep/clustering.hpp"

namespace tnep {

namespace {

using nlohmann::json;

const json& member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("key '") + what + "' has the wrong type");
  }
}

template <typename T>
T req(const json& j, const char* key) {
  return as<T>(member(j, key), key);
}

template <typename T>
T opt(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : as<T>(*it, key);
}

std::optional<std::string> opt_profile(const json& j) {
  auto it = j.find("profile");
  if (it == j.end()) return std::nullopt;
  return as<std::string>(*it, "profile");
}

std::map<std::string, std::vector<double>> profile_map(const json& j, const char* key) {
  std::map<std::string, std::vector<double>> out;
  if (!j.contains(key)) return out;
  const json& m = j.at(key);
  if (!m.is_object()) throw ParseError(std::string("key '") + key + "' must be an object");
  for (const auto& [name, vals] : m.items())
    out[name] = as<std::vector<double>>(vals, key);
  return out;
}

std::vector<RepresentativeDay> parse_days(const json& j) {
  std::vector<RepresentativeDay> out;
  for (const json& dj : as<std::vector<json>>(j, "days")) {
    RepresentativeDay day;
    day.weight_days = req<double>(dj, "weight_days");
    day.demand_factor = profile_map(dj, "demand_factor");
    day.wind_capacity_factor = profile_map(dj, "wind_capacity_factor");
    out.push_back(std::move(day));
  }
  return out;
}

std::vector<RepresentativeDay> days_from_csv(const json& rd, const PlanningCase& pc,
                                             const std::string& base_dir) {
  std::filesystem::path path = req<std::string>(rd, "hourly_csv");
  if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
  std::vector<std::string> demand_ids, wind_ids;
  for (const Demand& d : pc.demands) demand_ids.push_back(d.hourly_profile_ref.value_or(d.id));
  for (const Generator& g : pc.generators)
    if (g.technology == Technology::Wind)
      wind_ids.push_back(g.hourly_profile_ref.value_or(g.id));
  HourlySeries series = load_hourly_csv(path.string(), demand_ids, wind_ids);
  return build_representative_days(series, req<int>(rd, "clusters"),
                                   opt<unsigned>(rd, "seed", 0u));
}

}  // namespace

PlanningCase load_case(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("case document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("case document must be a JSON object");

  PlanningCase pc;
  pc.name = opt<std::string>(j, "name", "");
  pc.base_mva = opt<double>(j, "base_mva", 100.0);
  pc.max_angle_rad = opt<double>(j, "max_angle_rad", std::numbers::pi);

  for (const json& bj : as<std::vector<json>>(member(j, "buses"), "buses")) {
    Bus b;
    b.id = req<int>(bj, "id");
    b.is_reference = opt<bool>(bj, "reference", false);
    pc.buses.push_back(b);
  }

  for (const json& gj : as<std::vector<json>>(member(j, "generators"), "generators")) {
    Generator g;
    g.id = req<std::string>(gj, "id");
    g.bus = req<int>(gj, "bus");
    const std::string tech = req<std::string>(gj, "technology");
    if (tech == "conventional")
      g.technology = Technology::Conventional;
    else if (tech == "wind")
      g.technology = Technology::Wind;
    else
      throw ParseError("generator " + g.id + " has unknown technology '" + tech + "'");
    g.nominal_capacity_mw = req<double>(gj, "nominal_capacity_mw");
    g.operating_cost_per_mwh = req<double>(gj, "operating_cost_per_mwh");
    g.hourly_profile_ref = opt_profile(gj);
    if (g.technology == Technology::Wind && !g.hourly_profile_ref)
      g.hourly_profile_ref = g.id;
    pc.generators.push_back(std::move(g));
  }

  for (const json& cj : as<std::vector<json>>(member(j, "corridors"), "corridors")) {
    Corridor c;
    c.from_bus = req<int>(cj, "from");
    c.to_bus = req<int>(cj, "to");
    c.reactance_pu = req<double>(cj, "reactance_pu");
    c.capacity_mw = req<double>(cj, "capacity_mw");
    c.existing_circuits = opt<int>(cj, "existing", 0);
    c.max_total_circuits = req<int>(cj, "max_total");
    c.circuit_capital_cost = req<double>(cj, "circuit_capital_cost");
    pc.corridors.push_back(c);
  }

  if (j.contains("storage")) {
    for (const json& sj : as<std::vector<json>>(j.at("storage"), "storage")) {
      StorageUnit s;
      s.id = req<std::string>(sj, "id");
      s.bus = req<int>(sj, "bus");
      const std::string status = req<std::string>(sj, "status");
      if (status == "existing")
        s.status = StorageStatus::Existing;
      else if (status == "candidate")
        s.status = StorageStatus::Candidate;
      else
        throw ParseError("storage " + s.id + " has unknown status '" + status + "'");
      s.max_energy_mwh = req<double>(sj, "max_energy_mwh");
      s.initial_energy_mwh = req<double>(sj, "initial_energy_mwh");
      s.charge_cap_mw = req<double>(sj, "charge_cap_mw");
      s.discharge_cap_mw = req<double>(sj, "discharge_cap_mw");
      s.charge_efficiency = req<double>(sj, "charge_efficiency");
      s.discharge_efficiency = req<double>(sj, "discharge_efficiency");
      if (s.status == StorageStatus::Candidate) {
        s.max_buildable = req<int>(sj, "max_buildable");
        s.unit_capital_cost = req<double>(sj, "unit_capital_cost");
      }
      pc.storage_units.push_back(std::move(s));
    }
  }

  for (const json& dj : as<std::vector<json>>(member(j, "demands"), "demands")) {
    Demand d;
    d.id = req<std::string>(dj, "id");
    d.bus = req<int>(dj, "bus");
    d.nominal_level_mw = req<double>(dj, "nominal_level_mw");
    d.shed_cost_per_mwh = req<double>(dj, "shed_cost_per_mwh");
    d.hourly_profile_ref = opt_profile(dj);
    if (!d.hourly_profile_ref) d.hourly_profile_ref = d.id;
    pc.demands.push_back(std::move(d));
  }

  const json& rd = member(j, "representative_days");
  if (rd.contains("days"))
    pc.representative_days = parse_days(member(rd, "days"));
  else if (rd.contains("hourly_csv"))
    pc.representative_days = days_from_csv(rd, pc, base_dir);
  else
    throw ParseError("representative_days needs either 'days' or 'hourly_csv'");

  const json& ej = member(j, "economics");
  pc.economics.amortization_rate = req<double>(ej, "amortization_rate");
  pc.economics.investment_budget = req<double>(ej, "investment_budget");
  pc.economics.outer_tolerance = opt<double>(ej, "outer_tolerance", 1e-6);
  pc.economics.inner_tolerance = opt<double>(ej, "inner_tolerance", 1e-6);

  const json& uj = member(j, "uncertainty");
  pc.uncertainty.budget_demand = opt<int>(uj, "budget_demand", 0);
  pc.uncertainty.budget_conventional = opt<int>(uj, "budget_conventional", 0);
  pc.uncertainty.budget_wind = opt<int>(uj, "budget_wind", 0);
  pc.uncertainty.demand_deviation = opt<double>(uj, "demand_deviation", 0.20);
  pc.uncertainty.conventional_deviation = opt<double>(uj, "conventional_deviation", 0.50);
  pc.uncertainty.wind_deviation = opt<double>(uj, "wind_deviation", 0.50);

  validate(pc);
  return pc;
}

PlanningCase load_case_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open case file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_case(buf.str(), std::filesystem::path(path).parent_path().string());
}

std::string serialize_case(const PlanningCase& pc) {
  json j;
  if (!pc.name.empty()) j["name"] = pc.name;
  j["base_mva"] = pc.base_mva;
  j["max_angle_rad"] = pc.max_angle_rad;

  j["buses"] = json::array();
  for (const Bus& b : pc.buses) {
    json bj{{"id", b.id}};
    if (b.is_reference) bj["reference"] = true;
    j["buses"].push_back(bj);
  }

  j["generators"] = json::array();
  for (const Generator& g : pc.generators) {
    json gj{{"id", g.id},
            {"bus", g.bus},
            {"technology", g.technology == Technology::Wind ? "wind" : "conventional"},
            {"nominal_capacity_mw", g.nominal_capacity_mw},
            {"operating_cost_per_mwh", g.operating_cost_per_mwh}};
    if (g.hourly_profile_ref) gj["profile"] = *g.hourly_profile_ref;
    j["generators"].push_back(gj);
  }

  j["corridors"] = json::array();
  for (const Corridor& c : pc.corridors)
    j["corridors"].push_back(json{{"from", c.from_bus},
                                  {"to", c.to_bus},
                                  {"reactance_pu", c.reactance_pu},
                                  {"capacity_mw", c.capacity_mw},
                                  {"existing", c.existing_circuits},
                                  {"max_total", c.max_total_circuits},
                                  {"circuit_capital_cost", c.circuit_capital_cost}});

  j["storage"] = json::array();
  for (const StorageUnit& s : pc.storage_units) {
    json sj{{"id", s.id},
            {"bus", s.bus},
            {"status", s.status == StorageStatus::Candidate ? "candidate" : "existing"},
            {"max_energy_mwh", s.max_energy_mwh},
            {"initial_energy_mwh", s.initial_energy_mwh},
            {"charge_cap_mw", s.charge_cap_mw},
            {"discharge_cap_mw", s.discharge_cap_mw},
            {"charge_efficiency", s.charge_efficiency},
            {"discharge_efficiency", s.discharge_efficiency}};
    if (s.status == StorageStatus::Candidate) {
      sj["max_buildable"] = s.max_buildable;
      sj["unit_capital_cost"] = s.unit_capital_cost;
    }
    j["storage"].push_back(sj);
  }

  j["demands"] = json::array();
  for (const Demand& d : pc.demands) {
    json dj{{"id", d.id},
            {"bus", d.bus},
            {"nominal_level_mw", d.nominal_level_mw},
            {"shed_cost_per_mwh", d.shed_cost_per_mwh}};
    if (d.hourly_profile_ref) dj["profile"] = *d.hourly_profile_ref;
    j["demands"].push_back(dj);
  }

  json days = json::array();
  for (const RepresentativeDay& day : pc.representative_days) {
    json dj{{"weight_days", day.weight_days}};
    dj["demand_factor"] = day.demand_factor;
    dj["wind_capacity_factor"] = day.wind_capacity_factor;
    days.push_back(dj);
  }
  j["representative_days"] = json{{"days", days}};

  j["economics"] = json{{"amortization_rate", pc.economics.amortization_rate},
                        {"investment_budget", pc.economics.investment_budget},
                        {"outer_tolerance", pc.economics.outer_tolerance},
                        {"inner_tolerance", pc.economics.inner_tolerance}};

  j["uncertainty"] = json{{"budget_demand", pc.uncertainty.budget_demand},
                          {"budget_conventional", pc.uncertainty.budget_conventional},
                          {"budget_wind", pc.uncertainty.budget_wind},
                          {"demand_deviation", pc.uncertainty.demand_deviation},
                          {"conventional_deviation", pc.uncertainty.conventional_deviation},
                          {"wind_deviation", pc.uncertainty.wind_deviation}};

  return j.dump(2) + "\n";
}

}  // namespace tnep
