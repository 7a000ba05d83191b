#include "tnep/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace tnep {

namespace {

using nlohmann::json;

std::string money(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

// Quote a cell when it holds a delimiter; quotes inside double up.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json flags_to_json(const std::vector<std::uint8_t>& v) {
  json out = json::array();
  for (auto b : v) out.push_back(static_cast<int>(b));
  return out;
}

std::vector<std::uint8_t> flags_from_json(const json& j, const char* what) {
  std::vector<std::uint8_t> out;
  if (!j.is_array()) throw ParseError(std::string("report key '") + what + "' must be an array");
  for (const json& e : j) {
    const int v = e.get<int>();
    if (v != 0 && v != 1)
      throw ParseError(std::string("report key '") + what + "' holds a non-binary flag");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

// Plans serialize as objects; absent keys mean zero, matching ExpansionPlan.
std::map<std::string, int> counts_from_json(const json& j, const char* what) {
  std::map<std::string, int> out;
  if (!j.is_object()) throw ParseError(std::string("report key '") + what + "' must be an object");
  for (const auto& [key, val] : j.items()) out[key] = val.get<int>();
  return out;
}

}  // namespace

SolveReport make_report(const PlanningCase& pc, const RobustSolution& sol) {
  SolveReport r;
  r.case_name = pc.name;
  r.gamma_demand = pc.uncertainty.budget_demand;
  r.gamma_conventional = pc.uncertainty.budget_conventional;
  r.gamma_wind = pc.uncertainty.budget_wind;
  r.lines_built = sol.plan.lines_built;
  r.storage_built = sol.plan.storage_built;
  r.capital_cost = sol.capital_cost;
  r.annualized_capital_cost = annualize(sol.capital_cost, pc.economics);
  r.worst_case_operating_cost = sol.worst_case_operating_cost;
  r.total_annual_cost = sol.total_annual_cost;
  r.worst_case_u = sol.worst_case_u;
  r.outer_iterations = static_cast<int>(sol.log.outer.size());
  for (const OuterIterationRecord& rec : sol.log.outer)
    r.inner_iterations += static_cast<int>(rec.inner.size());
  r.wall_seconds = sol.log.total_seconds;
  return r;
}

std::string report_to_json(const SolveReport& r) {
  json j;
  j["case"] = r.case_name;
  j["gamma"] = {{"demand", r.gamma_demand},
                {"conventional", r.gamma_conventional},
                {"wind", r.gamma_wind}};
  j["lines_built"] = json(r.lines_built);
  j["storage_built"] = json(r.storage_built);
  j["capital_cost"] = r.capital_cost;
  j["annualized_capital_cost"] = r.annualized_capital_cost;
  j["worst_case_operating_cost"] = r.worst_case_operating_cost;
  j["total_annual_cost"] = r.total_annual_cost;
  j["worst_case_u"] = {{"demand", flags_to_json(r.worst_case_u.demand)},
                       {"conventional", flags_to_json(r.worst_case_u.conventional)},
                       {"wind", flags_to_json(r.worst_case_u.wind)}};
  j["outer_iterations"] = r.outer_iterations;
  j["inner_iterations"] = r.inner_iterations;
  j["wall_seconds"] = r.wall_seconds;
  return j.dump(2) + "\n";
}

SolveReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    SolveReport r;
    r.case_name = j.at("case").get<std::string>();
    const json& g = j.at("gamma");
    r.gamma_demand = g.at("demand").get<int>();
    r.gamma_conventional = g.at("conventional").get<int>();
    r.gamma_wind = g.at("wind").get<int>();
    r.lines_built = counts_from_json(j.at("lines_built"), "lines_built");
    r.storage_built = counts_from_json(j.at("storage_built"), "storage_built");
    r.capital_cost = j.at("capital_cost").get<double>();
    r.annualized_capital_cost = j.at("annualized_capital_cost").get<double>();
    r.worst_case_operating_cost = j.at("worst_case_operating_cost").get<double>();
    r.total_annual_cost = j.at("total_annual_cost").get<double>();
    const json& u = j.at("worst_case_u");
    r.worst_case_u.demand = flags_from_json(u.at("demand"), "worst_case_u.demand");
    r.worst_case_u.conventional =
        flags_from_json(u.at("conventional"), "worst_case_u.conventional");
    r.worst_case_u.wind = flags_from_json(u.at("wind"), "worst_case_u.wind");
    r.outer_iterations = j.at("outer_iterations").get<int>();
    r.inner_iterations = j.at("inner_iterations").get<int>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report is missing or mistypes a key: ") + e.what());
  }
}

namespace {

std::string plan_cell(const std::map<std::string, int>& counts) {
  if (counts.empty()) return "none";
  std::string out;
  for (const auto& [key, n] : counts) {
    if (!out.empty()) out += ' ';
    out += key + "x" + std::to_string(n);
  }
  return out;
}

}  // namespace

std::string report_to_csv(const SolveReport& r) {
  std::ostringstream out;
  out << "case,gamma_demand,gamma_conventional,gamma_wind,lines_built,storage_built,"
         "capital_cost,annualized_capital_cost,worst_case_operating_cost,"
         "total_annual_cost,worst_case_u,outer_iterations,inner_iterations,wall_seconds\n";
  out << csv_cell(r.case_name) << ',' << r.gamma_demand << ',' << r.gamma_conventional << ','
      << r.gamma_wind << ',' << plan_cell(r.lines_built) << ',' << plan_cell(r.storage_built)
      << ',' << money(r.capital_cost) << ',' << money(r.annualized_capital_cost) << ','
      << money(r.worst_case_operating_cost) << ',' << money(r.total_annual_cost) << ','
      << r.worst_case_u.to_string() << ',' << r.outer_iterations << ',' << r.inner_iterations
      << ',' << money(r.wall_seconds) << '\n';
  return out.str();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "clusters,days_used,capital_cost,total_annual_cost,outer_iterations,seconds,note\n";
  for (const SweepRow& row : rows) {
    out << row.clusters_requested << ',' << row.days_used << ',';
    if (row.note.empty())
      out << money(row.capital_cost) << ',' << money(row.total_annual_cost) << ','
          << row.outer_iterations << ',' << money(row.seconds) << ",\n";
    else
      out << ",,,," << csv_cell(row.note) << '\n';
  }
  return out.str();
}

}  // namespace tnep
