// Command-line front end: solve a case, sweep cluster counts or budgets,
// re-cluster a case's hourly data, or verify the solver against the
// brute-force oracles.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tnep/case_io.hpp"
#include "tnep/ccg.hpp"
#include "tnep/clustering.hpp"
#include "tnep/oracle.hpp"
#include "tnep/report.hpp"
#include "tnep/uncertainty.hpp"

namespace {

// Exit codes, one per failure family so scripts can tell them apart.
constexpr int kExitOk = 0;
constexpr int kExitVerifyMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitSolver = 4;
constexpr int kExitConvergence = 5;
constexpr int kExitConfig = 6;

struct SolveFlags {
  std::string case_path;
  std::optional<int> gamma_d, gamma_g, gamma_w;
  std::optional<double> budget;
  std::optional<double> tol_outer, tol_inner;
  double time_limit = 0.0;  // 0 = unlimited
  double mip_gap = -1.0;    // <0 = keep the tight default
  int threads = 1;
  int seed = 0;
  bool relax_z = false;
  bool progress = false;
  std::string out_path;
  std::string format = "json";
};

void apply_overrides(tnep::PlanningCase& pc, const SolveFlags& f) {
  if (f.gamma_d) pc.uncertainty.budget_demand = *f.gamma_d;
  if (f.gamma_g) pc.uncertainty.budget_conventional = *f.gamma_g;
  if (f.gamma_w) pc.uncertainty.budget_wind = *f.gamma_w;
  if (f.budget) pc.economics.investment_budget = *f.budget;
}

tnep::CcgConfig make_config(const SolveFlags& f) {
  tnep::CcgConfig config;
  config.outer_tolerance = f.tol_outer;
  config.inner_tolerance = f.tol_inner;
  if (f.time_limit > 0.0) config.time_limit_seconds = f.time_limit;
  config.relax_mode_binaries = f.relax_z;
  if (f.mip_gap >= 0.0) {
    config.solver.mip_rel_gap = f.mip_gap;
    config.solver.mip_abs_gap = f.mip_gap;
  }
  config.solver.threads = f.threads;
  config.solver.random_seed = f.seed;
  if (f.progress)
    config.progress = [](const std::string& line) { std::cerr << line << '\n'; };
  return config;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw tnep::ConfigError("cannot open output file '" + out_path + "'");
  out << text;
}

// The K-axis sweep needs the raw hourly series the case was clustered from,
// so peek at the document for its CSV reference.
std::string case_csv_path(const std::string& case_path) {
  std::ifstream in(case_path);
  if (!in) throw tnep::ParseError("cannot open case file '" + case_path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw tnep::ParseError(std::string("case document is not valid JSON: ") + e.what());
  }
  if (!j.contains("representative_days") || !j["representative_days"].contains("hourly_csv"))
    throw tnep::ConfigError(
        "the case inlines its representative days; clustering needs an "
        "hourly_csv reference (or pass --hourly-csv)");
  std::filesystem::path p = j["representative_days"]["hourly_csv"].get<std::string>();
  if (p.is_relative()) p = std::filesystem::path(case_path).parent_path() / p;
  return p.string();
}

tnep::HourlySeries load_series_for(const tnep::PlanningCase& pc, const std::string& csv_path) {
  std::vector<std::string> demand_ids, wind_ids;
  for (const tnep::Demand& d : pc.demands) demand_ids.push_back(d.hourly_profile_ref.value_or(d.id));
  for (const tnep::Generator& g : pc.generators)
    if (g.technology == tnep::Technology::Wind)
      wind_ids.push_back(g.hourly_profile_ref.value_or(g.id));
  return tnep::load_hourly_csv(csv_path, demand_ids, wind_ids);
}

int cmd_solve(const SolveFlags& f) {
  tnep::PlanningCase pc = tnep::load_case_file(f.case_path);
  apply_overrides(pc, f);
  tnep::validate(pc);
  tnep::RobustSolution sol = tnep::solve_robust_tnep(pc, make_config(f));
  tnep::SolveReport report = tnep::make_report(pc, sol);
  write_output(f.format == "csv" ? tnep::report_to_csv(report) : tnep::report_to_json(report),
               f.out_path);
  return kExitOk;
}

std::vector<std::array<int, 3>> parse_budget_axis(const std::string& spec) {
  std::vector<std::array<int, 3>> out;
  std::istringstream points(spec);
  std::string point;
  while (std::getline(points, point, ';')) {
    std::array<int, 3> gamma{};
    char sep1 = 0, sep2 = 0;
    std::istringstream fields(point);
    if (!(fields >> gamma[0] >> sep1 >> gamma[1] >> sep2 >> gamma[2]) || sep1 != ',' ||
        sep2 != ',')
      throw tnep::ConfigError("budget axis point '" + point +
                              "' is not of the form GAMMA_D,GAMMA_G,GAMMA_W");
    out.push_back(gamma);
  }
  if (out.empty()) throw tnep::ConfigError("budget axis is empty");
  return out;
}

int cmd_sweep(const SolveFlags& f, const std::vector<int>& cluster_axis,
              const std::string& budget_axis, const std::string& hourly_csv,
              unsigned cluster_seed, int jobs) {
  if (cluster_axis.empty() == budget_axis.empty())
    throw tnep::ConfigError("sweep needs exactly one axis: --clusters or --budgets");
  if (jobs < 1) throw tnep::ConfigError("--jobs must be at least 1");

  tnep::PlanningCase pc = tnep::load_case_file(f.case_path);
  apply_overrides(pc, f);
  tnep::validate(pc);
  const tnep::CcgConfig config = make_config(f);

  if (!cluster_axis.empty()) {
    const std::string csv = hourly_csv.empty() ? case_csv_path(f.case_path) : hourly_csv;
    tnep::HourlySeries series = load_series_for(pc, csv);
    std::vector<tnep::SweepRow> rows =
        tnep::stability_sweep(pc, series, cluster_axis, cluster_seed, config, jobs);
    write_output(tnep::sweep_to_csv(rows), f.out_path);
    return kExitOk;
  }

  const std::vector<std::array<int, 3>> axis = parse_budget_axis(budget_axis);
  tnep::CcgConfig point_config = config;
  if (jobs > 1) point_config.progress = nullptr;  // lines would interleave

  std::vector<std::string> rows(axis.size());
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < rows.size(); i = cursor.fetch_add(1)) {
      const std::array<int, 3>& gamma = axis[i];
      tnep::PlanningCase point = pc;
      point.uncertainty.budget_demand = gamma[0];
      point.uncertainty.budget_conventional = gamma[1];
      point.uncertainty.budget_wind = gamma[2];
      std::ostringstream row;
      row << gamma[0] << ',' << gamma[1] << ',' << gamma[2] << ',';
      try {
        tnep::RobustSolution sol = tnep::solve_robust_tnep(point, point_config);
        char capital[64], total[64], seconds[64];
        std::snprintf(capital, sizeof capital, "%.1f", sol.capital_cost);
        std::snprintf(total, sizeof total, "%.1f", sol.total_annual_cost);
        std::snprintf(seconds, sizeof seconds, "%.1f", sol.log.total_seconds);
        row << capital << ',' << total << ',' << sol.log.outer.size() << ',' << seconds << ",\n";
      } catch (const tnep::Error& e) {
        row << ",,,," << '"' << e.what() << '"' << '\n';
      }
      rows[i] = row.str();
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), rows.size());
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  std::ostringstream out;
  out << "gamma_demand,gamma_conventional,gamma_wind,capital_cost,total_annual_cost,"
         "outer_iterations,seconds,note\n";
  for (const std::string& row : rows) out << row;
  write_output(out.str(), f.out_path);
  return kExitOk;
}

int cmd_cluster(const std::string& case_path, int clusters, unsigned seed,
                const std::string& hourly_csv, const std::string& out_path) {
  tnep::PlanningCase pc = tnep::load_case_file(case_path);
  const std::string csv = hourly_csv.empty() ? case_csv_path(case_path) : hourly_csv;
  tnep::HourlySeries series = load_series_for(pc, csv);
  pc.representative_days = tnep::build_representative_days(series, clusters, seed);
  tnep::validate(pc);
  write_output(tnep::serialize_case(pc), out_path);
  return kExitOk;
}

struct VerifyOutcome {
  bool ok = true;
  std::ostringstream report;
};

void verify_instance(VerifyOutcome& v, const std::string& name, const tnep::PlanningCase& pc,
                     const tnep::CcgConfig& config) {
  tnep::RobustSolution nested = tnep::solve_robust_tnep(pc, config);
  tnep::RobustSolution exact = tnep::extensive_form(pc, config.solver);
  const double delta = std::abs(nested.total_annual_cost - exact.total_annual_cost);
  const bool ok = delta <= 1e-6;
  v.ok = v.ok && ok;
  char line[256];
  std::snprintf(line, sizeof line, "%-14s nested=%.6f oracle=%.6f delta=%.3e %s\n",
                name.c_str(), nested.total_annual_cost, exact.total_annual_cost, delta,
                ok ? "ok" : "MISMATCH");
  v.report << line;
}

// The relaxed-mode demonstration: dropping the charge/discharge exclusivity
// binaries must cheapen the dispatch by letting the unit do both at once.
void verify_relax_demo(VerifyOutcome& v, const tnep::CcgConfig& config) {
  tnep::PlanningCase pc = tnep::relax_demo();
  tnep::OperationalModelTemplate strict_tmpl(pc);
  tnep::FormulationOptions opts;
  opts.relax_mode_binaries = true;
  tnep::OperationalModelTemplate relaxed_tmpl(pc, opts);

  tnep::OperationalSolve strict = tnep::solve_operational(
      strict_tmpl, tnep::ExpansionPlan{}, pc.nominal_deviation(), config.solver);
  tnep::OperationalSolve relaxed = tnep::solve_operational(
      relaxed_tmpl, tnep::ExpansionPlan{}, pc.nominal_deviation(), config.solver);

  int simultaneous = 0;
  for (std::size_t i = 0; i < relaxed.vars.charge.size(); ++i)
    if (relaxed.raw.value(relaxed.vars.charge[i]) > 1e-6 &&
        relaxed.raw.value(relaxed.vars.discharge[i]) > 1e-6)
      ++simultaneous;

  const bool ok = relaxed.cost < strict.cost - 1e-6 && simultaneous > 0;
  v.ok = v.ok && ok;
  char line[256];
  std::snprintf(line, sizeof line,
                "%-14s binary=%.6f relaxed=%.6f simultaneous-hours=%d %s\n", "relax-demo",
                strict.cost, relaxed.cost, simultaneous, ok ? "ok" : "MISMATCH");
  v.report << line;
}

int cmd_verify(const SolveFlags& f) {
  tnep::CcgConfig config = make_config(f);
  VerifyOutcome v;
  verify_instance(v, "two-bus", tnep::two_bus_toy(), config);
  verify_instance(v, "three-bus", tnep::three_bus_toy(), config);
  if (f.relax_z) {
    // With --relax-z the equivalence claim is about the relaxed problem.
    tnep::CcgConfig relaxed = config;
    relaxed.relax_mode_binaries = true;
    verify_instance(v, "two-bus-relax", tnep::two_bus_toy(), relaxed);
  }
  if (!f.case_path.empty()) {
    tnep::PlanningCase pc = tnep::load_case_file(f.case_path);
    tnep::PlanningCase reduced = tnep::reduce_case(pc, 2, 4);
    verify_instance(v, "case-2dx4h", reduced, config);
  }
  verify_relax_demo(v, config);
  write_output(v.report.str(), f.out_path);
  return v.ok ? kExitOk : kExitVerifyMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Robust transmission expansion planning with storage under budgeted "
      "demand/generation uncertainty (nested column-and-constraint generation).\n"
      "Set TNEP_SOLVER_LIB to load an alternative solver shared library."};
  app.require_subcommand(1);

  SolveFlags flags;
  auto add_common = [&](CLI::App* cmd, bool needs_case) {
    CLI::Option* case_opt = cmd->add_option("--case", flags.case_path, "planning case file");
    if (needs_case) case_opt->required();
    cmd->add_option("--gamma-d", flags.gamma_d, "override demand uncertainty budget");
    cmd->add_option("--gamma-g", flags.gamma_g, "override conventional uncertainty budget");
    cmd->add_option("--gamma-w", flags.gamma_w, "override wind uncertainty budget");
    cmd->add_option("--budget", flags.budget, "override investment budget (10^3 EUR)");
    cmd->add_option("--tol-outer", flags.tol_outer, "outer bound-gap tolerance");
    cmd->add_option("--tol-inner", flags.tol_inner, "inner bound-gap tolerance");
    cmd->add_option("--time-limit", flags.time_limit, "wall-clock limit in seconds");
    cmd->add_option("--mip-gap", flags.mip_gap,
                    "relative and absolute MIP gap for every solve (default 0 / 1e-9)");
    cmd->add_option("--threads", flags.threads, "solver threads (default 1, deterministic)");
    cmd->add_option("--seed", flags.seed, "solver random seed");
    cmd->add_flag("--relax-z", flags.relax_z,
                  "diagnostic: relax the charge/discharge exclusivity binaries");
    cmd->add_flag("--progress", flags.progress, "print per-solve progress to stderr");
    cmd->add_option("--out", flags.out_path, "write the result here instead of stdout");
  };

  CLI::App* solve = app.add_subcommand("solve", "run the robust expansion solve");
  add_common(solve, true);
  solve->add_option("--format", flags.format, "result format")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* sweep = app.add_subcommand(
      "sweep", "one robust solve per axis point, emitted as a CSV table");
  add_common(sweep, true);
  std::vector<int> cluster_axis;
  std::string budget_axis, sweep_csv;
  unsigned cluster_seed = 0;
  int sweep_jobs = 1;
  sweep->add_option("--clusters", cluster_axis, "cluster counts, e.g. --clusters 2 4 8");
  sweep->add_option("--budgets", budget_axis,
                    "semicolon-separated gamma triples, e.g. '0,0,0;5,3,1'");
  sweep->add_option("--hourly-csv", sweep_csv, "hourly series (default: the case's reference)");
  sweep->add_option("--cluster-seed", cluster_seed, "clustering seed for the K axis");
  sweep->add_option("--jobs", sweep_jobs, "solve up to N sweep points concurrently")
      ->check(CLI::PositiveNumber);

  CLI::App* cluster = app.add_subcommand(
      "cluster", "re-cluster the case's hourly data and emit the case with days inlined");
  std::string cluster_case, cluster_csv, cluster_out;
  int cluster_k = 0;
  unsigned cluster_cmd_seed = 0;
  cluster->add_option("--case", cluster_case, "planning case file")->required();
  cluster->add_option("--clusters", cluster_k, "number of representative days")->required();
  cluster->add_option("--seed", cluster_cmd_seed, "clustering seed");
  cluster->add_option("--hourly-csv", cluster_csv, "hourly series (default: the case's reference)");
  cluster->add_option("--out", cluster_out, "write the case here instead of stdout");

  CLI::App* verify = app.add_subcommand(
      "verify", "check the solver against brute-force oracles on bundled instances");
  add_common(verify, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(flags);
    if (sweep->parsed())
      return cmd_sweep(flags, cluster_axis, budget_axis, sweep_csv, cluster_seed, sweep_jobs);
    if (cluster->parsed())
      return cmd_cluster(cluster_case, cluster_k, cluster_cmd_seed, cluster_csv, cluster_out);
    if (verify->parsed()) return cmd_verify(flags);
  } catch (const tnep::ParseError& e) {
    std::cerr << "tnep: " << e.what() << '\n';
    return kExitParse;
  } catch (const tnep::ValidationError& e) {
    std::cerr << "tnep: " << e.what() << '\n';
    return kExitValidation;
  } catch (const tnep::ConvergenceError& e) {
    std::cerr << "tnep: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const tnep::SolverError& e) {
    std::cerr << "tnep: " << e.what() << '\n';
    return kExitSolver;
  } catch (const tnep::ConfigError& e) {
    std::cerr << "tnep: " << e.what() << '\n';
    return kExitConfig;
  } catch (const tnep::Error& e) {
    std::cerr << "tnep: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
