// Python surface: case I/O, the toy instances, clustering, the robust solve,
// the brute-force oracles, and report emission.  Structs cross the boundary
// by value, so mutate nested fields via whole-struct assignment.

#include <memory>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tnep/case_io.hpp"
#include "tnep/ccg.hpp"
#include "tnep/clustering.hpp"
#include "tnep/oracle.hpp"
#include "tnep/report.hpp"
#include "tnep/uncertainty.hpp"

namespace py = pybind11;
using namespace tnep;

namespace {

// Long solves drop the GIL; a Python progress callback has to take it back,
// both when invoked and when the last internal CcgConfig copy destroys it.
void set_progress(CcgConfig& config, py::object fn) {
  if (fn.is_none()) {
    config.progress = nullptr;
    return;
  }
  std::shared_ptr<py::function> callable(new py::function(py::cast<py::function>(fn)),
                                         [](py::function* p) {
                                           py::gil_scoped_acquire gil;
                                           delete p;
                                         });
  config.progress = [callable](const std::string& line) {
    py::gil_scoped_acquire gil;
    (*callable)(line);
  };
}

}  // namespace

PYBIND11_MODULE(_tnep, m) {
  m.doc() = "Robust transmission expansion planning with storage under "
            "budgeted uncertainty (nested column-and-constraint generation)";

  auto err = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", err);
  py::register_exception<ValidationError>(m, "ValidationError", err);
  py::register_exception<SolverError>(m, "SolverError", err);
  py::register_exception<ConfigError>(m, "ConfigError", err);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", err);

  py::enum_<Technology>(m, "Technology")
      .value("Conventional", Technology::Conventional)
      .value("Wind", Technology::Wind);
  py::enum_<StorageStatus>(m, "StorageStatus")
      .value("Existing", StorageStatus::Existing)
      .value("Candidate", StorageStatus::Candidate);

  py::class_<Bus>(m, "Bus")
      .def(py::init<>())
      .def_readwrite("id", &Bus::id)
      .def_readwrite("is_reference", &Bus::is_reference);

  py::class_<Generator>(m, "Generator")
      .def(py::init<>())
      .def_readwrite("id", &Generator::id)
      .def_readwrite("bus", &Generator::bus)
      .def_readwrite("technology", &Generator::technology)
      .def_readwrite("nominal_capacity_mw", &Generator::nominal_capacity_mw)
      .def_readwrite("operating_cost_per_mwh", &Generator::operating_cost_per_mwh)
      .def_readwrite("hourly_profile_ref", &Generator::hourly_profile_ref);

  py::class_<StorageUnit>(m, "StorageUnit")
      .def(py::init<>())
      .def_readwrite("id", &StorageUnit::id)
      .def_readwrite("bus", &StorageUnit::bus)
      .def_readwrite("status", &StorageUnit::status)
      .def_readwrite("max_energy_mwh", &StorageUnit::max_energy_mwh)
      .def_readwrite("initial_energy_mwh", &StorageUnit::initial_energy_mwh)
      .def_readwrite("charge_cap_mw", &StorageUnit::charge_cap_mw)
      .def_readwrite("discharge_cap_mw", &StorageUnit::discharge_cap_mw)
      .def_readwrite("charge_efficiency", &StorageUnit::charge_efficiency)
      .def_readwrite("discharge_efficiency", &StorageUnit::discharge_efficiency)
      .def_readwrite("max_buildable", &StorageUnit::max_buildable)
      .def_readwrite("unit_capital_cost", &StorageUnit::unit_capital_cost);

  py::class_<Demand>(m, "Demand")
      .def(py::init<>())
      .def_readwrite("id", &Demand::id)
      .def_readwrite("bus", &Demand::bus)
      .def_readwrite("nominal_level_mw", &Demand::nominal_level_mw)
      .def_readwrite("shed_cost_per_mwh", &Demand::shed_cost_per_mwh)
      .def_readwrite("hourly_profile_ref", &Demand::hourly_profile_ref);

  py::class_<Corridor>(m, "Corridor")
      .def(py::init<>())
      .def_readwrite("from_bus", &Corridor::from_bus)
      .def_readwrite("to_bus", &Corridor::to_bus)
      .def_readwrite("reactance_pu", &Corridor::reactance_pu)
      .def_readwrite("capacity_mw", &Corridor::capacity_mw)
      .def_readwrite("existing_circuits", &Corridor::existing_circuits)
      .def_readwrite("max_total_circuits", &Corridor::max_total_circuits)
      .def_readwrite("circuit_capital_cost", &Corridor::circuit_capital_cost)
      .def("key", &Corridor::key);

  py::class_<RepresentativeDay>(m, "RepresentativeDay")
      .def(py::init<>())
      .def_readwrite("weight_days", &RepresentativeDay::weight_days)
      .def_readwrite("demand_factor", &RepresentativeDay::demand_factor)
      .def_readwrite("wind_capacity_factor", &RepresentativeDay::wind_capacity_factor);

  py::class_<EconomicParams>(m, "EconomicParams")
      .def(py::init<>())
      .def_readwrite("amortization_rate", &EconomicParams::amortization_rate)
      .def_readwrite("investment_budget", &EconomicParams::investment_budget)
      .def_readwrite("outer_tolerance", &EconomicParams::outer_tolerance)
      .def_readwrite("inner_tolerance", &EconomicParams::inner_tolerance);

  py::class_<UncertaintySpec>(m, "UncertaintySpec")
      .def(py::init<>())
      .def_readwrite("budget_demand", &UncertaintySpec::budget_demand)
      .def_readwrite("budget_conventional", &UncertaintySpec::budget_conventional)
      .def_readwrite("budget_wind", &UncertaintySpec::budget_wind)
      .def_readwrite("demand_deviation", &UncertaintySpec::demand_deviation)
      .def_readwrite("conventional_deviation", &UncertaintySpec::conventional_deviation)
      .def_readwrite("wind_deviation", &UncertaintySpec::wind_deviation);

  py::class_<DeviationVector>(m, "DeviationVector")
      .def(py::init<>())
      .def_readwrite("demand", &DeviationVector::demand)
      .def_readwrite("conventional", &DeviationVector::conventional)
      .def_readwrite("wind", &DeviationVector::wind)
      .def("total_flags", &DeviationVector::total_flags)
      .def("__eq__", [](const DeviationVector& a, const DeviationVector& b) { return a == b; })
      .def("__repr__", &DeviationVector::to_string);

  py::class_<PlanningCase>(m, "PlanningCase")
      .def(py::init<>())
      .def_readwrite("name", &PlanningCase::name)
      .def_readwrite("buses", &PlanningCase::buses)
      .def_readwrite("generators", &PlanningCase::generators)
      .def_readwrite("storage_units", &PlanningCase::storage_units)
      .def_readwrite("demands", &PlanningCase::demands)
      .def_readwrite("corridors", &PlanningCase::corridors)
      .def_readwrite("representative_days", &PlanningCase::representative_days)
      .def_readwrite("economics", &PlanningCase::economics)
      .def_readwrite("uncertainty", &PlanningCase::uncertainty)
      .def_readwrite("base_mva", &PlanningCase::base_mva)
      .def_readwrite("max_angle_rad", &PlanningCase::max_angle_rad)
      .def("reference_bus", &PlanningCase::reference_bus)
      .def("hours_per_day", &PlanningCase::hours_per_day)
      .def("nominal_deviation", &PlanningCase::nominal_deviation)
      .def("weight_sum_days", &PlanningCase::weight_sum_days)
      .def("__eq__", [](const PlanningCase& a, const PlanningCase& b) { return a == b; });

  py::class_<ExpansionPlan>(m, "ExpansionPlan")
      .def(py::init<>())
      .def_readwrite("lines_built", &ExpansionPlan::lines_built)
      .def_readwrite("storage_built", &ExpansionPlan::storage_built)
      .def("circuits", &ExpansionPlan::circuits)
      .def("storage_units", &ExpansionPlan::storage_units)
      .def("empty", &ExpansionPlan::empty)
      .def("__eq__", [](const ExpansionPlan& a, const ExpansionPlan& b) { return a == b; });

  py::class_<PlanCost>(m, "PlanCost")
      .def_readonly("capital", &PlanCost::capital)
      .def_readonly("within_budget", &PlanCost::within_budget);

  py::class_<milp::SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("mip_rel_gap", &milp::SolverConfig::mip_rel_gap)
      .def_readwrite("mip_abs_gap", &milp::SolverConfig::mip_abs_gap)
      .def_readwrite("feasibility_tolerance", &milp::SolverConfig::feasibility_tolerance)
      .def_readwrite("time_limit_seconds", &milp::SolverConfig::time_limit_seconds)
      .def_readwrite("threads", &milp::SolverConfig::threads)
      .def_readwrite("random_seed", &milp::SolverConfig::random_seed)
      .def_readwrite("log_to_console", &milp::SolverConfig::log_to_console)
      .def_readwrite("solver_library", &milp::SolverConfig::solver_library);

  py::class_<CcgConfig>(m, "CcgConfig")
      .def(py::init<>())
      .def_readwrite("outer_tolerance", &CcgConfig::outer_tolerance)
      .def_readwrite("inner_tolerance", &CcgConfig::inner_tolerance)
      .def_readwrite("max_outer_iterations", &CcgConfig::max_outer_iterations)
      .def_readwrite("max_inner_iterations", &CcgConfig::max_inner_iterations)
      .def_readwrite("time_limit_seconds", &CcgConfig::time_limit_seconds)
      .def_readwrite("dual_bound", &CcgConfig::dual_bound)
      .def_readwrite("relax_mode_binaries", &CcgConfig::relax_mode_binaries)
      .def_readwrite("big_m_scale", &CcgConfig::big_m_scale)
      .def_readwrite("solver", &CcgConfig::solver)
      .def_property("progress", nullptr, &set_progress,
                    "callable taking one progress line, or None");

  py::class_<InnerIterationRecord>(m, "InnerIterationRecord")
      .def_readonly("iteration", &InnerIterationRecord::iteration)
      .def_readonly("lower", &InnerIterationRecord::lower)
      .def_readonly("upper", &InnerIterationRecord::upper)
      .def_readonly("subproblem_cost", &InnerIterationRecord::subproblem_cost)
      .def_readonly("scenario", &InnerIterationRecord::scenario)
      .def_readonly("mode_pattern", &InnerIterationRecord::mode_pattern)
      .def_readonly("subproblem_seconds", &InnerIterationRecord::subproblem_seconds)
      .def_readonly("master_seconds", &InnerIterationRecord::master_seconds);

  py::class_<OuterIterationRecord>(m, "OuterIterationRecord")
      .def_readonly("iteration", &OuterIterationRecord::iteration)
      .def_readonly("lower", &OuterIterationRecord::lower)
      .def_readonly("upper", &OuterIterationRecord::upper)
      .def_readonly("plan", &OuterIterationRecord::plan)
      .def_readonly("next_scenario", &OuterIterationRecord::next_scenario)
      .def_readonly("plan_worst_cost", &OuterIterationRecord::plan_worst_cost)
      .def_readonly("inner", &OuterIterationRecord::inner)
      .def_readonly("master_seconds", &OuterIterationRecord::master_seconds);

  py::class_<IterationLog>(m, "IterationLog")
      .def_readonly("outer", &IterationLog::outer)
      .def_readonly("total_seconds", &IterationLog::total_seconds);

  py::class_<RobustSolution>(m, "RobustSolution")
      .def_readonly("plan", &RobustSolution::plan)
      .def_readonly("worst_case_u", &RobustSolution::worst_case_u)
      .def_readonly("capital_cost", &RobustSolution::capital_cost)
      .def_readonly("worst_case_operating_cost", &RobustSolution::worst_case_operating_cost)
      .def_readonly("total_annual_cost", &RobustSolution::total_annual_cost)
      .def_readonly("log", &RobustSolution::log);

  py::class_<WorstCase>(m, "WorstCase")
      .def_readonly("cost", &WorstCase::cost)
      .def_readonly("u", &WorstCase::u);

  py::class_<HourlySeries>(m, "HourlySeries")
      .def(py::init<>())
      .def_readwrite("names", &HourlySeries::names)
      .def_readwrite("is_wind", &HourlySeries::is_wind)
      .def_readwrite("hours_per_day", &HourlySeries::hours_per_day)
      .def_readwrite("days", &HourlySeries::days)
      .def("num_days", &HourlySeries::num_days)
      .def("num_signals", &HourlySeries::num_signals);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("clusters_requested", &SweepRow::clusters_requested)
      .def_readonly("days_used", &SweepRow::days_used)
      .def_readonly("total_annual_cost", &SweepRow::total_annual_cost)
      .def_readonly("capital_cost", &SweepRow::capital_cost)
      .def_readonly("outer_iterations", &SweepRow::outer_iterations)
      .def_readonly("seconds", &SweepRow::seconds)
      .def_readonly("note", &SweepRow::note);

  py::class_<SolveReport>(m, "SolveReport")
      .def(py::init<>())
      .def_readwrite("case_name", &SolveReport::case_name)
      .def_readwrite("gamma_demand", &SolveReport::gamma_demand)
      .def_readwrite("gamma_conventional", &SolveReport::gamma_conventional)
      .def_readwrite("gamma_wind", &SolveReport::gamma_wind)
      .def_readwrite("lines_built", &SolveReport::lines_built)
      .def_readwrite("storage_built", &SolveReport::storage_built)
      .def_readwrite("capital_cost", &SolveReport::capital_cost)
      .def_readwrite("annualized_capital_cost", &SolveReport::annualized_capital_cost)
      .def_readwrite("worst_case_operating_cost", &SolveReport::worst_case_operating_cost)
      .def_readwrite("total_annual_cost", &SolveReport::total_annual_cost)
      .def_readwrite("worst_case_u", &SolveReport::worst_case_u)
      .def_readwrite("outer_iterations", &SolveReport::outer_iterations)
      .def_readwrite("inner_iterations", &SolveReport::inner_iterations)
      .def_readwrite("wall_seconds", &SolveReport::wall_seconds)
      .def("__eq__", [](const SolveReport& a, const SolveReport& b) { return a == b; });

  m.def("load_case", &load_case, py::arg("json_text"), py::arg("base_dir") = ".");
  m.def("load_case_file", &load_case_file, py::arg("path"));
  m.def("serialize_case", &serialize_case, py::arg("case"));
  m.def("validate", &validate, py::arg("case"));
  m.def("plan_capital_cost", &plan_capital_cost, py::arg("plan"), py::arg("case"));
  m.def("annualize", &annualize, py::arg("capital_cost"), py::arg("economics"));

  m.def("two_bus_toy", &two_bus_toy);
  m.def("three_bus_toy", &three_bus_toy);
  m.def("relax_demo", &relax_demo);
  m.def("reduce_case", &reduce_case, py::arg("case"), py::arg("max_days"),
        py::arg("hours_per_day"));

  m.def("vertex_count", &vertex_count, py::arg("case"));
  m.def("enumerate_vertices", &enumerate_vertices, py::arg("case"),
        py::arg("max_vertices") = std::size_t{1} << 22);

  m.def("load_hourly_csv", &load_hourly_csv, py::arg("path"), py::arg("demand_ids"),
        py::arg("wind_ids"));
  m.def("build_representative_days", &build_representative_days, py::arg("series"),
        py::arg("k"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());

  m.def("solve_robust_tnep", &solve_robust_tnep, py::arg("case"),
        py::arg("config") = CcgConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("extensive_form", &extensive_form, py::arg("case"),
        py::arg("config") = tight_solver_defaults(), py::arg("max_vertices") = std::size_t{4096},
        py::call_guard<py::gil_scoped_release>());
  m.def("brute_force_worst_case", &brute_force_worst_case, py::arg("case"), py::arg("plan"),
        py::arg("config") = tight_solver_defaults(), py::arg("max_vertices") = std::size_t{4096},
        py::call_guard<py::gil_scoped_release>());
  m.def("stability_sweep", &stability_sweep, py::arg("case"), py::arg("series"),
        py::arg("cluster_counts"), py::arg("seed"), py::arg("config") = CcgConfig{},
        py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());

  m.def("make_report", &make_report, py::arg("case"), py::arg("solution"));
  m.def("report_to_json", &report_to_json, py::arg("report"));
  m.def("report_from_json", &report_from_json, py::arg("text"));
  m.def("report_to_csv", &report_to_csv, py::arg("report"));
  m.def("sweep_to_csv", &sweep_to_csv, py::arg("rows"));
}
