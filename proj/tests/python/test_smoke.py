import math
import os

import pytest

import tnep


def data_path(name):
    root = os.environ.get(
        "TNEP_DATA_DIR",
        os.path.join(os.path.dirname(__file__), os.pardir, os.pardir, "data"),
    )
    return os.path.join(root, name)


def test_two_bus_robust_solve_matches_extensive_form():
    case = tnep.two_bus_toy()
    sol = tnep.solve_robust_tnep(case)
    oracle = tnep.extensive_form(case)
    assert sol.total_annual_cost == pytest.approx(85010.0, abs=1e-6)
    assert oracle.total_annual_cost == pytest.approx(sol.total_annual_cost, abs=1e-6)
    assert sol.plan.circuits("1-2") == 1
    assert sol.log.outer  # iteration history came along


def test_brute_force_agrees_with_inner_loop():
    case = tnep.two_bus_toy()
    sol = tnep.solve_robust_tnep(case)
    wc = tnep.brute_force_worst_case(case, sol.plan)
    assert wc.cost == pytest.approx(sol.worst_case_operating_cost, abs=1e-6)


def test_case_file_round_trip():
    case = tnep.load_case_file(data_path("garver.json"))
    tnep.validate(case)
    again = tnep.load_case(tnep.serialize_case(case))
    assert again == case


def test_plan_costing():
    case = tnep.load_case_file(data_path("garver.json"))
    plan = tnep.ExpansionPlan()
    plan.lines_built = {"2-3": 2, "3-5": 2, "4-6": 2}
    plan.storage_built = {"S6": 2}
    cost = tnep.plan_capital_cost(plan, case)
    assert cost.capital == pytest.approx(47031.2, abs=0.1)
    assert cost.within_budget
    rate = case.economics.amortization_rate
    assert tnep.annualize(cost.capital, case.economics) == pytest.approx(rate * cost.capital)


def test_uncertainty_budget_assignment():
    case = tnep.three_bus_toy()
    u = case.uncertainty
    u.budget_demand = 0
    u.budget_conventional = 0
    u.budget_wind = 0
    case.uncertainty = u
    assert tnep.vertex_count(case) == 1
    sol = tnep.solve_robust_tnep(case)
    assert sol.worst_case_u.total_flags() == 0
    assert len(sol.log.outer) == 1


def test_progress_callback_receives_lines():
    lines = []
    cfg = tnep.CcgConfig()
    cfg.progress = lines.append
    tnep.solve_robust_tnep(tnep.two_bus_toy(), cfg)
    assert lines
    assert all(isinstance(s, str) for s in lines)


def test_report_round_trip():
    case = tnep.two_bus_toy()
    sol = tnep.solve_robust_tnep(case)
    rep = tnep.make_report(case, sol)
    again = tnep.report_from_json(tnep.report_to_json(rep))
    assert again == rep
    header = tnep.report_to_csv(rep).splitlines()[0]
    assert header.startswith("case,gamma_demand")


def test_clustering_from_python_series():
    s = tnep.HourlySeries()
    s.names = ["D"]
    s.is_wind = [0]
    s.hours_per_day = 2
    s.days = [
        [0.9 + 0.001 * d, 0.91 + 0.001 * d] if d % 2 == 0 else [0.3, 0.31]
        for d in range(6)
    ]
    reps = tnep.build_representative_days(s, 2, 123)
    assert len(reps) == 2
    assert sum(r.weight_days for r in reps) == pytest.approx(365.0)
    levels = sorted(r.demand_factor["D"][0] for r in reps)
    assert levels[0] == pytest.approx(0.3, abs=0.05)
    assert levels[1] == pytest.approx(0.9, abs=0.05)


def test_error_hierarchy():
    with pytest.raises(tnep.ParseError):
        tnep.load_case("not json")
    with pytest.raises(tnep.ConfigError):
        cfg = tnep.CcgConfig()
        cfg.dual_bound = math.inf
        tnep.solve_robust_tnep(tnep.two_bus_toy(), cfg)
    assert issubclass(tnep.ValidationError, tnep.Error)
    assert issubclass(tnep.Error, RuntimeError)
