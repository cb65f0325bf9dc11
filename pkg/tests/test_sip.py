"""Unit tests for the adaptive discretization loop and its oracles."""
import numpy as np
import pytest

from resd.models import build_milp_example
from resd.sip import (
    DiscretizationSet,
    SipTolerances,
    SolveLog,
    maxmin_discretization,
    maxmin_vertex_enum,
    solve_esip,
)
from resd.sip.problem import InfeasibleDesignSpace


def test_tolerances_validation():
    SipTolerances().validate()
    with pytest.raises(ValueError):
        SipTolerances(feas_tol=0.0).validate()
    with pytest.raises(ValueError):
        # the oracle must separate strictly inside the outer tolerance
        SipTolerances(feas_tol=1e-3, oracle_abs=1e-2).validate()


def test_discretization_dedup():
    disc = DiscretizationSet()
    assert disc.add((1.0, 0.0), 5.0)
    assert not disc.add((1.0, 1e-12), 5.0)
    assert disc.add((1.0, 1.0), 4.0)
    assert len(disc) == 2
    assert disc.violations == [5.0, 4.0]


def test_solvelog_monotone_lower_bounds():
    log = SolveLog()
    log.append(1, 10.0, 3.0, 5, 1, 0.1)
    log.append(2, 12.0, 1.0, 9, 2, 0.2)
    with pytest.raises(ValueError):
        log.append(3, 11.0, 0.5, 12, 3, 0.3)


def test_solvelog_jsonl_excludes_timing_by_default():
    log = SolveLog()
    log.append(1, 10.0, 3.0, 5, 1, 0.1)
    assert "elapsed_s" not in log.to_jsonl()
    assert "elapsed_s" in log.to_jsonl(include_timing=True)


def test_solve_esip_milp_example_log_properties():
    prob = build_milp_example()
    design, log = solve_esip(prob, maxmin_discretization)
    assert design.status == "feasible"
    lbs = [r["lower_bound"] for r in log.records]
    assert all(b2 >= b1 - 1e-9 for b1, b2 in zip(lbs, lbs[1:]))
    assert log.records[-1]["oracle_value"] <= SipTolerances().feas_tol
    # investment + operational = objective
    assert design.investment + design.operational == pytest.approx(
        design.objective, abs=1e-9)


def test_solve_esip_iteration_limit_status():
    prob = build_milp_example()
    tol = SipTolerances(max_iterations=2)
    design, log = solve_esip(prob, maxmin_discretization, tol)
    assert design.status == "iteration_limit"
    assert len(log.records) == 2


def test_solve_esip_infeasible_design_space():
    prob = build_milp_example()
    # contradictory design-only rows
    prob.a_ub = np.array([[1.0, 0.0], [-1.0, 0.0]])
    prob.b_ub = np.array([1.0, -2.0])
    with pytest.raises(InfeasibleDesignSpace):
        solve_esip(prob, maxmin_discretization)


def test_vertex_enum_tie_breaks_to_lowest_index():
    class TiedUncertainty:
        n_generators = 3

        def realization(self, v):
            return (10.0, 0.0) if v in (0, 2) else (5.0, 0.0)

    prob = build_milp_example()
    prob.uncertainty = TiedUncertainty()
    res = maxmin_vertex_enum(np.zeros(2), prob)
    assert res.index == 0
    assert res.value == pytest.approx(10.0)
    assert res.per_point_values == pytest.approx([10.0, 5.0, 10.0])
    assert res.lp_solves == 3
