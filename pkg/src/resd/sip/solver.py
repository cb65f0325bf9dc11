"""Outer loops: adaptive discretization solve and the time-step heuristic."""
from __future__ import annotations

import time

import numpy as np

from ..lp import LpStatus, solve_milp
from .assemble import build_lbp
from .oracles import solve_recourse
from .problem import (
    DiscretizationSet,
    EsipProblem,
    InfeasibleDesignSpace,
    RobustDesign,
    SipTolerances,
    SolveLog,
)


def _design_from(problem, sol, disc, oracle_value, status, iterations):
    x = sol.x[:problem.n_design].copy()
    invest = float(problem.design_cost @ x)
    return RobustDesign(x, list(problem.design_names), float(sol.objective),
                        invest, float(sol.objective) - invest,
                        float(oracle_value), status, disc, iterations)


def solve_esip(problem: EsipProblem, oracle,
               tol: SipTolerances = SipTolerances(),
               disc: DiscretizationSet | None = None):
    """Adaptive discretization: solve the lower bounding problem, separate
    with the worst-case oracle, append the violated realization, repeat.

    Returns (RobustDesign, SolveLog). The design is feasible when the
    final oracle value is at most feas_tol.
    """
    tol.validate()
    disc = disc if disc is not None else DiscretizationSet()
    log = SolveLog()
    start = time.monotonic()
    n_lp = n_milp = 0
    sol = None
    value = np.inf

    for it in range(1, tol.max_iterations + 1):
        lbp = build_lbp(problem, disc)
        sol = solve_milp(lbp)
        n_milp += 1
        if sol.status is LpStatus.INFEASIBLE:
            raise InfeasibleDesignSpace(
                "lower bounding problem infeasible; design space is empty")
        if not sol.optimal:
            raise RuntimeError(f"lower bounding problem status {sol.status}")
        x = sol.x[:problem.n_design]

        res = oracle(x, problem, tol)
        n_lp += res.lp_solves
        n_milp += res.milp_solves
        value = res.value
        elapsed = time.monotonic() - start
        log.append(it, sol.objective, value, n_lp, n_milp, elapsed)

        if value <= tol.feas_tol:
            return _design_from(problem, sol, disc, value, "feasible", it), log
        disc.add(res.realization, value)
        if elapsed > tol.max_wall_s:
            return _design_from(problem, sol, disc, value, "time_limit",
                                it), log
    return _design_from(problem, sol, disc, value, "iteration_limit",
                        tol.max_iterations), log


def evaluate_supply_gap(x, problem: EsipProblem, dataset):
    """Recourse gap for every historical day at a fixed design.

    Returns (per-day gap vector, max gap). Negative entries mean slack.
    """
    gaps = np.empty(dataset.n_days)
    for d in range(dataset.n_days):
        _, sol = solve_recourse(problem.template, x, dataset.values[d])
        gaps[d] = sol.objective
    return gaps, float(gaps.max()) if gaps.size else 0.0


def feasibility_timestep_heuristic(problem: EsipProblem, dataset,
                                   tol: SipTolerances = SipTolerances()):
    """Baseline: enforce operability only at historical days, adding the
    maximally violated day each round. Finite-set analog of solve_esip."""
    tol.validate()
    disc = DiscretizationSet()
    log = SolveLog()
    start = time.monotonic()
    n_lp = n_milp = 0
    sol = None
    worst = np.inf

    for it in range(1, tol.max_iterations + 1):
        lbp = build_lbp(problem, disc)
        sol = solve_milp(lbp)
        n_milp += 1
        if sol.status is LpStatus.INFEASIBLE:
            raise InfeasibleDesignSpace(
                "design problem infeasible over selected days")
        if not sol.optimal:
            raise RuntimeError(f"design problem status {sol.status}")
        x = sol.x[:problem.n_design]

        gaps, worst = evaluate_supply_gap(x, problem, dataset)
        n_lp += dataset.n_days
        elapsed = time.monotonic() - start
        log.append(it, sol.objective, worst, n_lp, n_milp, elapsed)

        if worst <= tol.feas_tol:
            return _design_from(problem, sol, disc, worst, "feasible",
                                it), log
        day = int(np.argmax(gaps))
        if not disc.add(dataset.values[day], worst):
            raise RuntimeError(
                f"day {day} already enforced yet still violated; "
                "operational model is inconsistent")
        if elapsed > tol.max_wall_s:
            return _design_from(problem, sol, disc, worst, "time_limit",
                                it), log
    return _design_from(problem, sol, disc, worst, "iteration_limit",
                        tol.max_iterations), log
