"""Worst-case (MAXMIN) oracles for a fixed design.

Two oracles are provided. The vertex-enumeration oracle is exact for
linear recourse over a convex-combination uncertainty set: the worst case
lies on a generator, so one recourse LP per generator suffices. The
discretization oracle handles uncertainty sets with binary structure by
alternating a medial-level MILP against an accumulating set of recourse
responses.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..lp import LpStatus, solve_lp, solve_milp
from .problem import IterationLimit, LlpInfeasible, SipTolerances

_MAX_INNER_ITERS = 200


@dataclass
class OracleResult:
    value: float                 # worst-case supply gap
    realization: object          # worst uncertainty realization
    index: int                   # generator index, -1 if not applicable
    lp: object                   # recourse LP at the worst realization
    solution: object             # its LpSolution (with duals)
    lp_solves: int = 0
    milp_solves: int = 0
    per_point_values: list = field(default_factory=list)


def solve_recourse(template, x, realization):
    """Solve the operational lower-level LP; must be feasible by design."""
    lp = template.recourse_lp(x, realization)
    sol = solve_lp(lp)
    if sol.status is LpStatus.INFEASIBLE:
        raise LlpInfeasible(
            "recourse problem infeasible; epigraph bounds too narrow")
    if not sol.optimal:
        raise RuntimeError(f"recourse LP ended with status {sol.status}")
    return lp, sol


def maxmin_vertex_enum(x, problem, tol: SipTolerances = SipTolerances()
                       ) -> OracleResult:
    """Exact MAXMIN by evaluating the recourse LP at every generator.

    Ties are broken toward the lowest generator index.
    """
    unc = problem.uncertainty
    best = None
    values = []
    n_lp = 0
    for v in range(unc.n_generators):
        y = unc.realization(v)
        lp, sol = solve_recourse(problem.template, x, y)
        n_lp += 1
        values.append(sol.objective)
        if best is None or sol.objective > best.value:
            best = OracleResult(sol.objective, y, v, lp, sol)
    if best is None:
        raise ValueError("uncertainty set has no generators")
    best.lp_solves = n_lp
    best.per_point_values = values
    return best


def maxmin_discretization(x, problem, tol: SipTolerances = SipTolerances()
                          ) -> OracleResult:
    """Epsilon-global MAXMIN for box/binary uncertainty descriptions.

    Alternates the medial-level MILP (an upper bound, relaxed over the
    recorded recourse responses) with the recourse LP at the candidate
    realization (a lower bound) until the two meet within the oracle
    tolerances.
    """
    unc = problem.uncertainty
    responses = []
    best = None
    n_lp = n_milp = 0
    for _ in range(_MAX_INNER_ITERS):
        mlp = unc.build_mlp(x, responses)
        msol = solve_milp(mlp)
        n_milp += 1
        if not msol.optimal:
            raise RuntimeError(f"medial-level MILP status {msol.status}")
        upper = -msol.objective   # MILP minimizes the negated epigraph
        y = unc.realization_from_mlp(msol)
        lp, sol = solve_recourse(problem.template, x, y)
        n_lp += 1
        if best is None or sol.objective > best.value:
            best = OracleResult(sol.objective, y, -1, lp, sol)
        gap_tol = max(tol.oracle_abs, tol.oracle_rel * abs(upper))
        if upper - best.value <= gap_tol:
            best.lp_solves = n_lp
            best.milp_solves = n_milp
            return best
        responses.append(unc.response_from_llp(sol))
    raise IterationLimit("worst-case search did not converge")
