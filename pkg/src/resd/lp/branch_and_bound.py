"""Best-bound branch and bound over the dense simplex relaxation.

Binary variables only; branching fixes a variable through its bounds so
every node is a plain LP with tightened boxes. Node selection is by lowest
relaxation bound with node id as the deterministic tie-break.
"""
from __future__ import annotations

import heapq
from dataclasses import replace

import numpy as np

from .model import (
    LinearProgram,
    LpStatus,
    LpTolerances,
    MilpSolution,
    MixedIntegerLinearProgram,
)
from .simplex import solve_lp


def _most_fractional(x, int_idx, tol):
    """Branching variable: largest distance to the nearest integer."""
    frac = np.abs(x[int_idx] - np.round(x[int_idx]))
    worst = int(np.argmax(frac))
    if frac[worst] <= tol.integrality:
        return -1
    return int(int_idx[worst])


def solve_milp(milp: MixedIntegerLinearProgram,
               tol: LpTolerances = LpTolerances()) -> MilpSolution:
    milp.validate()
    lp = milp.base
    int_idx = np.nonzero(milp.integral)[0]
    if int_idx.size == 0:
        sol = solve_lp(lp, tol)
        return MilpSolution(sol.status, sol.x, sol.objective,
                            sol.objective if sol.optimal else -np.inf,
                            node_count=1)

    incumbent_x = None
    incumbent_obj = np.inf
    node_id = 0
    heap = [(-np.inf, node_id, lp.lb.copy(), lp.ub.copy())]
    nodes = 0
    best_bound = -np.inf
    hit_node_limit = False

    while heap:
        bound, _, lb, ub = heapq.heappop(heap)
        best_bound = bound
        if incumbent_obj - bound <= tol.milp_abs_gap:
            best_bound = incumbent_obj
            break
        if nodes >= tol.node_limit:
            hit_node_limit = True
            break
        nodes += 1

        node_lp = replace(lp, lb=lb, ub=ub)
        sol = solve_lp(node_lp, tol)
        if sol.status is LpStatus.INFEASIBLE:
            continue
        if sol.status is LpStatus.UNBOUNDED:
            return MilpSolution(LpStatus.UNBOUNDED, None, np.nan,
                                -np.inf, nodes)
        if not sol.optimal:
            # relaxation did not solve cleanly; treat as exploration failure
            hit_node_limit = True
            break
        if sol.objective >= incumbent_obj - tol.milp_abs_gap:
            continue

        j = _most_fractional(sol.x, int_idx, tol)
        if j < 0:
            xi = sol.x.copy()
            xi[int_idx] = np.round(xi[int_idx])
            if sol.objective < incumbent_obj:
                incumbent_obj = sol.objective
                incumbent_x = xi
            continue

        node_id += 1
        lb_hi = lb.copy()
        lb_hi[j] = np.ceil(sol.x[j] - tol.integrality)
        heapq.heappush(heap, (sol.objective, node_id, lb_hi, ub.copy()))
        node_id += 1
        ub_lo = ub.copy()
        ub_lo[j] = np.floor(sol.x[j] + tol.integrality)
        heapq.heappush(heap, (sol.objective, node_id, lb.copy(), ub_lo))

    if not heap and not hit_node_limit:
        best_bound = incumbent_obj

    if incumbent_x is not None:
        status = LpStatus.NODE_LIMIT if hit_node_limit and \
            incumbent_obj - best_bound > tol.milp_abs_gap else LpStatus.OPTIMAL
        return MilpSolution(status, incumbent_x, incumbent_obj,
                            best_bound, nodes)
    if hit_node_limit:
        return MilpSolution(LpStatus.NODE_LIMIT, None, np.nan,
                            best_bound, nodes)
    return MilpSolution(LpStatus.INFEASIBLE, None, np.nan, best_bound, nodes)
