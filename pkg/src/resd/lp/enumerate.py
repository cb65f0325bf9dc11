"""Brute-force reference solvers used to cross-check the simplex core.

These are deliberately independent of the tableau code: the LP oracle
enumerates active sets of constraints and bounds, and the MILP oracle
enumerates every binary assignment and solves the remaining LP. Both are
exponential and guarded by size caps.
"""
from __future__ import annotations

import itertools

import numpy as np

from .model import (
    LinearProgram,
    LpStatus,
    MilpSolution,
    MixedIntegerLinearProgram,
    TooLarge,
)

MAX_ORACLE_VARS = 10
MAX_ORACLE_BINARIES = 14
_BIG_BOX = 1e7
_CHUNK = 20_000


def lp_bruteforce_oracle(lp: LinearProgram, feas_tol: float = 1e-7):
    """Return (status, x, objective) by vertex enumeration.

    Every candidate vertex solves n active rows drawn from the equality
    rows, inequality rows, and finite bounds. Directions with no finite
    bound get an artificial box row at 1e7 so the region is a polytope;
    an optimum glued to that box is reported as Unbounded. Candidate
    systems are solved in batches.
    """
    lp.validate()
    n = lp.num_vars
    if n > MAX_ORACLE_VARS:
        raise TooLarge(f"oracle limited to {MAX_ORACLE_VARS} variables")

    rows, rhs, art = [], [], []
    for i in range(lp.b_eq.size):
        rows.append(lp.a_eq[i])
        rhs.append(lp.b_eq[i])
    n_eq = len(rows)
    for i in range(lp.b_ub.size):
        rows.append(lp.a_ub[i])
        rhs.append(lp.b_ub[i])
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        if np.isfinite(lp.lb[j]):
            rows.append(-e)
            rhs.append(-lp.lb[j])
        else:
            rows.append(-e)
            rhs.append(_BIG_BOX)
            art.append(len(rows) - 1)
        if np.isfinite(lp.ub[j]):
            rows.append(e)
            rhs.append(lp.ub[j])
        else:
            rows.append(e)
            rhs.append(_BIG_BOX)
            art.append(len(rows) - 1)

    a = np.asarray(rows)
    b = np.asarray(rhs)
    m = len(rows)
    free_slots = n - n_eq
    if free_slots < 0 or n_eq > n:
        raise TooLarge("oracle requires at most n equality rows")
    art_mask = np.zeros(m, dtype=bool)
    art_mask[art] = True
    real = ~art_mask
    scale = 1.0 + (float(np.max(np.abs(b[real]))) if real.any() else 0.0)

    best_obj = np.inf
    best_x = None
    feasible = False
    artificial_best = False

    combos = itertools.combinations(range(n_eq, m), free_slots)
    while True:
        chunk = list(itertools.islice(combos, _CHUNK))
        if not chunk:
            break
        idx = np.asarray(chunk, dtype=np.intp)
        full = np.concatenate(
            [np.broadcast_to(np.arange(n_eq), (idx.shape[0], n_eq)), idx],
            axis=1) if n_eq else idx
        subs = a[full]                       # (k, n, n)
        rhss = b[full]                       # (k, n)
        sv = np.linalg.svd(subs, compute_uv=False)
        ok = sv[:, -1] > 1e-10 * (1.0 + sv[:, 0])
        if not ok.any():
            continue
        xs = np.linalg.solve(subs[ok], rhss[ok][..., None])[..., 0]
        resid = xs @ a.T - b
        feas = np.max(resid, axis=1) <= feas_tol * scale
        if not feas.any():
            continue
        feasible = True
        objs = xs[feas] @ lp.c + lp.c0
        kbest = int(np.argmin(objs))
        if objs[kbest] < best_obj - 1e-12:
            best_obj = float(objs[kbest])
            best_x = xs[feas][kbest]
            active = full[ok][feas][kbest][n_eq:]
            artificial_best = bool(art_mask[active].any())

    if not feasible:
        return LpStatus.INFEASIBLE, None, np.nan
    if artificial_best:
        return LpStatus.UNBOUNDED, None, np.nan
    return LpStatus.OPTIMAL, best_x, best_obj


def milp_bruteforce_oracle(milp: MixedIntegerLinearProgram,
                           lp_solver=None) -> MilpSolution:
    """Enumerate binary assignments; solve the continuous rest.

    Each assignment fixes the binaries through their bounds; the remaining
    LP is solved by the supplied solver or, by default, the vertex oracle.
    Independent of branch and bound by construction.
    """
    milp.validate()
    lp = milp.base
    int_idx = np.nonzero(milp.integral)[0]
    if int_idx.size > MAX_ORACLE_BINARIES:
        raise TooLarge(
            f"oracle limited to {MAX_ORACLE_BINARIES} binary variables")

    best = MilpSolution(LpStatus.INFEASIBLE, None, np.nan, -np.inf, 0)
    for bits in itertools.product((0.0, 1.0), repeat=int_idx.size):
        lb = lp.lb.copy()
        ub = lp.ub.copy()
        ok = True
        for j, v in zip(int_idx, bits):
            if v < lp.lb[j] - 1e-12 or v > lp.ub[j] + 1e-12:
                ok = False
                break
            lb[j] = v
            ub[j] = v
        if not ok:
            continue
        fixed = LinearProgram(lp.c, lp.a_eq, lp.b_eq, lp.a_ub, lp.b_ub,
                              lb, ub)
        if lp_solver is not None:
            sol = lp_solver(fixed)
            status, x, obj = sol.status, sol.x, sol.objective
        else:
            status, x, obj = lp_bruteforce_oracle(fixed)
        if status is LpStatus.UNBOUNDED:
            return MilpSolution(LpStatus.UNBOUNDED, None, np.nan, -np.inf, 0)
        if status is LpStatus.OPTIMAL and (
                best.x is None or obj < best.objective - 1e-12):
            best = MilpSolution(LpStatus.OPTIMAL, x, obj, obj, 0)
    return best
