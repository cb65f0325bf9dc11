"""Two-phase dense tableau simplex with exact basis re-solve.

The pivoting decisions run in a swappable kernel (compiled or pure Python);
the final primal point and row duals are recomputed from the optimal basis
with a fresh linear solve, so accumulated tableau drift does not leak into
the reported solution.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from ._simplex_py import (
    STATUS_BREAKDOWN,
    STATUS_ITERATION_LIMIT,
    STATUS_UNBOUNDED,
)
from .model import (
    LinearProgram,
    LpSolution,
    LpStatus,
    LpTolerances,
    NumericalBreakdown,
)

_SHIFT, _MIRROR, _POS, _NEG = 0, 1, 2, 3


@dataclass
class _StandardForm:
    a: np.ndarray          # m x (ns + nslack), rows negated to rhs >= 0
    b: np.ndarray
    c: np.ndarray          # phase-2 costs over structural + slack columns
    c0: float              # objective constant from variable shifts
    cols: list             # structural column -> (kind, var, offset)
    row_meta: list         # kept row -> (tag, index, sign); tag in eq/ub/bnd
    ns: int
    nslack: int


def _standardize(lp: LinearProgram) -> _StandardForm:
    n = lp.num_vars
    cols = []
    for j in range(n):
        lo, hi = lp.lb[j], lp.ub[j]
        if np.isfinite(lo):
            cols.append((_SHIFT, j, lo))
        elif np.isfinite(hi):
            cols.append((_MIRROR, j, hi))
        else:
            cols.append((_POS, j, 0.0))
            cols.append((_NEG, j, 0.0))
    ns = len(cols)

    def to_internal(row):
        out = np.zeros(ns)
        shift = 0.0
        for k, (kind, j, off) in enumerate(cols):
            a = row[j]
            if a == 0.0:
                continue
            if kind == _SHIFT:
                out[k] = a
                shift += a * off
            elif kind == _MIRROR:
                out[k] = -a
                shift += a * off
            elif kind == _POS:
                out[k] = a
            else:
                out[k] = -a
        return out, shift

    rows, rhs, meta, is_ineq = [], [], [], []
    for i in range(lp.b_eq.size):
        r, s = to_internal(lp.a_eq[i])
        rows.append(r)
        rhs.append(lp.b_eq[i] - s)
        meta.append(("eq", i, 1.0))
        is_ineq.append(False)
    for i in range(lp.b_ub.size):
        r, s = to_internal(lp.a_ub[i])
        rows.append(r)
        rhs.append(lp.b_ub[i] - s)
        meta.append(("ub", i, 1.0))
        is_ineq.append(True)
    # box rows for variables with two finite bounds
    for k, (kind, j, off) in enumerate(cols):
        if kind == _SHIFT and np.isfinite(lp.ub[j]):
            r = np.zeros(ns)
            r[k] = 1.0
            rows.append(r)
            rhs.append(lp.ub[j] - off)
            meta.append(("bnd", j, 1.0))
            is_ineq.append(True)

    m = len(rows)
    nslack = sum(is_ineq)
    a = np.zeros((m, ns + nslack))
    b = np.asarray(rhs, dtype=float)
    si = 0
    slack_col = [-1] * m
    for i in range(m):
        a[i, :ns] = rows[i]
        if is_ineq[i]:
            a[i, ns + si] = 1.0
            slack_col[i] = ns + si
            si += 1
    # make all rhs nonnegative
    for i in range(m):
        if b[i] < 0.0:
            a[i] *= -1.0
            b[i] *= -1.0
            tag, idx, _ = meta[i]
            meta[i] = (tag, idx, -1.0)

    c = np.zeros(ns + nslack)
    c0 = 0.0
    for k, (kind, j, off) in enumerate(cols):
        cj = lp.c[j]
        if kind == _SHIFT:
            c[k] = cj
            c0 += cj * off
        elif kind == _MIRROR:
            c[k] = -cj
            c0 += cj * off
        elif kind == _POS:
            c[k] = cj
        else:
            c[k] = -cj
    sf = _StandardForm(a, b, c, c0, cols, meta, ns, nslack)
    sf._slack_col = slack_col  # type: ignore[attr-defined]
    return sf


def _priced_cost_row(tab, basis, costs):
    m = tab.shape[0] - 1
    row = np.zeros(tab.shape[1])
    row[:-1] = costs
    for i in range(m):
        cb = costs[basis[i]]
        if cb != 0.0:
            row -= cb * tab[i]
    return row


def solve_lp(lp: LinearProgram, tol: LpTolerances = LpTolerances(),
             kernel=None) -> LpSolution:
    """Solve an LP; on Optimal also returns row duals and reduced costs."""
    lp.validate()
    if kernel is None:
        kernel = backend.kernel
    n = lp.num_vars
    if n == 0:
        return LpSolution(LpStatus.OPTIMAL, np.zeros(0), lp.c0,
                          np.zeros(lp.b_eq.size), np.zeros(lp.b_ub.size),
                          np.zeros(0))

    sf = _standardize(lp)
    m = sf.b.size
    width = sf.ns + sf.nslack
    art0 = width
    scale = 1.0 + (np.max(np.abs(sf.b)) if m else 0.0)

    tab = np.zeros((m + 1, width + m + 1))
    tab[:m, :width] = sf.a
    tab[:m, -1] = sf.b
    tab[:m, art0:art0 + m] = np.eye(m)
    basis = np.empty(m, dtype=np.int64)
    slack_col = sf._slack_col  # type: ignore[attr-defined]
    for i in range(m):
        if slack_col[i] >= 0 and sf.a[i, slack_col[i]] > 0.0:
            basis[i] = slack_col[i]
        else:
            basis[i] = art0 + i

    max_iter = tol.max_pivots_per_dim * (m + width) + 1000
    degen_limit = m + width + 20

    # phase 1: minimize artificial sum
    c1 = np.zeros(width + m)
    c1[art0:] = 1.0
    tab[m] = _priced_cost_row(tab, basis, c1)
    status, it1 = kernel.run_simplex(tab, basis, width, tol.reduced_cost,
                                     tol.pivot, max_iter, degen_limit)
    if status == STATUS_BREAKDOWN:
        raise NumericalBreakdown("phase-1 pivot below pivot tolerance")
    if status == STATUS_ITERATION_LIMIT:
        return LpSolution(LpStatus.ITERATION_LIMIT, iterations=it1)
    if -tab[m, -1] > tol.feas * scale:
        return LpSolution(LpStatus.INFEASIBLE, iterations=it1)

    # drive artificials out of the basis; drop redundant rows
    dead = []
    for i in range(m):
        if basis[i] >= art0:
            row = tab[i, :width]
            cand = np.nonzero(np.abs(row) > tol.pivot)[0]
            if cand.size == 0:
                dead.append(i)
                continue
            j = int(cand[np.argmax(np.abs(row[cand]))])
            piv = tab[i, j]
            tab[i] /= piv
            f = tab[:, j].copy()
            f[i] = 0.0
            tab -= f[:, None] * tab[i, None, :]
            basis[i] = j

    a0, b0, meta = sf.a, sf.b, sf.row_meta
    if dead:
        keep = [i for i in range(m) if i not in set(dead)]
        tab = np.ascontiguousarray(
            np.vstack([tab[keep], tab[m:]])
        )
        basis = basis[keep]
        a0 = a0[keep]
        b0 = b0[keep]
        meta = [meta[i] for i in keep]
        m = len(keep)
    # artificial columns are no longer needed
    tab = np.ascontiguousarray(np.hstack([tab[:, :width], tab[:, -1:]]))

    # phase 2
    tab[m] = _priced_cost_row(tab, basis, sf.c)
    status, it2 = kernel.run_simplex(tab, basis, width, tol.reduced_cost,
                                     tol.pivot, max_iter, degen_limit)
    iterations = it1 + it2
    if status == STATUS_BREAKDOWN:
        raise NumericalBreakdown("phase-2 pivot below pivot tolerance")
    if status == STATUS_ITERATION_LIMIT:
        return LpSolution(LpStatus.ITERATION_LIMIT, iterations=iterations)
    if status == STATUS_UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED, iterations=iterations)

    # exact recovery from the final basis
    bmat = a0[:, basis] if m else np.zeros((0, 0))
    try:
        xb = np.linalg.solve(bmat, b0) if m else np.zeros(0)
        y = np.linalg.solve(bmat.T, sf.c[basis]) if m else np.zeros(0)
    except np.linalg.LinAlgError:
        raise NumericalBreakdown("final basis matrix is singular")
    w = np.zeros(width)
    w[basis] = xb

    x = np.array([lp.lb[j] if np.isfinite(lp.lb[j]) else 0.0
                  for j in range(n)])
    x[~np.isfinite(lp.lb) & np.isfinite(lp.ub)] = 0.0
    for k, (kind, j, off) in enumerate(sf.cols):
        if kind == _SHIFT:
            x[j] = off + w[k]
        elif kind == _MIRROR:
            x[j] = off - w[k]
        elif kind == _POS:
            x[j] = w[k]
        else:
            x[j] -= w[k]
    objective = float(lp.c @ x) + lp.c0

    lam = np.zeros(lp.b_eq.size)
    mu = np.zeros(lp.b_ub.size)
    for i in range(m):
        tag, idx, sign = meta[i]
        if tag == "eq":
            lam[idx] = -sign * y[i]
        elif tag == "ub":
            mu[idx] = -sign * y[i]
    reduced = lp.c.copy()
    if lam.size:
        reduced += lp.a_eq.T @ lam
    if mu.size:
        reduced += lp.a_ub.T @ mu

    sol = LpSolution(LpStatus.OPTIMAL, x, objective, lam, mu, reduced,
                     iterations)
    _check_solution(lp, sol, tol, scale)
    return sol


def _check_solution(lp, sol, tol, scale):
    x = sol.x
    res = 0.0
    if lp.b_eq.size:
        res = max(res, float(np.max(np.abs(lp.a_eq @ x - lp.b_eq))))
    if lp.b_ub.size:
        res = max(res, float(np.max(lp.a_ub @ x - lp.b_ub)))
    res = max(res, float(np.max(np.maximum(lp.lb - x, 0.0), initial=0.0)))
    res = max(res, float(np.max(np.maximum(x - lp.ub, 0.0), initial=0.0)))
    if res > 1e3 * tol.feas * scale:
        raise NumericalBreakdown(f"primal residual {res:.3e} after basis solve")


def dual_objective(lp: LinearProgram, sol: LpSolution) -> float:
    """Lagrangian dual value implied by the returned multipliers.

    With reduced costs r = c + a_eq' lam + a_ub' mu, the dual bound is
    -lam.b_eq - mu.b_ub plus each variable's bound term r_j * lb_j (r_j > 0)
    or r_j * ub_j (r_j < 0).
    """
    dual = lp.c0
    if sol.eq_duals is not None and sol.eq_duals.size:
        dual -= float(sol.eq_duals @ lp.b_eq)
    if sol.ub_duals is not None and sol.ub_duals.size:
        dual -= float(sol.ub_duals @ lp.b_ub)
    r = sol.reduced_costs
    for j in range(lp.num_vars):
        if r[j] > 0.0 and np.isfinite(lp.lb[j]):
            dual += r[j] * lp.lb[j]
        elif r[j] < 0.0 and np.isfinite(lp.ub[j]):
            dual += r[j] * lp.ub[j]
    return dual


def duality_gap(lp: LinearProgram, sol: LpSolution) -> float:
    """|primal - dual| objective gap; nan when the solve was not optimal."""
    if not sol.optimal:
        return np.nan
    return abs(sol.objective - dual_objective(lp, sol))
