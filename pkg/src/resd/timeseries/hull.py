"""Convex-hull generator pruning via per-point feasibility LPs.

A latent point is redundant when it is a convex combination of the other
retained points; the test is one small LP per point. Retaining only the
non-redundant points preserves the hull exactly, with an LP certificate
stored for every removal.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..lp import LinearProgram, LpStatus, solve_lp

PRUNE_TOL = 1e-6


@dataclass
class GeneratorSet:
    points: np.ndarray            # retained latent points, n_v x n_dim
    pruned_points: np.ndarray     # removed latent points
    certificates: list            # per removed point: weights over retained
    original_count: int

    @property
    def n_generators(self) -> int:
        return self.points.shape[0]

    @property
    def n_dim(self) -> int:
        return self.points.shape[1]


def _combination_weights(target: np.ndarray, basis: np.ndarray):
    """Weights alpha >= 0, sum 1, with basis' alpha = target; None if infeasible."""
    n = basis.shape[0]
    if n == 0:
        return None
    a_eq = np.vstack([basis.T, np.ones((1, n))])
    b_eq = np.concatenate([target, [1.0]])
    lp = LinearProgram(c=np.zeros(n), a_eq=a_eq, b_eq=b_eq,
                       lb=np.zeros(n), ub=np.ones(n))
    sol = solve_lp(lp)
    if sol.status is not LpStatus.OPTIMAL:
        return None
    resid = float(np.max(np.abs(basis.T @ sol.x - target)))
    if resid > PRUNE_TOL or abs(float(sol.x.sum()) - 1.0) > PRUNE_TOL:
        return None
    return sol.x


def prune_generators(latent_points: np.ndarray) -> GeneratorSet:
    """Remove every latent point expressible by the other retained points.

    Exact duplicates are removed first (keeping the first occurrence).
    Each surviving point is then tested in index order against all other
    currently-retained points; removals are certified again at the end
    against the final retained set.
    """
    pts = np.asarray(latent_points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("latent points must be a 2-D array")
    n = pts.shape[0]

    retained = []
    removed_idx = []
    seen = set()
    for i in range(n):
        key = pts[i].tobytes()
        if key in seen:
            removed_idx.append(i)
        else:
            seen.add(key)
            retained.append(i)

    i = 0
    while i < len(retained):
        v = retained[i]
        others = retained[:i] + retained[i + 1:]
        if _combination_weights(pts[v], pts[others]) is not None:
            removed_idx.append(v)
            retained.pop(i)
        else:
            i += 1

    kept = pts[retained]
    removed_idx.sort()
    removed = pts[removed_idx] if removed_idx else np.zeros((0, pts.shape[1]))
    certificates = []
    for v in removed_idx:
        w = _combination_weights(pts[v], kept)
        if w is None:
            raise RuntimeError(
                f"pruned point {v} is not reproducible from the retained set")
        certificates.append(w)
    return GeneratorSet(kept, removed, certificates, n)
