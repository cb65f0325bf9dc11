"""Representative-day selection by k-means on normalized day vectors."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import QUANTITIES
from .normalize import NormalizationModel

_MAX_LLOYD_ITERS = 500


@dataclass
class ScenarioSet:
    blocks: np.ndarray        # S x T x 3, physical units
    weights: np.ndarray       # omega_s, sums to 1
    cluster_sizes: np.ndarray
    assignments: np.ndarray   # day -> cluster
    inertia: float

    @property
    def n_scenarios(self) -> int:
        return self.blocks.shape[0]

    def validate(self) -> None:
        if abs(float(self.weights.sum()) - 1.0) > 1e-12:
            raise ValueError("scenario weights must sum to 1")
        n = int(self.cluster_sizes.sum())
        if not np.array_equal(self.weights, self.cluster_sizes / n):
            raise ValueError("weights must equal cluster_size / n_days")


def _kmeanspp_init(points: np.ndarray, k: int, rng) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    first = int(rng.integers(n))
    centers[0] = points[first]
    d2 = np.sum((points - centers[0]) ** 2, axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            # all remaining points coincide with a chosen center
            centers[j] = points[int(rng.integers(n))]
            continue
        probs = d2 / total
        pick = int(rng.choice(n, p=probs))
        centers[j] = points[pick]
        d2 = np.minimum(d2, np.sum((points - centers[j]) ** 2, axis=1))
    return centers


def _assign(points, centers):
    d2 = np.sum((points[:, None, :] - centers[None, :, :]) ** 2, axis=2)
    return np.argmin(d2, axis=1), d2


def kmeans_day_vectors(points: np.ndarray, k: int, seed: int):
    """Lloyd's algorithm to an assignment fixpoint.

    Returns (centers, assignments, inertia). Empty clusters are reseeded
    deterministically with the point farthest from its current center.
    """
    n = points.shape[0]
    if k > n:
        raise ValueError(f"k={k} exceeds number of days {n}")
    rng = np.random.default_rng(seed)
    centers = _kmeanspp_init(points, k, rng)
    assign, d2 = _assign(points, centers)
    for _ in range(_MAX_LLOYD_ITERS):
        for j in range(k):
            members = assign == j
            if not members.any():
                dist_own = d2[np.arange(n), assign]
                far = int(np.argmax(dist_own))
                centers[j] = points[far]
                assign[far] = j
                members = assign == j
            centers[j] = points[members].mean(axis=0)
        new_assign, d2 = _assign(points, centers)
        if np.array_equal(new_assign, assign):
            break
        assign = new_assign
    inertia = float(d2[np.arange(n), assign].sum())
    return centers, assign, inertia


def kmeans_scenarios(normalized_matrix: np.ndarray, k: int, seed: int,
                     norm_model: NormalizationModel, n_steps: int) -> ScenarioSet:
    """Cluster normalized day vectors; denormalize centroids into scenarios."""
    centers, assign, inertia = kmeans_day_vectors(normalized_matrix, k, seed)
    sizes = np.bincount(assign, minlength=k)
    n = normalized_matrix.shape[0]
    weights = sizes / n
    raw = norm_model.denormalize_day_matrix(centers, n_steps)
    q = len(QUANTITIES)
    blocks = raw.reshape(k, q, n_steps).transpose(0, 2, 1)
    # clip tiny averaging artifacts on the capacity-factor channels
    blocks[:, :, :2] = np.clip(blocks[:, :, :2], 0.0, 1.0)
    blocks[:, :, 2] = np.maximum(blocks[:, :, 2], 0.0)
    ss = ScenarioSet(blocks, weights, sizes, assign, inertia)
    ss.validate()
    return ss
