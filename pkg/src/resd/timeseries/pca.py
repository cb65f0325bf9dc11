"""Principal component analysis with a cyclic Jacobi eigendecomposition."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray           # length n_features
    components: np.ndarray     # n_dim x n_features, orthonormal rows
    explained_variance_ratio: np.ndarray   # per component
    eigenvalues: np.ndarray    # all eigenvalues, descending

    @property
    def n_dim(self) -> int:
        return self.components.shape[0]


def jacobi_eigh(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, eigenvectors-as-columns), unsorted.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch("matrix must be square")
    v = np.eye(n)
    scale = np.linalg.norm(a) + 1e-300
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2) * 2.0)
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot_p = c * a[:, p] - s * a[:, q]
                rot_q = s * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = rot_p, rot_q
                rot_p = c * a[p, :] - s * a[q, :]
                rot_q = s * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = rot_p, rot_q
                rot_p = c * v[:, p] - s * v[:, q]
                rot_q = s * v[:, p] + c * v[:, q]
                v[:, p], v[:, q] = rot_p, rot_q
    return np.diag(a).copy(), v


def pca_fit(matrix: np.ndarray, n_dim: int) -> PcaModel:
    """Fit the top n_dim components of the sample covariance.

    Deterministic sign convention: the largest-magnitude entry of every
    component is positive. Rank deficiency shows up as zero-variance
    trailing components, not as an error.
    """
    x = np.asarray(matrix, dtype=float)
    d, nf = x.shape
    if not (1 <= n_dim <= min(d, nf)):
        raise DimensionMismatch(
            f"n_dim must lie in [1, min(D, features)] = [1, {min(d, nf)}]")
    mean = x.mean(axis=0)
    xc = x - mean
    cov = (xc.T @ xc) / d
    eigvals, eigvecs = jacobi_eigh(cov)
    order = np.argsort(-eigvals, kind="stable")
    eigvals = np.maximum(eigvals[order], 0.0)
    eigvecs = eigvecs[:, order]
    total = eigvals.sum()
    ratios = eigvals / total if total > 0 else np.zeros_like(eigvals)
    comps = eigvecs[:, :n_dim].T.copy()
    for i in range(n_dim):
        j = int(np.argmax(np.abs(comps[i])))
        if comps[i, j] < 0:
            comps[i] = -comps[i]
    return PcaModel(mean, comps, ratios[:n_dim], eigvals)


def pca_project(model: PcaModel, day_vector: np.ndarray) -> np.ndarray:
    x = np.asarray(day_vector, dtype=float)
    if x.shape[-1] != model.mean.size:
        raise DimensionMismatch("day-vector length mismatch")
    return (x - model.mean) @ model.components.T


def pca_reconstruct(model: PcaModel, latent: np.ndarray) -> np.ndarray:
    p = np.asarray(latent, dtype=float)
    if p.shape[-1] != model.n_dim:
        raise DimensionMismatch("latent length mismatch")
    return model.mean + p @ model.components


def explained_variance_report(model: PcaModel) -> np.ndarray:
    """Cumulative explained-variance ratios for n = 1..rank."""
    total = model.eigenvalues.sum()
    if total <= 0:
        return np.zeros(0)
    return np.cumsum(model.eigenvalues) / total
