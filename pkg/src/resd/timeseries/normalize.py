"""Per-quantity z-normalization over the full series."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import QUANTITIES, TimeSeriesDataset


class ConstantSeries(ValueError):
    pass


@dataclass(frozen=True)
class NormalizationModel:
    mean: np.ndarray   # one entry per quantity
    std: np.ndarray

    def normalize_values(self, values: np.ndarray) -> np.ndarray:
        return (values - self.mean) / self.std

    def denormalize_values(self, values: np.ndarray) -> np.ndarray:
        return values * self.std + self.mean

    def normalize_day_matrix(self, matrix: np.ndarray, n_steps: int) -> np.ndarray:
        return (matrix - self._flat(n_steps, self.mean)) / self._flat(n_steps, self.std)

    def denormalize_day_matrix(self, matrix: np.ndarray, n_steps: int) -> np.ndarray:
        return matrix * self._flat(n_steps, self.std) + self._flat(n_steps, self.mean)

    @staticmethod
    def _flat(n_steps: int, per_quantity: np.ndarray) -> np.ndarray:
        # day vectors are per-quantity T-blocks concatenated
        return np.repeat(per_quantity, n_steps)


def znormalize(ds: TimeSeriesDataset):
    """Returns (normalized D x T x 3 array, NormalizationModel).

    Each quantity gets sample mean 0 and standard deviation 1 over all
    D*T values. A constant quantity cannot be normalized.
    """
    flat = ds.values.reshape(-1, len(QUANTITIES))
    mean = flat.mean(axis=0)
    std = flat.std(axis=0)
    bad = np.nonzero(std <= 1e-15)[0]
    if bad.size:
        raise ConstantSeries(
            f"quantity {QUANTITIES[bad[0]]} is constant; cannot z-normalize")
    model = NormalizationModel(mean, std)
    return model.normalize_values(ds.values), model


def denormalize(model: NormalizationModel, values: np.ndarray) -> np.ndarray:
    return model.denormalize_values(values)
