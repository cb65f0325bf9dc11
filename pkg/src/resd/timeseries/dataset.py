"""Historical dataset container, CSV ingestion, and synthetic generation.

A dataset holds D days of T time steps for three quantities: solar
capacity factor, wind capacity factor (both dimensionless in [0, 1]) and
power demand in kW. CSV input carries raw irradiance and 10 m wind speed,
which are converted on ingestion.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from ..models import physics

QUANTITIES = ("solar_cf", "wind_cf", "demand_kw")

# observed island demand range used to scale synthetic data, kW
DEMAND_MIN_KW = 200.0
DEMAND_MAX_KW = 44_800.0


class SchemaError(ValueError):
    pass


class GapError(ValueError):
    pass


class RangeError(ValueError):
    pass


@dataclass
class TimeSeriesDataset:
    values: np.ndarray                      # D x T x 3
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 3 or self.values.shape[2] != len(QUANTITIES):
            raise SchemaError("values must have shape (days, steps, 3)")
        self.validate()

    @property
    def n_days(self) -> int:
        return self.values.shape[0]

    @property
    def n_steps(self) -> int:
        return self.values.shape[1]

    def validate(self) -> None:
        if not np.all(np.isfinite(self.values)):
            raise RangeError("dataset contains missing or non-finite values")
        cf = self.values[:, :, :2]
        if np.any(cf < 0.0) or np.any(cf > 1.0):
            raise RangeError("capacity factors must lie in [0, 1]")
        if np.any(self.values[:, :, 2] < 0.0):
            raise RangeError("demand must be nonnegative")

    def day_matrix(self) -> np.ndarray:
        """D x (T*3) matrix: per-quantity T-blocks concatenated per day."""
        d, t, q = self.values.shape
        return self.values.transpose(0, 2, 1).reshape(d, q * t)

    @staticmethod
    def from_day_matrix(matrix: np.ndarray, n_steps: int,
                        metadata: dict | None = None) -> "TimeSeriesDataset":
        m = np.asarray(matrix, dtype=float)
        d = m.shape[0]
        q = len(QUANTITIES)
        if m.shape[1] != q * n_steps:
            raise SchemaError("day-vector length must be steps * 3")
        vals = m.reshape(d, q, n_steps).transpose(0, 2, 1)
        return TimeSeriesDataset(vals, metadata or {})


def ingest_csv(path, params: physics.TechnicalParams = physics.DEFAULT_TECHNICAL
               ) -> TimeSeriesDataset:
    """Read `date,hour,ghi_kw_m2,wind_speed_10m_ms,demand_kw` into a dataset.

    Irradiance and wind speed are converted to capacity factors. Every date
    must cover hours 0..T-1 exactly once, with one common T across dates.
    """
    expected = ["date", "hour", "ghi_kw_m2", "wind_speed_10m_ms", "demand_kw"]
    by_date: dict = {}
    order: list = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != expected:
            raise SchemaError(f"header must be {','.join(expected)}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 5:
                raise SchemaError(f"row {lineno}: expected 5 columns")
            date = row[0].strip()
            try:
                hour = int(row[1])
                ghi = float(row[2])
                v10 = float(row[3])
                demand = float(row[4])
            except ValueError as exc:
                raise SchemaError(f"row {lineno}: {exc}") from None
            if date not in by_date:
                by_date[date] = {}
                order.append(date)
            if hour in by_date[date]:
                raise SchemaError(f"row {lineno}: duplicate hour {hour} "
                                  f"for {date}")
            if ghi < 0:
                raise RangeError(f"row {lineno}: negative irradiance")
            if v10 < 0:
                raise RangeError(f"row {lineno}: negative wind speed")
            if demand < 0:
                raise RangeError(f"row {lineno}: negative demand")
            by_date[date][hour] = (
                physics.solar_capacity_factor(ghi, params),
                physics.wind_capacity_factor(v10, params),
                demand,
            )
    if not by_date:
        raise SchemaError("file contains no data rows")

    n_steps = max(max(hours) for hours in by_date.values()) + 1
    days = []
    for date in order:
        hours = by_date[date]
        missing = sorted(set(range(n_steps)) - set(hours))
        extra = sorted(set(hours) - set(range(n_steps)))
        if missing or extra:
            raise GapError(f"day {date}: missing hours {missing}, "
                           f"unexpected hours {extra}")
        days.append([hours[h] for h in range(n_steps)])
    values = np.asarray(days, dtype=float)
    return TimeSeriesDataset(values, {"source": str(path), "dates": order})


def synth_generate(seed: int, n_days: int, n_steps: int,
                   params: physics.TechnicalParams = physics.DEFAULT_TECHNICAL
                   ) -> TimeSeriesDataset:
    """Deterministic synthetic dataset: diurnal sinusoids with a seasonal
    envelope and seeded noise, demand scaled to the observed island range."""
    rng = np.random.default_rng(seed)
    day = np.arange(n_days)[:, None]
    # phase of each step within the day, in [0, 1)
    phase = (np.arange(n_steps)[None, :] + 0.5) / n_steps
    season = 0.5 + 0.5 * np.sin(2.0 * np.pi * day / 365.25)

    # solar: zero outside a daylight window, sinusoidal bump inside it
    daylight = np.sin(np.pi * (phase - 0.25) / 0.5)
    daylight = np.where((phase >= 0.25) & (phase <= 0.75), daylight, 0.0)
    irradiance = (0.55 + 0.45 * season) * daylight \
        * (0.75 + 0.25 * rng.random((n_days, n_steps)))
    solar = np.minimum(irradiance * params.eta_solar / params.p_solar_nom, 1.0)
    solar = np.where(daylight > 0.0, solar, 0.0)

    # wind: smooth daily level plus in-day variation, through the turbine curve
    base_v10 = 4.0 + 5.0 * rng.random((n_days, 1)) + 2.0 * season
    v10 = base_v10 * (0.7 + 0.3 * np.sin(2.0 * np.pi * phase
                                         + rng.uniform(0, 2 * np.pi,
                                                       (n_days, 1))))
    v10 = np.maximum(v10, 0.0) + rng.random((n_days, n_steps))
    wind = physics.wind_capacity_factor(v10, params)

    # demand: morning/evening double peak, seasonal drift, bounded range
    shape = 0.6 + 0.25 * np.sin(2.0 * np.pi * phase - 0.6 * np.pi) \
        + 0.15 * np.sin(4.0 * np.pi * phase + 0.3 * np.pi)
    level = 0.55 + 0.3 * season + 0.15 * rng.random((n_days, 1))
    demand01 = np.clip(shape * level + 0.03 * rng.random((n_days, n_steps)),
                       0.0, 1.0)
    demand = DEMAND_MIN_KW + (DEMAND_MAX_KW - DEMAND_MIN_KW) * demand01

    values = np.stack([solar, wind, demand], axis=2)
    return TimeSeriesDataset(values, {"source": f"synth(seed={seed})",
                                      "seed": seed})
