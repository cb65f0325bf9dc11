"""Cost calculators: annuities, diesel variable cost, price indexing."""
from __future__ import annotations

from dataclasses import dataclass, field


class MissingYear(KeyError):
    pass


@dataclass(frozen=True)
class ComponentCosts:
    """Per-kW investment, per-kW-year fixed, per-kWh variable cost (EUR)."""
    c_inv: float
    c_fix: float
    c_var: float


# Canonical cost table used by the island model.
DEFAULT_COSTS = {
    "solar": ComponentCosts(883.3, 17.9, 0.0),
    "wind": ComponentCosts(2283.7, 26.9, 0.011),
    "diesel": ComponentCosts(2391.8, 0.0, 0.242),
    "battery": ComponentCosts(1550.0, 31.0, 0.0),
}


@dataclass(frozen=True)
class EconomicParams:
    interest: float = 0.08
    horizon_years: int = 25
    pr_fuel: float = 448.38          # EUR/t
    pr_logistics: float = 103.47     # EUR/t
    lhv_kwh_t: float = 11214.46      # lower heating value
    eta_therm: float = 0.41
    co_maintenance: float = 0.042    # EUR/kWh
    pr_co2: float = 80.821           # EUR/t
    fa_emission_t_mwh: float = 0.62  # t CO2 per MWh
    co_corr_p: float = 1.028
    co_corr_e: float = 1.0

    def validate(self) -> None:
        if self.interest <= 0 or self.horizon_years < 1:
            raise ValueError("interest must be > 0 and horizon >= 1 year")


DEFAULT_ECONOMICS = EconomicParams()


def annuity_factor(interest: float, horizon_years: int) -> float:
    """Present-value annuity factor ((1+i)^T - 1) / (i (1+i)^T)."""
    if interest <= 0 or horizon_years < 1:
        raise ValueError("interest must be > 0 and horizon >= 1 year")
    growth = (1.0 + interest) ** horizon_years
    return (growth - 1.0) / (interest * growth)


def diesel_variable_cost(econ: EconomicParams = DEFAULT_ECONOMICS) -> dict:
    """Per-kWh diesel cost breakdown.

    Fuel: (fuel + logistics price) per unit of delivered electricity.
    CO2: levy times emission factor (t/kWh) times correction factors.
    Dispatch: 1% of fuel plus CO2. Start-up and reduction terms are zero
    for a unit without minimum part load.

    Documentation calculator only: the model's cost table is canonical
    and is not recomputed from this breakdown.
    """
    co_fuel = (econ.pr_fuel + econ.pr_logistics) / (econ.lhv_kwh_t * econ.eta_therm)
    co_co2 = econ.pr_co2 * (econ.fa_emission_t_mwh / 1000.0) \
        * econ.co_corr_p * econ.co_corr_e
    co_dispatch = 0.01 * (co_fuel + co_co2)
    total = co_fuel + co_co2 + co_dispatch + econ.co_maintenance
    return {
        "co_fuel": co_fuel,
        "co_co2": co_co2,
        "co_dispatch": co_dispatch,
        "co_maintenance": econ.co_maintenance,
        "co_startup": 0.0,
        "co_reduction": 0.0,
        "total": total,
    }


def inflation_adjust(price: float, year: int, ppi_series: dict,
                     base_year: int = 2022) -> float:
    """Rescale a price to base-year money via average annual producer
    price indices; ppi_series maps year -> iterable of monthly values."""
    def annual_mean(yr):
        if yr not in ppi_series:
            raise MissingYear(f"no producer price index for year {yr}")
        vals = list(ppi_series[yr])
        if not vals or any(v <= 0 for v in vals):
            raise ValueError(f"invalid producer price index values for {yr}")
        return sum(vals) / len(vals)

    return price * annual_mean(base_year) / annual_mean(year)
