"""Benchmark system models and their physical/economic parameter sets."""
from .economics import (
    DEFAULT_COSTS,
    DEFAULT_ECONOMICS,
    ComponentCosts,
    EconomicParams,
    MissingYear,
    annuity_factor,
    diesel_variable_cost,
    inflation_adjust,
)
from .lapalma import (
    COMPONENTS,
    DESIGN_NAMES,
    HullUncertainty,
    LaPalmaTemplate,
    build_lapalma,
)
from .milp_example import (
    MilpExampleTemplate,
    MinPartLoadUncertainty,
    build_milp_example,
)
from .physics import (
    DEFAULT_TECHNICAL,
    NegativeIrradiance,
    TechnicalParams,
    solar_capacity_factor,
    wind_capacity_factor,
    wind_speed_at_hub,
)

__all__ = [
    "DEFAULT_COSTS",
    "DEFAULT_ECONOMICS",
    "DEFAULT_TECHNICAL",
    "COMPONENTS",
    "DESIGN_NAMES",
    "ComponentCosts",
    "EconomicParams",
    "HullUncertainty",
    "LaPalmaTemplate",
    "MilpExampleTemplate",
    "MinPartLoadUncertainty",
    "MissingYear",
    "NegativeIrradiance",
    "TechnicalParams",
    "annuity_factor",
    "build_lapalma",
    "build_milp_example",
    "diesel_variable_cost",
    "inflation_adjust",
    "solar_capacity_factor",
    "wind_capacity_factor",
    "wind_speed_at_hub",
]
