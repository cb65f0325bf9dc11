"""Resource-to-capacity-factor conversions for the island system.

Solar output scales linearly with irradiance up to the nominal test
irradiance; wind output follows the 2350 kW reference turbine's power
curve evaluated at hub height via a logarithmic wind profile.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class NegativeIrradiance(ValueError):
    pass


# Reference turbine power curve, kW at integer wind speeds (m/s).
# Rated 2350 kW from 14 m/s, hard cutout at 25 m/s.
_POWER_CURVE_KW = (
    0.0, 0.0, 3.0, 25.0, 82.0, 174.0, 321.0, 532.0, 815.0, 1180.0,
    1580.0, 1890.0, 2100.0, 2250.0, 2350.0, 2350.0, 2350.0, 2350.0,
    2350.0, 2350.0, 2350.0, 2350.0, 2350.0, 2350.0, 2350.0,
)


@dataclass(frozen=True)
class TechnicalParams:
    eta_solar: float = 0.19                 # PV panel efficiency
    p_solar_nom: float = 0.171              # kW/m^2 nominal panel output
    power_curve_kw: tuple = _POWER_CURVE_KW  # knots at 0..24 m/s
    turbine_rated_kw: float = 2350.0
    h_hub: float = 85.0                     # m
    z0: float = 0.3                         # m, roughness length
    v_cutout: float = 25.0                  # m/s at hub
    eta_in: float = 0.92                    # battery charge efficiency
    eta_out: float = 0.926                  # battery discharge efficiency
    energy_power_ratio_h: float = 4.0       # kWh storable per kW rating
    soc_init_frac: float = 0.5

    def validate(self) -> None:
        if not (0.0 <= self.soc_init_frac <= 1.0):
            raise ValueError("initial SOC fraction must lie in [0, 1]")
        for v in (self.eta_solar, self.p_solar_nom, self.h_hub, self.z0,
                  self.v_cutout, self.eta_in, self.eta_out,
                  self.energy_power_ratio_h, self.turbine_rated_kw):
            if v <= 0:
                raise ValueError("technical parameters must be positive")


DEFAULT_TECHNICAL = TechnicalParams()


def solar_capacity_factor(irradiance_kw_m2, params: TechnicalParams = DEFAULT_TECHNICAL):
    """min(I * eta / P_nom, 1); scalar or array."""
    irr = np.asarray(irradiance_kw_m2, dtype=float)
    if np.any(irr < 0):
        raise NegativeIrradiance("irradiance must be nonnegative")
    cf = np.minimum(irr * params.eta_solar / params.p_solar_nom, 1.0)
    return float(cf) if np.isscalar(irradiance_kw_m2) else cf


def wind_speed_at_hub(v10, params: TechnicalParams = DEFAULT_TECHNICAL):
    """Logarithmic profile: v_hub = v10 * ln(h_hub/z0) / ln(10/z0)."""
    factor = math.log(params.h_hub / params.z0) / math.log(10.0 / params.z0)
    return np.asarray(v10, dtype=float) * factor if not np.isscalar(v10) \
        else float(v10) * factor


def wind_capacity_factor(v10, params: TechnicalParams = DEFAULT_TECHNICAL):
    """Interpolated turbine output at hub speed over rated power; 0 past cutout."""
    v_hub = np.asarray(wind_speed_at_hub(v10, params), dtype=float)
    knots = np.arange(len(params.power_curve_kw), dtype=float)
    out = np.interp(v_hub, knots, params.power_curve_kw)
    out = np.where(v_hub >= params.v_cutout, 0.0, out)
    cf = out / params.turbine_rated_kw
    return float(cf) if np.isscalar(v10) else cf
