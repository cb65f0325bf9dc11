"""Island energy system: solar, wind, diesel, and a battery.

The model is assembled in MW/MWh so that the default outer feasibility
tolerance (0.05) corresponds to a 50 kW supply gap. Costs stay in EUR,
with the kW-based cost table scaled by 1000.

Bilinear capacity terms P_peak * f are avoided by using component power
output P_out = P_peak * f as the operational variable, capped by
c_cap * P_peak; this keeps every subproblem linear. The worst-case
recourse problem keeps the original variable space (utilization factors,
battery states, epigraph variable) so LP duals certify its optimality
conditions directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..lp import LinearProgram
from ..sip.problem import BlockLp, EsipProblem, Scenario
from ..timeseries.hull import GeneratorSet
from ..timeseries.pca import PcaModel, pca_reconstruct
from . import economics, physics

COMPONENTS = ("solar", "wind", "diesel")
DESIGN_NAMES = ["P_solar_peak", "P_wind_peak", "P_diesel_peak",
                "P_battery_peak", "E_battery_peak"]

KW_PER_MW = 1000.0


class DimensionMismatch(ValueError):
    pass


@dataclass
class LaPalmaTemplate:
    n_steps: int
    params: physics.TechnicalParams = physics.DEFAULT_TECHNICAL
    costs: dict = None
    econ: economics.EconomicParams = economics.DEFAULT_ECONOMICS

    def __post_init__(self):
        if self.costs is None:
            self.costs = dict(economics.DEFAULT_COSTS)
        self.params.validate()
        self.econ.validate()

    @property
    def dt_seconds(self) -> float:
        return 86400.0 / self.n_steps

    @property
    def dt_hours(self) -> float:
        return 24.0 / self.n_steps

    # ----- scenario block ------------------------------------------------
    # z layout: P_out per component (3T, MW), battery in/out (2T, MW),
    # E states (T+1, MWh), E rates (T, MWh/s)
    def scenario_block(self, block) -> BlockLp:
        t_n = self.n_steps
        data = np.asarray(block, dtype=float)
        if data.shape != (t_n, 3):
            raise DimensionMismatch(f"scenario block must be {t_n} x 3")
        ccap = {"solar": data[:, 0], "wind": data[:, 1],
                "diesel": np.ones(t_n)}
        demand_mw = data[:, 2] / KW_PER_MW

        nz = 3 * t_n + 2 * t_n + (t_n + 1) + t_n
        po = {c: np.arange(i * t_n, (i + 1) * t_n)
              for i, c in enumerate(COMPONENTS)}
        bin_i = np.arange(3 * t_n, 4 * t_n)
        bout_i = np.arange(4 * t_n, 5 * t_n)
        e_i = np.arange(5 * t_n, 6 * t_n + 1)
        edot_i = np.arange(6 * t_n + 1, 7 * t_n + 1)

        z_lb = np.zeros(nz)
        z_ub = np.full(nz, np.inf)
        z_lb[edot_i] = -np.inf
        names = [f"po_{c}[{t}]" for c in COMPONENTS for t in range(t_n)]
        names += [f"b_in[{t}]" for t in range(t_n)]
        names += [f"b_out[{t}]" for t in range(t_n)]
        names += [f"E[{t}]" for t in range(t_n + 1)]
        names += [f"Edot[{t}]" for t in range(1, t_n + 1)]

        # variable cost per MW of output over one time step, in EUR
        z_cost = np.zeros(nz)
        for c in COMPONENTS:
            z_cost[po[c]] = self.dt_hours * KW_PER_MW * self.costs[c].c_var

        ax_ub, az_ub, b_ub = [], [], []
        ax_eq, az_eq, b_eq = [], [], []

        def ub_row(ax, az, r):
            ax_ub.append(ax)
            az_ub.append(az)
            b_ub.append(r)

        def eq_row(ax, az, r):
            ax_eq.append(ax)
            az_eq.append(az)
            b_eq.append(r)

        for t in range(t_n):
            # demand: d + b_in - b_out - sum_c po_c <= 0
            az = np.zeros(nz)
            az[bin_i[t]] = 1.0
            az[bout_i[t]] = -1.0
            for c in COMPONENTS:
                az[po[c][t]] = -1.0
            ub_row(np.zeros(5), az, -demand_mw[t])
            # capacity-factor caps: po_c <= ccap * P_peak
            for i, c in enumerate(COMPONENTS):
                ax = np.zeros(5)
                ax[i] = -ccap[c][t]
                az = np.zeros(nz)
                az[po[c][t]] = 1.0
                ub_row(ax, az, 0.0)
            # battery power limits
            for idx in (bin_i[t], bout_i[t]):
                ax = np.zeros(5)
                ax[3] = -1.0
                az = np.zeros(nz)
                az[idx] = 1.0
                ub_row(ax, az, 0.0)
            # state-of-charge capacity: E_t <= E_peak (t = 1..T)
            ax = np.zeros(5)
            ax[4] = -1.0
            az = np.zeros(nz)
            az[e_i[t + 1]] = 1.0
            ub_row(ax, az, 0.0)
            # charge-rate definition and forward Euler step
            az = np.zeros(nz)
            az[edot_i[t]] = 1.0
            az[bin_i[t]] = -self.params.eta_in / 3600.0
            az[bout_i[t]] = 1.0 / (3600.0 * self.params.eta_out)
            eq_row(np.zeros(5), az, 0.0)
            az = np.zeros(nz)
            az[edot_i[t]] = self.dt_seconds
            az[e_i[t + 1]] = -1.0
            az[e_i[t]] = 1.0
            eq_row(np.zeros(5), az, 0.0)
        # initial state of charge and cyclic recharge
        ax = np.zeros(5)
        ax[4] = -self.params.soc_init_frac
        az = np.zeros(nz)
        az[e_i[0]] = 1.0
        eq_row(ax, az, 0.0)
        az = np.zeros(nz)
        az[e_i[t_n]] = 1.0
        az[e_i[0]] = -1.0
        eq_row(np.zeros(5), az, 0.0)

        return BlockLp(
            z_lb=z_lb, z_ub=z_ub, z_cost=z_cost,
            integral=np.zeros(nz, dtype=bool),
            a_x_eq=np.asarray(ax_eq), a_z_eq=np.asarray(az_eq),
            b_eq=np.asarray(b_eq),
            a_x_ub=np.asarray(ax_ub), a_z_ub=np.asarray(az_ub),
            b_ub=np.asarray(b_ub), names=names,
        )

    # ----- discretization entry block ------------------------------------
    # Renewable output is pinned to the realization's capacity factors and
    # the diesel unit runs at full output, so only the battery is free.
    # z layout: battery in/out (2T), E (T+1), Edot (T); no cyclic row.
    def entry_block(self, realization) -> BlockLp:
        t_n = self.n_steps
        data = np.asarray(realization, dtype=float)
        if data.shape != (t_n, 3):
            raise DimensionMismatch(f"realization must be {t_n} x 3")
        f_solar, f_wind = data[:, 0], data[:, 1]
        demand_mw = data[:, 2] / KW_PER_MW

        nz = 2 * t_n + (t_n + 1) + t_n
        bin_i = np.arange(0, t_n)
        bout_i = np.arange(t_n, 2 * t_n)
        e_i = np.arange(2 * t_n, 3 * t_n + 1)
        edot_i = np.arange(3 * t_n + 1, 4 * t_n + 1)
        z_lb = np.zeros(nz)
        z_ub = np.full(nz, np.inf)
        z_lb[edot_i] = -np.inf
        names = [f"b_in[{t}]" for t in range(t_n)]
        names += [f"b_out[{t}]" for t in range(t_n)]
        names += [f"E[{t}]" for t in range(t_n + 1)]
        names += [f"Edot[{t}]" for t in range(1, t_n + 1)]

        ax_ub, az_ub, b_ub = [], [], []
        ax_eq, az_eq, b_eq = [], [], []
        for t in range(t_n):
            # d + b_in - b_out - f_solar*P_s - f_wind*P_w - P_d <= 0
            ax = np.array([-f_solar[t], -f_wind[t], -1.0, 0.0, 0.0])
            az = np.zeros(nz)
            az[bin_i[t]] = 1.0
            az[bout_i[t]] = -1.0
            ax_ub.append(ax)
            az_ub.append(az)
            b_ub.append(-demand_mw[t])
            for idx in (bin_i[t], bout_i[t]):
                ax = np.zeros(5)
                ax[3] = -1.0
                az = np.zeros(nz)
                az[idx] = 1.0
                ax_ub.append(ax)
                az_ub.append(az)
                b_ub.append(0.0)
            ax = np.zeros(5)
            ax[4] = -1.0
            az = np.zeros(nz)
            az[e_i[t + 1]] = 1.0
            ax_ub.append(ax)
            az_ub.append(az)
            b_ub.append(0.0)
            az = np.zeros(nz)
            az[edot_i[t]] = 1.0
            az[bin_i[t]] = -self.params.eta_in / 3600.0
            az[bout_i[t]] = 1.0 / (3600.0 * self.params.eta_out)
            ax_eq.append(np.zeros(5))
            az_eq.append(az)
            b_eq.append(0.0)
            az = np.zeros(nz)
            az[edot_i[t]] = self.dt_seconds
            az[e_i[t + 1]] = -1.0
            az[e_i[t]] = 1.0
            ax_eq.append(np.zeros(5))
            az_eq.append(az)
            b_eq.append(0.0)
        ax = np.zeros(5)
        ax[4] = -self.params.soc_init_frac
        az = np.zeros(nz)
        az[e_i[0]] = 1.0
        ax_eq.append(ax)
        az_eq.append(az)
        b_eq.append(0.0)

        return BlockLp(
            z_lb=z_lb, z_ub=z_ub, z_cost=np.zeros(nz),
            integral=np.zeros(nz, dtype=bool),
            a_x_eq=np.asarray(ax_eq), a_z_eq=np.asarray(az_eq),
            b_eq=np.asarray(b_eq),
            a_x_ub=np.asarray(ax_ub), a_z_ub=np.asarray(az_ub),
            b_ub=np.asarray(b_ub), names=names,
        )

    # ----- worst-case recourse LP ----------------------------------------
    def recourse_lp(self, x, realization) -> LinearProgram:
        """Operational problem at fixed design and realization, minimizing
        the supply-gap epigraph variable.

        Variables are free with every limit written as an explicit row,
        so the LP duals are exactly the multipliers of the stationarity
        system. The diesel utilization factor is a variable fixed to 1 by
        an equality row.
        """
        t_n = self.n_steps
        data = np.asarray(realization, dtype=float)
        if data.shape != (t_n, 3):
            raise DimensionMismatch(f"realization must be {t_n} x 3")
        f_solar, f_wind = data[:, 0], data[:, 1]
        demand_mw = data[:, 2] / KW_PER_MW
        p_solar, p_wind, p_diesel, p_batt, e_batt = (float(v) for v in x)

        # vars: b_in (T), b_out (T), E (T+1), Edot (T), f_diesel (T), e_epi
        nz = 2 * t_n + (t_n + 1) + t_n + t_n + 1
        bin_i = np.arange(0, t_n)
        bout_i = np.arange(t_n, 2 * t_n)
        e_i = np.arange(2 * t_n, 3 * t_n + 1)
        edot_i = np.arange(3 * t_n + 1, 4 * t_n + 1)
        fd_i = np.arange(4 * t_n + 1, 5 * t_n + 1)
        epi = nz - 1
        names = [f"b_in[{t}]" for t in range(t_n)]
        names += [f"b_out[{t}]" for t in range(t_n)]
        names += [f"E[{t}]" for t in range(t_n + 1)]
        names += [f"Edot[{t}]" for t in range(1, t_n + 1)]
        names += [f"f_diesel[{t}]" for t in range(t_n)]
        names += ["e_epi"]

        a_eq, b_eq, eq_names = [], [], []
        a_ub, b_ub, ub_names = [], [], []
        for t in range(t_n):
            row = np.zeros(nz)
            row[edot_i[t]] = 1.0
            row[bin_i[t]] = -self.params.eta_in / 3600.0
            row[bout_i[t]] = 1.0 / (3600.0 * self.params.eta_out)
            a_eq.append(row)
            b_eq.append(0.0)
            eq_names.append(f"rate[{t}]")
            row = np.zeros(nz)
            row[edot_i[t]] = self.dt_seconds
            row[e_i[t + 1]] = -1.0
            row[e_i[t]] = 1.0
            a_eq.append(row)
            b_eq.append(0.0)
            eq_names.append(f"euler[{t}]")
            row = np.zeros(nz)
            row[fd_i[t]] = 1.0
            a_eq.append(row)
            b_eq.append(1.0)
            eq_names.append(f"diesel_full[{t}]")
        row = np.zeros(nz)
        row[e_i[0]] = 1.0
        a_eq.append(row)
        b_eq.append(self.params.soc_init_frac * e_batt)
        eq_names.append("soc_init")

        for t in range(t_n):
            row = np.zeros(nz)
            row[bin_i[t]] = 1.0
            row[bout_i[t]] = -1.0
            row[fd_i[t]] = -p_diesel
            row[epi] = -1.0
            a_ub.append(row)
            b_ub.append(p_solar * f_solar[t] + p_wind * f_wind[t]
                        - demand_mw[t])
            ub_names.append(f"gap[{t}]")
        for t in range(t_n):
            for idx, hi, nm in ((bout_i[t], p_batt, "out_hi"),
                                (bin_i[t], p_batt, "in_hi")):
                row = np.zeros(nz)
                row[idx] = 1.0
                a_ub.append(row)
                b_ub.append(hi)
                ub_names.append(f"{nm}[{t}]")
                row = np.zeros(nz)
                row[idx] = -1.0
                a_ub.append(row)
                b_ub.append(0.0)
                ub_names.append(f"{nm.replace('_hi', '_lo')}[{t}]")
            row = np.zeros(nz)
            row[e_i[t + 1]] = 1.0
            a_ub.append(row)
            b_ub.append(e_batt)
            ub_names.append(f"soc_hi[{t}]")
            row = np.zeros(nz)
            row[e_i[t + 1]] = -1.0
            a_ub.append(row)
            b_ub.append(0.0)
            ub_names.append(f"soc_lo[{t}]")

        c = np.zeros(nz)
        c[epi] = 1.0
        return LinearProgram(
            c=c, a_eq=np.asarray(a_eq), b_eq=np.asarray(b_eq),
            a_ub=np.asarray(a_ub), b_ub=np.asarray(b_ub),
            lb=np.full(nz, -np.inf), ub=np.full(nz, np.inf),
            names=names, eq_names=eq_names, ub_names=ub_names,
        )

    def dispatch_energy(self, z_block: np.ndarray) -> dict:
        """Per-component energy (MWh) over one day from a scenario block."""
        t_n = self.n_steps
        out = {}
        for i, c in enumerate(COMPONENTS):
            out[c] = float(z_block[i * t_n:(i + 1) * t_n].sum()
                           * self.dt_hours)
        return out


class HullUncertainty:
    """Convex-combination uncertainty: latent generator points mapped back
    to capacity factors and demand through the PCA and normalization
    models. The worst case for a linear recourse lies on a generator."""

    def __init__(self, pca: PcaModel, norm,
                 gens: GeneratorSet, n_steps: int):
        if gens.n_dim != pca.n_dim:
            raise DimensionMismatch("generator and PCA dimensions differ")
        self.pca = pca
        self.norm = norm
        self.gens = gens
        self.n_steps = n_steps

    @property
    def n_generators(self) -> int:
        return self.gens.n_generators

    def realization(self, v: int) -> np.ndarray:
        """T x 3 realization at generator v.

        Capacity factors floor at zero (the recourse side of the
        reconstruction inequality); demand follows the reconstruction
        equality exactly.
        """
        latent = self.gens.points[v]
        day = pca_reconstruct(self.pca, latent)
        raw = self.norm.denormalize_day_matrix(day[None, :], self.n_steps)[0]
        t_n = self.n_steps
        block = raw.reshape(3, t_n).T.copy()
        block[:, 0] = np.maximum(block[:, 0], 0.0)
        block[:, 1] = np.maximum(block[:, 1], 0.0)
        return block


def build_lapalma(scenarios, pca: PcaModel,
                  norm, gens: GeneratorSet,
                  params: physics.TechnicalParams = physics.DEFAULT_TECHNICAL,
                  costs: dict | None = None,
                  econ: economics.EconomicParams = economics.DEFAULT_ECONOMICS
                  ) -> EsipProblem:
    """Assemble the island design problem from preprocessing artifacts."""
    costs = dict(costs) if costs else dict(economics.DEFAULT_COSTS)
    n_steps = scenarios.blocks.shape[1]
    if pca.mean.size != 3 * n_steps:
        raise DimensionMismatch("PCA layout does not match scenario steps")
    template = LaPalmaTemplate(n_steps=n_steps, params=params, costs=costs,
                               econ=econ)
    f_an = economics.annuity_factor(econ.interest, econ.horizon_years)

    design_cost = np.zeros(5)
    for i, c in enumerate(COMPONENTS):
        design_cost[i] = KW_PER_MW * (costs[c].c_inv / f_an + costs[c].c_fix)
    cb = costs["battery"]
    design_cost[3] = KW_PER_MW * (cb.c_inv / f_an + cb.c_fix)

    scen = [Scenario(scenarios.blocks[s], 365.0 * float(scenarios.weights[s]))
            for s in range(scenarios.n_scenarios)]
    # battery energy rating tied to its power rating
    a_eq = np.array([[0.0, 0.0, 0.0, -template.params.energy_power_ratio_h,
                      1.0]])
    return EsipProblem(
        design_names=list(DESIGN_NAMES),
        design_lb=np.zeros(5),
        design_ub=np.full(5, np.inf),
        design_cost=design_cost,
        template=template,
        uncertainty=HullUncertainty(pca, norm, gens, n_steps),
        scenarios=scen,
        a_eq=a_eq, b_eq=np.zeros(1),
    )
