"""Problem representation for design-under-uncertainty solves.

An EsipProblem couples a design space (variables x with bounds, cost
vector, and design-only rows) with an operational template that can emit
three kinds of blocks:

  - scenario blocks: operational variables and rows for a representative
    scenario, contributing weighted cost to the objective;
  - entry blocks: pure feasibility blocks for one concrete uncertainty
    realization, used for discretization entries;
  - recourse LPs: the operational lower-level problem at fixed design and
    realization, minimized over the supply-gap epigraph variable.

All rows are affine in (x, z_block); binaries inside entry blocks are
allowed (they make the lower bounding problem a MILP).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


class InfeasibleDesignSpace(RuntimeError):
    pass


class IterationLimit(RuntimeError):
    pass


class TimeLimit(RuntimeError):
    pass


class LlpInfeasible(RuntimeError):
    """The recourse problem must always be feasible by construction."""


@dataclass(frozen=True)
class SipTolerances:
    feas_tol: float = 5e-2
    lbp_abs: float = 5e-3
    lbp_rel: float = 5e-3
    oracle_abs: float = 1e-2
    oracle_rel: float = 5e-3
    max_iterations: int = 100
    max_wall_s: float = float("inf")

    def validate(self) -> None:
        vals = (self.feas_tol, self.lbp_abs, self.lbp_rel, self.oracle_abs,
                self.oracle_rel, self.max_wall_s)
        if any(v <= 0 for v in vals) or self.max_iterations <= 0:
            raise ValueError("tolerances must be positive")
        if self.oracle_abs >= self.feas_tol:
            raise ValueError("oracle tolerance must be tighter than feas_tol")


@dataclass
class BlockLp:
    """One operational variable block with rows affine in (x, z)."""
    z_lb: np.ndarray
    z_ub: np.ndarray
    z_cost: np.ndarray          # per-unit-weight objective on z
    integral: np.ndarray        # bool mask over z
    a_x_eq: np.ndarray          # rows x design coefficients
    a_z_eq: np.ndarray
    b_eq: np.ndarray
    a_x_ub: np.ndarray
    a_z_ub: np.ndarray
    b_ub: np.ndarray
    names: list = field(default_factory=list)

    @property
    def n_z(self) -> int:
        return self.z_lb.size


@dataclass
class Scenario:
    block: np.ndarray   # T x 3 physical data (solar cf, wind cf, demand kW)
    weight: float       # objective weight (days represented per year)


@dataclass
class EsipProblem:
    design_names: list
    design_lb: np.ndarray
    design_ub: np.ndarray
    design_cost: np.ndarray
    template: object               # emits blocks; see module docstring
    uncertainty: object            # realization source for the oracle
    scenarios: list = field(default_factory=list)
    a_eq: np.ndarray | None = None   # design-only equality rows
    b_eq: np.ndarray | None = None
    a_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None

    def __post_init__(self):
        n = len(self.design_names)
        self.design_lb = np.asarray(self.design_lb, dtype=float)
        self.design_ub = np.asarray(self.design_ub, dtype=float)
        self.design_cost = np.asarray(self.design_cost, dtype=float)
        if self.a_eq is None:
            self.a_eq = np.zeros((0, n))
            self.b_eq = np.zeros(0)
        if self.a_ub is None:
            self.a_ub = np.zeros((0, n))
            self.b_ub = np.zeros(0)
        self.a_eq = np.atleast_2d(np.asarray(self.a_eq, dtype=float))
        self.a_ub = np.atleast_2d(np.asarray(self.a_ub, dtype=float))
        self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        self.b_ub = np.asarray(self.b_ub, dtype=float).ravel()

    @property
    def n_design(self) -> int:
        return len(self.design_names)


@dataclass
class DiscretizationSet:
    """Ordered worst-case realizations found by the oracle."""
    entries: list = field(default_factory=list)        # realization objects
    violations: list = field(default_factory=list)     # gap at insertion

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, realization, violation: float, dedup_tol: float = 1e-9) -> bool:
        flat = np.asarray(realization, dtype=float).ravel()
        for known in self.entries:
            other = np.asarray(known, dtype=float).ravel()
            if other.size == flat.size and np.max(np.abs(other - flat)) <= dedup_tol:
                return False
        self.entries.append(realization)
        self.violations.append(float(violation))
        return True


@dataclass
class SolveLog:
    records: list = field(default_factory=list)

    def append(self, iteration: int, lower_bound: float, oracle_value: float,
               n_lp: int, n_milp: int, elapsed_s: float) -> None:
        if self.records and lower_bound < self.records[-1]["lower_bound"] - 1e-9:
            raise ValueError("lower bounds must be nondecreasing")
        self.records.append({
            "iteration": iteration,
            "lower_bound": float(lower_bound),
            "oracle_value": float(oracle_value),
            "lp_solves": int(n_lp),
            "milp_solves": int(n_milp),
            "elapsed_s": float(elapsed_s),
        })

    def to_jsonl(self, include_timing: bool = False) -> str:
        lines = []
        for rec in self.records:
            out = dict(rec)
            if not include_timing:
                out.pop("elapsed_s")
            lines.append(json.dumps(out, sort_keys=True))
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class RobustDesign:
    x: np.ndarray
    design_names: list
    objective: float
    investment: float
    operational: float
    oracle_value: float
    status: str                 # "feasible" | "iteration_limit" | "time_limit"
    discretization: DiscretizationSet
    iterations: int

    def as_dict(self) -> dict:
        return {
            "design": {name: float(v) for name, v
                       in zip(self.design_names, self.x)},
            "objective": float(self.objective),
            "investment": float(self.investment),
            "operational": float(self.operational),
            "oracle_value": float(self.oracle_value),
            "status": self.status,
            "iterations": int(self.iterations),
            "n_discretization": len(self.discretization),
        }
