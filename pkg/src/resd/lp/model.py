"""Problem and solution containers for the dense LP/MILP solver."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"
    NODE_LIMIT = "node_limit"


class LpError(Exception):
    pass


class NumericalBreakdown(LpError):
    """Pivot element below the pivot tolerance, or basis solve failed."""


class InvalidBounds(LpError):
    pass


class TooLarge(LpError):
    """Instance exceeds the brute-force oracle's variable cap."""


@dataclass(frozen=True)
class LpTolerances:
    feas: float = 1e-7
    duality: float = 1e-8
    integrality: float = 1e-6
    milp_abs_gap: float = 1e-6
    milp_rel_gap: float = 0.0
    pivot: float = 1e-9
    reduced_cost: float = 1e-9
    max_pivots_per_dim: int = 60
    node_limit: int = 200_000


@dataclass
class LinearProgram:
    """min c.x  s.t.  a_eq x = b_eq,  a_ub x <= b_ub,  lb <= x <= ub."""

    c: np.ndarray
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    a_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    lb: np.ndarray | None = None
    ub: np.ndarray | None = None
    c0: float = 0.0
    names: list[str] | None = None
    eq_names: list[str] | None = None
    ub_names: list[str] | None = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        n = self.c.size
        if self.a_eq is None:
            self.a_eq = np.zeros((0, n))
            self.b_eq = np.zeros(0)
        if self.a_ub is None:
            self.a_ub = np.zeros((0, n))
            self.b_ub = np.zeros(0)
        self.a_eq = np.atleast_2d(np.asarray(self.a_eq, dtype=float))
        self.a_ub = np.atleast_2d(np.asarray(self.a_ub, dtype=float))
        if self.a_eq.size == 0:
            self.a_eq = self.a_eq.reshape(0, n)
        if self.a_ub.size == 0:
            self.a_ub = self.a_ub.reshape(0, n)
        self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        self.b_ub = np.asarray(self.b_ub, dtype=float).ravel()
        if self.lb is None:
            self.lb = np.zeros(n)
        if self.ub is None:
            self.ub = np.full(n, np.inf)
        self.lb = np.asarray(self.lb, dtype=float).ravel()
        self.ub = np.asarray(self.ub, dtype=float).ravel()

    @property
    def num_vars(self) -> int:
        return self.c.size

    def validate(self) -> None:
        n = self.num_vars
        if self.a_eq.shape != (self.b_eq.size, n):
            raise InvalidBounds(f"a_eq shape {self.a_eq.shape} inconsistent with n={n}")
        if self.a_ub.shape != (self.b_ub.size, n):
            raise InvalidBounds(f"a_ub shape {self.a_ub.shape} inconsistent with n={n}")
        if self.lb.size != n or self.ub.size != n:
            raise InvalidBounds("bound vectors must have one entry per variable")
        if np.any(self.lb > self.ub + 1e-15):
            j = int(np.argmax(self.lb - self.ub))
            raise InvalidBounds(f"lower bound exceeds upper bound for variable {j}")
        for arr in (self.c, self.a_eq, self.b_eq, self.a_ub, self.b_ub):
            if arr.size and not np.all(np.isfinite(arr)):
                raise InvalidBounds("non-finite coefficient in problem data")

    def dump_text(self) -> str:
        """Plain-text debug dump: objective line, rows, bounds."""
        names = self.names or [f"x{j}" for j in range(self.num_vars)]

        def expr(coeffs):
            terms = [
                f"{coeffs[j]:+g} {names[j]}"
                for j in range(len(names))
                if coeffs[j] != 0.0
            ]
            return " ".join(terms) if terms else "0"

        head = f"min: {expr(self.c)}"
        if self.c0 != 0.0:
            head += f" {self.c0:+g}"
        lines = [head]
        for i in range(self.b_eq.size):
            label = self.eq_names[i] if self.eq_names else f"e{i}"
            lines.append(f"{label}: {expr(self.a_eq[i])} = {self.b_eq[i]:g}")
        for i in range(self.b_ub.size):
            label = self.ub_names[i] if self.ub_names else f"r{i}"
            lines.append(f"{label}: {expr(self.a_ub[i])} <= {self.b_ub[i]:g}")
        for j, name in enumerate(names):
            lines.append(f"{self.lb[j]:g} <= {name} <= {self.ub[j]:g}")
        return "\n".join(lines) + "\n"


@dataclass
class LpSolution:
    status: LpStatus
    x: np.ndarray | None = None
    objective: float = np.nan
    eq_duals: np.ndarray | None = None  # lambda, signed
    ub_duals: np.ndarray | None = None  # mu, nonnegative
    reduced_costs: np.ndarray | None = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass
class MixedIntegerLinearProgram:
    base: LinearProgram
    integral: np.ndarray = field(default=None)  # bool mask, True = binary

    def __post_init__(self):
        if self.integral is None:
            self.integral = np.zeros(self.base.num_vars, dtype=bool)
        self.integral = np.asarray(self.integral, dtype=bool).ravel()

    def validate(self) -> None:
        self.base.validate()
        if self.integral.size != self.base.num_vars:
            raise InvalidBounds("integrality mask size mismatch")
        mask = self.integral
        if np.any(self.base.lb[mask] < -1e-12) or np.any(self.base.ub[mask] > 1 + 1e-12):
            raise InvalidBounds("binary variables must have bounds within [0, 1]")


@dataclass
class MilpSolution:
    status: LpStatus
    x: np.ndarray | None = None
    objective: float = np.nan
    best_bound: float = -np.inf
    node_count: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL
