"""Dense LP/MILP solver core: two-phase simplex plus branch and bound."""
from .backend import kernel_backend
from .branch_and_bound import solve_milp
from .enumerate import (
    MAX_ORACLE_BINARIES,
    MAX_ORACLE_VARS,
    lp_bruteforce_oracle,
    milp_bruteforce_oracle,
)
from .linearize import linearize_binary_product
from .model import (
    InvalidBounds,
    LinearProgram,
    LpError,
    LpSolution,
    LpStatus,
    LpTolerances,
    MilpSolution,
    MixedIntegerLinearProgram,
    NumericalBreakdown,
    TooLarge,
)
from .simplex import dual_objective, duality_gap, solve_lp

__all__ = [
    "InvalidBounds",
    "LinearProgram",
    "LpError",
    "LpSolution",
    "LpStatus",
    "LpTolerances",
    "MAX_ORACLE_BINARIES",
    "MAX_ORACLE_VARS",
    "MilpSolution",
    "MixedIntegerLinearProgram",
    "NumericalBreakdown",
    "TooLarge",
    "dual_objective",
    "duality_gap",
    "kernel_backend",
    "linearize_binary_product",
    "lp_bruteforce_oracle",
    "milp_bruteforce_oracle",
    "solve_lp",
    "solve_milp",
]
