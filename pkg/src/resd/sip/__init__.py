"""Design-under-uncertainty engine: adaptive discretization outer loop,
worst-case oracles, and the feasibility time-step heuristic baseline."""
from .assemble import assemble_blocks, build_lbp
from .oracles import (
    OracleResult,
    maxmin_discretization,
    maxmin_vertex_enum,
    solve_recourse,
)
from .problem import (
    BlockLp,
    DiscretizationSet,
    EsipProblem,
    InfeasibleDesignSpace,
    IterationLimit,
    LlpInfeasible,
    RobustDesign,
    Scenario,
    SipTolerances,
    SolveLog,
    TimeLimit,
)
from .solver import evaluate_supply_gap, feasibility_timestep_heuristic, solve_esip

__all__ = [
    "BlockLp",
    "DiscretizationSet",
    "EsipProblem",
    "InfeasibleDesignSpace",
    "IterationLimit",
    "LlpInfeasible",
    "OracleResult",
    "RobustDesign",
    "Scenario",
    "SipTolerances",
    "SolveLog",
    "TimeLimit",
    "assemble_blocks",
    "build_lbp",
    "evaluate_supply_gap",
    "feasibility_timestep_heuristic",
    "maxmin_discretization",
    "maxmin_vertex_enum",
    "solve_esip",
    "solve_recourse",
]
