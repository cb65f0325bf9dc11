"""KKT lifting and certification of worst-case maximizers."""
from .kkt import (
    KktResidual,
    LagrangianSystem,
    LiftedNlp,
    NonlinearLowerLevel,
    NotOptimal,
    build_lifted_nlp,
    kkt_residuals,
    recover_multipliers_from_lp_duals,
    verify_strong_duality,
)

__all__ = [
    "KktResidual",
    "LagrangianSystem",
    "LiftedNlp",
    "NonlinearLowerLevel",
    "NotOptimal",
    "build_lifted_nlp",
    "kkt_residuals",
    "recover_multipliers_from_lp_duals",
    "verify_strong_duality",
]
