"""Lifted single-level reformulation of the embedded worst-case problem.

The worst-case search max_y min_z is made single-level by replacing the
inner minimization with its optimality conditions: stationarity of the
Lagrangian in z, primal feasibility, multiplier signs, and
complementarity. For a linear lower level the conditions are exact, and
the multipliers come for free from the recourse LP duals, so a
vertex-enumeration maximizer can be certified as a feasible point of the
lifted system without any nonconvex solve.

Sign convention throughout: inequalities are stored as g <= 0 rows with
multipliers mu >= 0 and L = e_epi + lam' h + mu' g.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..lp import LinearProgram, LpSolution


class NonlinearLowerLevel(TypeError):
    """The lifting contract covers linear (convex) lower levels only."""


class NotOptimal(RuntimeError):
    """Multiplier recovery needs an Optimal recourse solution."""


@dataclass
class LagrangianSystem:
    """One instantiated certificate: rows, point, and multipliers.

    The recourse LP at (x, y) supplies the rows; z is the full recourse
    variable vector including the epigraph variable, whose value is the
    objective term.
    """
    c: np.ndarray
    c0: float
    a_eq: np.ndarray
    b_eq: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    x: np.ndarray
    y: object
    z: np.ndarray
    lam: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        if self.lam.size != self.b_eq.size or self.mu.size != self.b_ub.size:
            raise ValueError("multiplier lengths must match row counts")

    def lagrangian(self) -> float:
        val = float(self.c @ self.z) + self.c0
        if self.lam.size:
            val += float(self.lam @ (self.a_eq @ self.z - self.b_eq))
        if self.mu.size:
            val += float(self.mu @ (self.a_ub @ self.z - self.b_ub))
        return val

    def stationarity_residual(self) -> np.ndarray:
        r = self.c.copy()
        if self.lam.size:
            r += self.a_eq.T @ self.lam
        if self.mu.size:
            r += self.a_ub.T @ self.mu
        return r


@dataclass
class KktResidual:
    stationarity: float        # inf-norm of grad_z L
    complementarity: float     # max |mu_i * g_i|
    primal_infeasibility: float
    min_multiplier: float      # most negative mu entry (inf if no rows)

    def certified(self, stat_tol: float = 1e-6, comp_tol: float = 1e-8,
                  feas_tol: float = 1e-6, sign_tol: float = 1e-9) -> bool:
        return (self.stationarity <= stat_tol
                and self.complementarity <= comp_tol
                and self.primal_infeasibility <= feas_tol
                and self.min_multiplier >= -sign_tol)


@dataclass
class LiftedNlp:
    """Structure of the lifted system at a fixed design.

    Variables: realization coordinates y (n_y), convex-combination
    weights over the generators (n_latent, zero when the uncertainty set
    is not hull-described), recourse variables z (n_z), the epigraph
    variable, and the multipliers (lam, mu). The medial rows tie y to the
    weights through the latent reconstruction map.
    """
    x: np.ndarray
    template: object
    uncertainty: object
    n_y: int
    n_latent: int
    n_z: int            # recourse variables excluding the epigraph
    n_eq: int
    n_ub: int
    var_names: list
    eq_names: list
    ub_names: list

    @property
    def n_vars(self) -> int:
        return (self.n_y + self.n_latent) + self.n_z + 1 \
            + self.n_eq + self.n_ub

    def instantiate(self, realization, z, lam, mu) -> LagrangianSystem:
        lp = _linear_recourse(self.template, self.x, realization)
        return LagrangianSystem(
            c=lp.c, c0=lp.c0, a_eq=lp.a_eq, b_eq=lp.b_eq,
            a_ub=lp.a_ub, b_ub=lp.b_ub,
            x=np.asarray(self.x, dtype=float), y=realization,
            z=np.asarray(z, dtype=float),
            lam=np.asarray(lam, dtype=float),
            mu=np.asarray(mu, dtype=float),
        )

    def dump_text(self) -> str:
        """Row-annotated plain-text dump of the lifted system."""
        lines = [f"lifted system at x = {np.asarray(self.x).tolist()}"]
        lines.append(f"vars: y[{self.n_y}] alpha[{self.n_latent}] "
                     f"z[{self.n_z}] e_epi lam[{self.n_eq}] mu[{self.n_ub}]")
        lines.append("objective: L = e_epi + lam'h + mu'g")
        for j, nm in enumerate(self.var_names):
            lines.append(f"stationarity[{j}]: dL/d{nm} = 0")
        for i in range(self.n_ub):
            nm = self.ub_names[i] if self.ub_names else f"g{i}"
            lines.append(f"sign[{i}]: mu[{nm}] >= 0")
        for i in range(self.n_ub):
            nm = self.ub_names[i] if self.ub_names else f"g{i}"
            lines.append(f"complementarity[{i}]: mu[{nm}] * {nm} = 0")
        if self.n_latent:
            lines.append(f"medial: y = reconstruct(sum_v alpha_v gen_v), "
                         f"sum alpha = 1, alpha >= 0  ({self.n_latent} gens)")
        else:
            lines.append("medial: y ranges over its native description")
        return "\n".join(lines) + "\n"


def _linear_recourse(template, x, realization) -> LinearProgram:
    if not getattr(template, "lower_level_linear", True):
        raise NonlinearLowerLevel(
            "lifting is defined for linear lower levels only")
    lp = template.recourse_lp(x, realization)
    if not isinstance(lp, LinearProgram):
        raise NonlinearLowerLevel(
            f"recourse problem of type {type(lp).__name__} is not linear")
    if np.any(np.isfinite(lp.lb)) or np.any(np.isfinite(lp.ub)):
        raise NonlinearLowerLevel(
            "recourse variables must be free with limits as explicit rows")
    return lp


def build_lifted_nlp(x, problem, realization=None) -> LiftedNlp:
    """Materialize the lifted system's structure at a fixed design.

    A probe realization fixes the row counts: generator 0 for
    hull-described uncertainty, or an explicit realization otherwise.
    """
    unc = problem.uncertainty
    n_latent = int(getattr(unc, "n_generators", 0))
    if realization is None:
        if n_latent == 0:
            raise ValueError(
                "a probe realization is required for this uncertainty set")
        realization = unc.realization(0)
    lp = _linear_recourse(problem.template, x, realization)
    names = lp.names or [f"z{j}" for j in range(lp.num_vars)]
    return LiftedNlp(
        x=np.asarray(x, dtype=float),
        template=problem.template,
        uncertainty=unc,
        n_y=int(np.size(realization)),
        n_latent=n_latent,
        n_z=lp.num_vars - 1,
        n_eq=lp.b_eq.size,
        n_ub=lp.b_ub.size,
        var_names=list(names),
        eq_names=list(lp.eq_names) if lp.eq_names else [],
        ub_names=list(lp.ub_names) if lp.ub_names else [],
    )


def recover_multipliers_from_lp_duals(sol: LpSolution):
    """LP duals of the recourse solve, in the (lam, mu >= 0) convention."""
    if not sol.optimal:
        raise NotOptimal(f"recourse solution has status {sol.status}")
    lam = sol.eq_duals.copy() if sol.eq_duals is not None else np.zeros(0)
    mu = sol.ub_duals.copy() if sol.ub_duals is not None else np.zeros(0)
    return lam, mu


def kkt_residuals(lifted: LiftedNlp, point: LagrangianSystem) -> KktResidual:
    """The four certificate statistics at an instantiated point."""
    if point.z.size != lifted.n_z + 1:
        raise ValueError("point has wrong recourse dimension")
    stat = point.stationarity_residual()
    stationarity = float(np.max(np.abs(stat))) if stat.size else 0.0
    if point.mu.size:
        slack = point.b_ub - point.a_ub @ point.z
        comp = float(np.max(np.abs(point.mu * slack)))
        min_mu = float(np.min(point.mu))
    else:
        comp = 0.0
        min_mu = np.inf
    infeas = 0.0
    if point.b_eq.size:
        infeas = float(np.max(np.abs(point.a_eq @ point.z - point.b_eq)))
    if point.b_ub.size:
        infeas = max(infeas, float(np.max(point.a_ub @ point.z - point.b_ub)))
    return KktResidual(stationarity, comp, max(infeas, 0.0), min_mu)


def verify_strong_duality(lagr: LagrangianSystem, llp_objective: float,
                          tol: float = 1e-6):
    """Returns (ok, gap): the Lagrangian at the certificate must equal
    the recourse optimum, up to tol scaled by the objective size."""
    gap = abs(lagr.lagrangian() - llp_objective)
    return gap <= tol * (1.0 + abs(llp_objective)), gap
