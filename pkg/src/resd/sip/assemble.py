"""Assembly of the lower bounding problem from design and block data."""
from __future__ import annotations

import numpy as np

from ..lp import LinearProgram, MixedIntegerLinearProgram
from .problem import DiscretizationSet, EsipProblem


def build_lbp(problem: EsipProblem,
              disc: DiscretizationSet) -> MixedIntegerLinearProgram:
    """Design problem over scenarios plus one feasibility block per
    discretization entry. Empty discretization gives the plain two-stage
    scenario design problem."""
    blocks = [(problem.template.scenario_block(s.block), s.weight)
              for s in problem.scenarios]
    blocks += [(problem.template.entry_block(y), 0.0) for y in disc.entries]
    return assemble_blocks(problem, blocks)


def assemble_blocks(problem: EsipProblem, blocks) -> MixedIntegerLinearProgram:
    """Stack design variables with weighted (block, weight) pairs."""
    nx = problem.n_design
    n_total = nx + sum(b.n_z for b, _ in blocks)

    c = np.zeros(n_total)
    lb = np.full(n_total, -np.inf)
    ub = np.full(n_total, np.inf)
    integral = np.zeros(n_total, dtype=bool)
    names = list(problem.design_names)

    c[:nx] = problem.design_cost
    lb[:nx] = problem.design_lb
    ub[:nx] = problem.design_ub

    eq_rows, eq_rhs, ub_rows, ub_rhs = [], [], [], []
    if problem.b_eq.size:
        full = np.zeros((problem.b_eq.size, n_total))
        full[:, :nx] = problem.a_eq
        eq_rows.append(full)
        eq_rhs.append(problem.b_eq)
    if problem.b_ub.size:
        full = np.zeros((problem.b_ub.size, n_total))
        full[:, :nx] = problem.a_ub
        ub_rows.append(full)
        ub_rhs.append(problem.b_ub)

    offset = nx
    for bi, (block, weight) in enumerate(blocks):
        nz = block.n_z
        sl = slice(offset, offset + nz)
        c[sl] = weight * block.z_cost
        lb[sl] = block.z_lb
        ub[sl] = block.z_ub
        integral[sl] = block.integral
        names.extend(f"b{bi}.{nm}" if nm else f"b{bi}.z{j}"
                     for j, nm in enumerate(
                         block.names or [""] * nz))
        if block.b_eq.size:
            full = np.zeros((block.b_eq.size, n_total))
            full[:, :nx] = block.a_x_eq
            full[:, sl] = block.a_z_eq
            eq_rows.append(full)
            eq_rhs.append(block.b_eq)
        if block.b_ub.size:
            full = np.zeros((block.b_ub.size, n_total))
            full[:, :nx] = block.a_x_ub
            full[:, sl] = block.a_z_ub
            ub_rows.append(full)
            ub_rhs.append(block.b_ub)
        offset += nz

    a_eq = np.vstack(eq_rows) if eq_rows else None
    b_eq = np.concatenate(eq_rhs) if eq_rows else None
    a_ub = np.vstack(ub_rows) if ub_rows else None
    b_ub = np.concatenate(ub_rhs) if ub_rows else None
    lp = LinearProgram(c=c, a_eq=a_eq, b_eq=b_eq, a_ub=a_ub, b_ub=b_ub,
                       lb=lb, ub=ub, names=names)
    return MixedIntegerLinearProgram(lp, integral)
