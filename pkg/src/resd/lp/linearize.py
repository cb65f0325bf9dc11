"""Exact linearization of a binary times bounded-affine product.

Given a binary b and an affine expression e with known range [lo, hi],
an auxiliary variable v equals b*e on every feasible point of the four
rows below. Used to keep disjunctive lower bounding problems as MILPs.
"""
from __future__ import annotations

import numpy as np


def linearize_binary_product(n_vars: int, b_col: int, expr_row: np.ndarray,
                             expr_const: float, lo: float, hi: float,
                             aux_col: int):
    """Rows enforcing aux = b * (expr_row . x + expr_const).

    Returns (a_ub, b_ub) with four rows over n_vars columns:
      aux <= hi * b
      aux >= lo * b
      aux <= expr - lo * (1 - b)
      aux >= expr - hi * (1 - b)
    All rows are written in <= form. lo/hi must bound the expression over
    the feasible box or the reformulation is not exact.
    """
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError("expression bounds must be finite")
    if lo > hi:
        raise ValueError("lo exceeds hi")
    a = np.zeros((4, n_vars))
    rhs = np.zeros(4)

    # aux - hi*b <= 0
    a[0, aux_col] = 1.0
    a[0, b_col] = -hi
    # -aux + lo*b <= 0
    a[1, aux_col] = -1.0
    a[1, b_col] = lo
    # aux - expr - lo*b <= -lo
    a[2] = -expr_row
    a[2, aux_col] += 1.0
    a[2, b_col] += -lo
    rhs[2] = expr_const - lo
    # -aux + expr + hi*b <= hi
    a[3] = expr_row
    a[3, aux_col] += -1.0
    a[3, b_col] += hi
    rhs[3] = hi - expr_const
    return a, rhs
