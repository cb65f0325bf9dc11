"""Pure-Python twin of the compiled tableau pivot kernel.

Both kernels must make bit-identical pivoting decisions: entering column by
Dantzig's rule (first minimum), Bland's rule after the degeneracy counter
trips, ratio test with ties broken by lowest basis index. The elementwise
arithmetic (normalize pivot row, then one multiply-subtract per cell) matches
the compiled loop, so results agree to the last bit.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"

STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_ITERATION_LIMIT = 2
STATUS_BREAKDOWN = 3


def run_simplex(tab, basis, allowed, eps, pivtol, max_iter, degen_limit):
    """Pivot `tab` (m constraint rows + cost row, rhs in last column) in place.

    Returns (status, iterations). `basis[i]` is the column basic in row i.
    Entering candidates are restricted to columns < allowed.
    """
    m = tab.shape[0] - 1
    rhs = tab.shape[1] - 1
    bland = False
    degen = 0
    it = 0
    while it < max_iter:
        cost = tab[m, :allowed]
        if not bland:
            q = int(np.argmin(cost))
            if cost[q] >= -eps:
                return STATUS_OPTIMAL, it
        else:
            viol = np.nonzero(cost < -eps)[0]
            if viol.size == 0:
                return STATUS_OPTIMAL, it
            q = int(viol[0])

        col = tab[:m, q]
        mask = col > pivtol
        if not mask.any():
            return STATUS_UNBOUNDED, it
        ratios = np.full(m, np.inf)
        ratios[mask] = tab[:m, rhs][mask] / col[mask]
        rmin = ratios.min()
        ties = np.nonzero(ratios == rmin)[0]
        if ties.size == 1:
            p = int(ties[0])
        else:
            p = int(ties[np.argmin(basis[ties])])

        piv = tab[p, q]
        if abs(piv) < pivtol:
            return STATUS_BREAKDOWN, it
        tab[p, :] /= piv
        factor = tab[:, q].copy()
        factor[p] = 0.0
        tab -= factor[:, None] * tab[p, None, :]
        basis[p] = q

        if rmin == 0.0:
            degen += 1
            if degen >= degen_limit:
                bland = True
        else:
            degen = 0
        it += 1
    return STATUS_ITERATION_LIMIT, it
