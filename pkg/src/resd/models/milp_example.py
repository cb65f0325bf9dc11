"""Two-component illustrative design problem with a minimum part load.

Design capacities x1, x2 in [0, 100] with cost 2*x1 + x2. Uncertain
demand y in [0, 100] must be coverable by dispatch z1 <= x1 and, when the
second component is on (binary b), z2 <= x2. The uncertainty set couples
back to the design: y is admissible only when y - 0.2*x2 - 100*b <= 0,
which models a minimum part load of 20% on component 2.
"""
from __future__ import annotations

import numpy as np

from ..lp import LinearProgram, MixedIntegerLinearProgram
from ..sip.problem import BlockLp, EsipProblem

_BOX = 100.0
_MLP_BOX = 1000.0


class MilpExampleTemplate:
    """Operational blocks for the two-component example."""

    def scenario_block(self, block) -> BlockLp:
        raise NotImplementedError("this model has no representative scenarios")

    def entry_block(self, realization) -> BlockLp:
        """Disjunctive feasibility block for a discretization entry (y, b).

        A selector binary bu enforces either the supply-gap constraint
        (via aux1 = bu * gap) or membership violation of the uncertainty
        set (via aux2 = bu * x2):
          bu * (y - z1 - b*z2) <= 0
          (1 - bu) * (100*b + 0.2*x2 - y) <= 0
        Products are linearized exactly with per-entry interval bounds.
        """
        y, b = float(realization[0]), float(realization[1])
        # z layout: z1, z2, bu, aux1 (= bu*gap), aux2 (= bu*x2)
        lo = y - _BOX - b * _BOX   # gap lower bound over the z box
        hi = y
        z_lb = np.array([0.0, 0.0, 0.0, min(lo, 0.0), 0.0])
        z_ub = np.array([_BOX, _BOX, 1.0, max(hi, 0.0), _BOX])
        integral = np.array([False, False, True, False, False])

        rows_x, rows_z, rhs = [], [], []

        def add(ax, az, r):
            rows_x.append(ax)
            rows_z.append(az)
            rhs.append(r)

        # capacity limits: z1 <= x1, z2 <= b*x2
        add([-1, 0], [1, 0, 0, 0, 0], 0.0)
        add([0, -b], [0, 1, 0, 0, 0], 0.0)
        # relaxed gap constraint: aux1 <= 0
        add([0, 0], [0, 0, 0, 1, 0], 0.0)
        # aux1 = bu * (y - z1 - b*z2), gap expression bounded in [lo, hi]
        add([0, 0], [0, 0, -hi, 1, 0], 0.0)       # aux1 <= hi*bu
        add([0, 0], [0, 0, lo, -1, 0], 0.0)       # aux1 >= lo*bu
        add([0, 0], [1, b, -lo, 1, 0], y - lo)    # aux1 <= expr-lo(1-bu)
        add([0, 0], [-1, -b, hi, -1, 0], hi - y)  # aux1 >= expr-hi(1-bu)
        # membership escape: (1-bu)(100b + 0.2 x2 - y) <= 0, expanded with
        # aux2 = bu * x2:
        #   100b - y + 0.2 x2 - bu(100b - y) - 0.2 aux2 <= 0
        add([0, 0.2], [0, 0, y - _BOX * b, 0, -0.2],
            y - _BOX * b)
        # aux2 = bu * x2 with x2 in [0, 100]
        add([0, 0], [0, 0, -_BOX, 0, 1], 0.0)     # aux2 <= 100*bu
        add([0, -1], [0, 0, 0, 0, 1], 0.0)        # aux2 <= x2
        add([0, 1], [0, 0, _BOX, 0, -1], _BOX)    # aux2 >= x2-100(1-bu)

        return BlockLp(
            z_lb=z_lb, z_ub=z_ub, z_cost=np.zeros(5), integral=integral,
            a_x_eq=np.zeros((0, 2)), a_z_eq=np.zeros((0, 5)),
            b_eq=np.zeros(0),
            a_x_ub=np.asarray(rows_x, dtype=float),
            a_z_ub=np.asarray(rows_z, dtype=float),
            b_ub=np.asarray(rhs, dtype=float),
            names=["z1", "z2", "bu", "aux_gap", "aux_x2"],
        )

    def fixed_block(self, realization) -> BlockLp:
        """Unconditional feasibility block: the gap constraint is enforced
        outright at (y, b), with no membership escape. This is the form a
        finite-scenario heuristic would use."""
        y, b = float(realization[0]), float(realization[1])
        return BlockLp(
            z_lb=np.zeros(2), z_ub=np.full(2, _BOX),
            z_cost=np.zeros(2), integral=np.zeros(2, dtype=bool),
            a_x_eq=np.zeros((0, 2)), a_z_eq=np.zeros((0, 2)),
            b_eq=np.zeros(0),
            # y - z1 - b*z2 <= 0 ; z1 <= x1 ; z2 <= b*x2
            a_x_ub=np.array([[0.0, 0.0], [-1.0, 0.0], [0.0, -b]]),
            a_z_ub=np.array([[-1.0, -b], [1.0, 0.0], [0.0, 1.0]]),
            b_ub=np.array([-y, 0.0, 0.0]),
            names=["z1", "z2"],
        )

    def recourse_lp(self, x, realization) -> LinearProgram:
        """Operational problem at fixed design and (y, b): minimize the
        supply gap y - z1 - b*z2. All limits are explicit rows so the LP
        duals close the stationarity system exactly."""
        y, b = float(realization[0]), float(realization[1])
        a_ub = np.array([
            [1.0, 0.0],    # z1 <= x1
            [0.0, 1.0],    # z2 <= x2
            [1.0, 0.0],    # z1 <= 100
            [-1.0, 0.0],   # z1 >= 0
            [0.0, 1.0],    # z2 <= 100
            [0.0, -1.0],   # z2 >= 0
        ])
        b_ub = np.array([float(x[0]), float(x[1]), _BOX, 0.0, _BOX, 0.0])
        return LinearProgram(
            c=np.array([-1.0, -b]), c0=y, a_ub=a_ub, b_ub=b_ub,
            lb=np.full(2, -np.inf), ub=np.full(2, np.inf),
            names=["z1", "z2"],
            ub_names=["cap1", "cap2", "box1_hi", "box1_lo",
                      "box2_hi", "box2_lo"],
        )


class MinPartLoadUncertainty:
    """Box demand plus an on/off binary, coupled to the design via the
    minimum part load row y <= 0.2*x2 + 100*b."""

    def build_mlp(self, x, responses) -> MixedIntegerLinearProgram:
        """Medial-level problem: max the epigraph of the worst-case gap
        over recorded recourse responses (z1, z2)."""
        # vars: y, mlpobj, bm
        n_resp = len(responses)
        a_ub = np.zeros((n_resp + 1, 3))
        b_ub = np.zeros(n_resp + 1)
        for i, (z1, z2) in enumerate(responses):
            # mlpobj - y + z1 + bm*z2 <= 0
            a_ub[i] = [-1.0, 1.0, float(z2)]
            b_ub[i] = -float(z1)
        # mlpobj + y - 100*bm - 0.2*x2 <= 0
        a_ub[n_resp] = [1.0, 1.0, -_BOX]
        b_ub[n_resp] = 0.2 * float(x[1])
        lp = LinearProgram(
            c=np.array([0.0, -1.0, 0.0]), a_ub=a_ub, b_ub=b_ub,
            lb=np.array([0.0, -_MLP_BOX, 0.0]),
            ub=np.array([_BOX, _MLP_BOX, 1.0]),
            names=["y", "mlpobj", "bm"],
        )
        return MixedIntegerLinearProgram(
            lp, np.array([False, False, True]))

    @staticmethod
    def realization_from_mlp(msol):
        return (float(msol.x[0]), float(np.round(msol.x[2])))

    @staticmethod
    def response_from_llp(sol):
        return (float(sol.x[0]), float(sol.x[1]))


def build_milp_example() -> EsipProblem:
    return EsipProblem(
        design_names=["x1", "x2"],
        design_lb=np.zeros(2),
        design_ub=np.full(2, _BOX),
        design_cost=np.array([2.0, 1.0]),
        template=MilpExampleTemplate(),
        uncertainty=MinPartLoadUncertainty(),
        scenarios=[],
    )
