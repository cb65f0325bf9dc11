"""Robust energy-system design under uncertainty.

Toolkit for sizing energy systems against worst-case weather and demand:
time-series reduction (normalization, clustering, principal components,
scenario-hull pruning), a dense LP/MILP solver, adaptive worst-case
discretization, and certificate checks for the worst-case subproblems.
"""

__version__ = "0.1.0"
