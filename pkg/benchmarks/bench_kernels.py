"""Benchmark: compiled pivot kernel vs the pure-Python fallback.

Solves the same batch of random dense LPs with both kernels and reports
wall time per size class plus the speedup. Results must agree bit for
bit; any mismatch aborts the run.

Usage: python3 benchmarks/bench_kernels.py [--sizes 20,60,120] [--reps 20]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from resd.lp import LinearProgram, solve_lp
from resd.lp import _simplex_py

try:
    from resd.lp import _simplex_cy
except ImportError:
    _simplex_cy = None


def random_lp(rng, n):
    m = max(1, n // 2)
    a_ub = rng.normal(size=(m, n))
    x0 = rng.uniform(0.0, 1.0, size=n)
    b_ub = a_ub @ x0 + rng.uniform(0.1, 1.0, size=m)
    c = rng.normal(size=n)
    return LinearProgram(c=c, a_ub=a_ub, b_ub=b_ub,
                         lb=np.zeros(n), ub=np.full(n, 10.0))


def run(kernel, lps):
    t0 = time.perf_counter()
    sols = [solve_lp(lp, kernel=kernel) for lp in lps]
    return time.perf_counter() - t0, sols


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="20,60,120")
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _simplex_cy is None:
        raise SystemExit("compiled kernel not built; run pip install -e .")

    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>5} {'python (s)':>12} {'compiled (s)':>12} {'speedup':>8}")
    for n in sizes:
        lps = [random_lp(rng, n) for _ in range(args.reps)]
        t_py, sols_py = run(_simplex_py, lps)
        t_cy, sols_cy = run(_simplex_cy, lps)
        for a, b in zip(sols_py, sols_cy):
            assert a.status == b.status
            if a.optimal:
                assert np.array_equal(a.x, b.x), "kernel results diverge"
                assert a.iterations == b.iterations
        print(f"{n:>5} {t_py:>12.3f} {t_cy:>12.3f} {t_py / t_cy:>8.2f}")


if __name__ == "__main__":
    main()
