"""Benchmark the compiled kernels against the pure NumPy fallback.

Run with ``python benchmarks/bench_kernels.py``. Selecting the backend
at import means both implementations can be timed in one process by
importing the modules directly rather than going through the selector.
"""

import argparse
import timeit

import numpy as np

from qprad._kernels import BACKEND, pure

try:
    from qprad._kernels import _fastpath
except ImportError:
    _fastpath = None


def bench(label, fn, number):
    t = min(timeit.repeat(fn, number=number, repeat=5)) / number
    print(f"  {label:<10} {t * 1e3:9.3f} ms/call")
    return t


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=2000, help="RK4 grid points")
    ap.add_argument("--nsub", type=int, default=50, help="RK4 substeps per interval")
    ap.add_argument("--n", type=int, default=200, help="signed-rank sample size")
    args = ap.parse_args()

    print(f"default backend: {BACKEND}")
    if _fastpath is None:
        print("compiled extension not available; timing the fallback only")

    grid = np.linspace(0.0, 1.0, args.points)
    h_max = (grid[1] - grid[0]) / args.nsub
    print(f"\nrk4_constant_g ({args.points} points, {args.nsub} substeps each)")
    t_pure = bench("python", lambda: pure.rk4_constant_g(1e-6, 1e7, 100.0, 1e-3, grid, h_max), 3)
    if _fastpath is not None:
        t_fast = bench(
            "compiled", lambda: _fastpath.rk4_constant_g(1e-6, 1e7, 100.0, 1e-3, grid, h_max), 20
        )
        print(f"  speedup   {t_pure / t_fast:8.1f}x")

    rng = np.random.default_rng(0)
    ranks = 2 * np.sort(rng.permutation(np.arange(1, args.n + 1)))
    print(f"\nsigned_rank_counts (n = {args.n})")
    t_pure = bench("python", lambda: pure.signed_rank_counts(ranks), 3)
    if _fastpath is not None:
        t_fast = bench("compiled", lambda: _fastpath.signed_rank_counts(ranks), 10)
        print(f"  speedup   {t_pure / t_fast:8.1f}x")


if __name__ == "__main__":
    main()
