"""Pure-Python (NumPy) implementations of the hot kernels.

Same signatures and semantics as the compiled module ``_fastpath``; used
as the fallback when the extension is unavailable and as the reference
in the backend-equivalence tests and benchmarks.
"""

from __future__ import annotations

import numpy as np


def rk4_constant_g(x0, r, s, g, t_grid, h_max):
    """Integrate dx/dt = -r*x^2 - s*x + g over ``t_grid`` with fixed-step RK4.

    ``h_max`` caps the internal step; every grid interval is subdivided
    into an integer number of equal steps no larger than ``h_max``.
    Returns the solution sampled at the grid points (including the first).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    out = np.empty(t_grid.shape[0])
    x = float(x0)
    out[0] = x
    for i in range(1, t_grid.shape[0]):
        span = t_grid[i] - t_grid[i - 1]
        nsub = max(1, int(np.ceil(span / h_max))) if span > 0 else 1
        h = span / nsub
        for _ in range(nsub):
            k1 = -r * x * x - s * x + g
            x2 = x + 0.5 * h * k1
            k2 = -r * x2 * x2 - s * x2 + g
            x3 = x + 0.5 * h * k2
            k3 = -r * x3 * x3 - s * x3 + g
            x4 = x + h * k3
            k4 = -r * x4 * x4 - s * x4 + g
            x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i] = x
    return out


def signed_rank_counts(doubled_ranks):
    """Distribution of the signed-rank statistic under the null.

    ``doubled_ranks`` are the (tie-averaged) ranks multiplied by two so
    they are integers. Returns ``counts`` with ``counts[w]`` equal to the
    number of sign assignments whose positive-rank sum (doubled) is ``w``.
    Counts are float64; they are exact for sample sizes up to ~50.
    """
    doubled_ranks = np.asarray(doubled_ranks, dtype=np.int64)
    total = int(doubled_ranks.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    upper = 0
    for w in doubled_ranks:
        w = int(w)
        upper += w
        counts[w : upper + 1] += counts[: upper + 1 - w].copy()
    return counts
