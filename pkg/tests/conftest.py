import itertools

import numpy as np
from scipy.stats import rankdata


def brute_force_wilcoxon(diffs, alternative="greater"):
    """Enumerate all 2^n sign assignments of the signed-rank statistic.

    Reference oracle for the exact test; only feasible for small n.
    """
    d = np.asarray(diffs, dtype=float)
    d = d[d != 0]
    n = d.size
    ranks = rankdata(np.abs(d))
    w_obs = ranks[d > 0].sum()
    stats = np.fromiter(
        (sum(r for r, bit in zip(ranks, signs) if bit)
         for signs in itertools.product((0, 1), repeat=n)),
        dtype=float,
        count=2**n,
    )
    eps = 1e-9
    p_ge = np.mean(stats >= w_obs - eps)
    p_le = np.mean(stats <= w_obs + eps)
    if alternative == "greater":
        return w_obs, p_ge
    if alternative == "less":
        return w_obs, p_le
    return w_obs, min(1.0, 2.0 * min(p_ge, p_le))
