"""Shield A/B (Dicke-style) analysis: pairing and normalization of
relaxation-rate records, median confidence intervals, the one-sided
Wilcoxon signed-rank test, asymmetry statistics, PSD estimation with a
power-law fit, band-integrated noise power, and robustness maps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import signal
from scipy.stats import binom, norm, rankdata

from . import _kernels
from .errors import ConfigError, DataError

OMEGA_Q1 = 2 * math.pi * 3.48e9


@dataclass(frozen=True)
class AbRecord:
    """One T1 estimate in the shield A/B experiment."""

    qubit_id: str
    omega_q: float
    cycle: int
    position: str  # "up" | "down"
    repetition: int
    t1_us: float
    timestamp_s: float

    def __post_init__(self):
        if self.position not in ("up", "down"):
            raise DataError(f"position must be 'up' or 'down', got {self.position!r}")
        if not self.t1_us > 0:
            raise DataError("t1 must be > 0")

    @property
    def gamma1(self) -> float:
        """Rate in 1/s."""
        return 1e6 / self.t1_us


@dataclass(frozen=True)
class AnalysisConfig:
    t1_cutoff_us: float = 30.0
    outlier_sigma: float = 10.0
    omega_ref: float = OMEGA_Q1
    ci_level: float = 0.95
    pairing: str = "real"  # "real" | "no-move" | "shuffled"
    aggregation: str = "per-measurement"  # or "per-cycle"
    shuffle_seed: int = 0

    def __post_init__(self):
        if self.t1_cutoff_us < 0:
            raise ConfigError("t1 cutoff must be >= 0")
        if not self.outlier_sigma > 0:
            raise ConfigError("outlier sigma must be > 0")
        if self.pairing not in ("real", "no-move", "shuffled"):
            raise ConfigError(f"unknown pairing mode {self.pairing!r}")
        if self.aggregation not in ("per-measurement", "per-cycle"):
            raise ConfigError(f"unknown aggregation {self.aggregation!r}")


@dataclass
class PairedDiffs:
    """Normalized rate differences plus bookkeeping of removed pairs."""

    diffs: np.ndarray  # delta gamma1 in 1/s, frequency-normalized
    gamma_up: np.ndarray
    gamma_down: np.ndarray
    n_pairs: int
    n_removed_cutoff: int
    n_removed_outlier: int
    n_unmatched: int


def _collect_pairs(records: Sequence[AbRecord], cfg: AnalysisConfig):
    """Group records into (up, down) rate pairs.

    Returns arrays (gamma_up, gamma_down, omega) and the count of
    half-cycles that had no matching partner.
    """
    groups: dict[tuple, dict[str, list[AbRecord]]] = {}
    for rec in records:
        key = (rec.qubit_id, rec.cycle)
        groups.setdefault(key, {"up": [], "down": []})[rec.position].append(rec)

    g_up, g_down, omegas = [], [], []
    unmatched = 0
    for key in sorted(groups):
        block = groups[key]
        ups = sorted(block["up"], key=lambda r: r.repetition)
        downs = sorted(block["down"], key=lambda r: r.repetition)
        if cfg.aggregation == "per-cycle":
            if not ups or not downs:
                unmatched += 1
                continue
            g_up.append(np.mean([r.gamma1 for r in ups]))
            g_down.append(np.mean([r.gamma1 for r in downs]))
            omegas.append(ups[0].omega_q)
        else:
            n = min(len(ups), len(downs))
            unmatched += abs(len(ups) - len(downs))
            for k in range(n):
                g_up.append(ups[k].gamma1)
                g_down.append(downs[k].gamma1)
                omegas.append(ups[k].omega_q)
    return (
        np.asarray(g_up, dtype=float),
        np.asarray(g_down, dtype=float),
        np.asarray(omegas, dtype=float),
        unmatched,
    )


def _apply_pairing_mode(records, cfg):
    g_up, g_down, omega, unmatched = _collect_pairs(records, cfg)
    if cfg.pairing == "real":
        return g_up, g_down, omega, unmatched
    if cfg.pairing == "no-move":
        # compare consecutive same-position rates: a null by construction
        a = np.concatenate([g_up[0::2], g_down[0::2]])
        b = np.concatenate([g_up[1::2], g_down[1::2]])
        n = min(a.size, b.size)
        w = np.concatenate([omega[0::2], omega[0::2]])[:n]
        return a[:n], b[:n], w, unmatched
    # shuffled: randomize which down-measurement each up-measurement is
    # compared against
    rng = np.random.default_rng(np.random.SeedSequence([cfg.shuffle_seed]))
    perm = rng.permutation(g_down.size)
    return g_up, g_down[perm], omega, unmatched


def pair_and_normalize(
    records: Sequence[AbRecord], cfg: AnalysisConfig | None = None
) -> PairedDiffs:
    """Paired, frequency-normalized rate differences.

    Per pair: delta = (gamma_down - gamma_up) * sqrt(omega_ref / omega).
    Pairs where either T1 exceeds the cutoff are removed (rates below
    1/cutoff indicate poorly resolved decays), then pairs whose
    difference deviates more than ``outlier_sigma`` pooled standard
    deviations are removed.
    """
    cfg = cfg or AnalysisConfig()
    g_up, g_down, omega, unmatched = _apply_pairing_mode(records, cfg)
    if g_up.size == 0:
        raise DataError("no matched up/down pairs in the records")

    if cfg.t1_cutoff_us > 0:
        gamma_min = 1e6 / cfg.t1_cutoff_us
        keep = (g_up >= gamma_min) & (g_down >= gamma_min)
    else:
        keep = np.ones(g_up.size, dtype=bool)
    n_cutoff = int(np.sum(~keep))
    g_up, g_down, omega = g_up[keep], g_down[keep], omega[keep]
    if g_up.size == 0:
        raise DataError("no pairs survive the T1 cutoff")

    diffs = (g_down - g_up) * np.sqrt(cfg.omega_ref / omega)
    sd = diffs.std()
    keep = np.abs(diffs - diffs.mean()) <= cfg.outlier_sigma * sd if sd > 0 else np.ones(
        diffs.size, bool
    )
    n_outlier = int(np.sum(~keep))
    return PairedDiffs(
        diffs=diffs[keep],
        gamma_up=g_up[keep],
        gamma_down=g_down[keep],
        n_pairs=int(diffs[keep].size),
        n_removed_cutoff=n_cutoff,
        n_removed_outlier=n_outlier,
        n_unmatched=unmatched,
    )


@dataclass(frozen=True)
class MedianCI:
    median: float
    lower: float
    upper: float
    level: float
    method: str  # "normal-rank" | "exact-order"


def median_with_ci(values: Sequence[float], level: float = 0.95) -> MedianCI:
    """Median with rank-based confidence interval.

    Uses the normal approximation for the ranks of the order statistics
    bracketing the median; for n < 8 an exact binomial order-statistic
    interval is substituted (flagged in ``method``).
    """
    vals = np.sort(np.asarray(values, dtype=float))
    n = vals.size
    if n == 0:
        raise DataError("median of empty data")
    med = float(np.median(vals))
    if not 0 < level < 1:
        raise ConfigError("level must be in (0, 1)")
    z = norm.ppf(0.5 + level / 2.0)
    if n >= 8:
        lo_rank = int(math.floor((n - z * math.sqrt(n)) / 2.0))
        hi_rank = int(math.ceil(1.0 + (n + z * math.sqrt(n)) / 2.0))
        lo_rank = max(lo_rank, 1)
        hi_rank = min(hi_rank, n)
        return MedianCI(med, float(vals[lo_rank - 1]), float(vals[hi_rank - 1]), level, "normal-rank")
    # exact order-statistic interval
    k = 0
    while k + 1 <= n and binom.cdf(k, n, 0.5) <= (1.0 - level) / 2.0:
        k += 1
    lo = vals[max(k - 1, 0)] if k >= 1 else vals[0]
    hi = vals[min(n - k, n - 1)] if k >= 1 else vals[-1]
    return MedianCI(med, float(lo), float(hi), level, "exact-order")


@dataclass(frozen=True)
class WilcoxonResult:
    statistic: float  # positive-rank sum W+
    p_value: float
    n_effective: int
    method: str  # "exact" | "normal"


def wilcoxon_signed_rank(
    diffs: Sequence[float],
    alternative: str = "greater",
    method: str = "auto",
    exact_threshold: int = 25,
) -> WilcoxonResult:
    """Signed-rank test on paired differences.

    Zeros are dropped; ties get average ranks. The exact null
    distribution (dynamic programming over doubled ranks) is used for
    n <= ``exact_threshold``, otherwise the normal approximation with
    tie correction and continuity correction. ``alternative`` is
    "greater" (diffs tend positive), "less", or "two-sided".
    """
    if alternative not in ("greater", "less", "two-sided"):
        raise ConfigError(f"unknown alternative {alternative!r}")
    if method not in ("auto", "exact", "approx"):
        raise ConfigError(f"unknown method {method!r}")
    d = np.asarray(diffs, dtype=float)
    if d.size == 0:
        raise DataError("empty differences")
    d = d[d != 0]
    n = d.size
    if n == 0:
        raise DataError("all differences are zero: test undefined")

    ranks = rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())

    use_exact = method == "exact" or (method == "auto" and n <= exact_threshold)
    if use_exact:
        doubled = np.round(2.0 * ranks).astype(np.int64)
        counts = np.asarray(_kernels.signed_rank_counts(doubled))
        total = counts.sum()
        w2 = int(round(2.0 * w_plus))
        p_ge = counts[w2:].sum() / total
        p_le = counts[: w2 + 1].sum() / total
        if alternative == "greater":
            p = p_ge
        elif alternative == "less":
            p = p_le
        else:
            p = min(1.0, 2.0 * min(p_ge, p_le))
        return WilcoxonResult(w_plus, float(p), n, "exact")

    mu = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    var -= (tie_counts**3 - tie_counts).sum() / 48.0
    if var <= 0:
        raise DataError("zero variance: all differences tied at one value")
    sd = math.sqrt(var)
    if alternative == "greater":
        p = norm.sf((w_plus - mu - 0.5) / sd)
    elif alternative == "less":
        p = norm.cdf((w_plus - mu + 0.5) / sd)
    else:
        z = (w_plus - mu - math.copysign(0.5, w_plus - mu)) / sd
        p = min(1.0, 2.0 * norm.sf(abs(z)))
    return WilcoxonResult(w_plus, float(p), n, "normal")


@dataclass
class AsymmetryStats:
    values: np.ndarray
    median: float
    hist_counts: np.ndarray
    hist_edges: np.ndarray


def asymmetry_stats(
    records: Sequence[AbRecord],
    cfg: AnalysisConfig | None = None,
    bins: int = 101,
) -> AsymmetryStats:
    """Per-pair asymmetry A = 2 (gamma_d - gamma_u) / (gamma_d + gamma_u)
    with its median and histogram."""
    cfg = cfg or AnalysisConfig()
    paired = pair_and_normalize(records, cfg)
    a = 2.0 * (paired.gamma_down - paired.gamma_up) / (
        paired.gamma_down + paired.gamma_up
    )
    counts, edges = np.histogram(a, bins=bins)
    return AsymmetryStats(a, float(np.median(a)), counts, edges)


def asymmetry(gamma_down: float, gamma_up: float) -> float:
    return 2.0 * (gamma_down - gamma_up) / (gamma_down + gamma_up)


def psd_estimate(
    series: Sequence[float],
    dt_s: float,
    n_segments: int = 8,
    timestamps: Optional[Sequence[float]] = None,
):
    """Segment-averaged (Welch) periodogram with Hann window and 50%
    overlap. Returns (frequencies, psd) with the DC bin dropped.

    If ``timestamps`` are supplied, sampling must be uniform within 1%
    jitter of ``dt_s``.
    """
    x = np.asarray(series, dtype=float)
    if x.size < 64:
        raise DataError("need at least 64 samples for PSD estimation")
    if timestamps is not None:
        steps = np.diff(np.asarray(timestamps, dtype=float))
        if np.any(np.abs(steps - dt_s) > 0.01 * dt_s):
            raise DataError("non-uniform sampling beyond 1% jitter")
    nperseg = int(2 * x.size / (n_segments + 1))
    freqs, psd = signal.welch(
        x,
        fs=1.0 / dt_s,
        window="hann",
        nperseg=nperseg,
        noverlap=nperseg // 2,
        detrend="constant",
    )
    return freqs[1:], psd[1:]


def fit_psd_power_law(freqs, psd):
    """Log-log linear fit of S = const / f**alpha. Returns (alpha, const)."""
    f = np.asarray(freqs, dtype=float)
    s = np.asarray(psd, dtype=float)
    mask = (f > 0) & (s > 0)
    if mask.sum() < 2:
        raise DataError("not enough positive PSD points for a power-law fit")
    slope, intercept = np.polyfit(np.log10(f[mask]), np.log10(s[mask]), 1)
    return -float(slope), float(10.0**intercept)


def noise_power_in_band(
    const: float, alpha: float, f_lo: float, f_hi: float
) -> float:
    """Closed-form integral of const / f**alpha over [f_lo, f_hi] (us^2)."""
    if f_lo <= 0:
        raise ConfigError("f_lo must be > 0 (integral diverges for alpha >= 1)")
    if f_hi <= f_lo:
        raise ConfigError("f_hi must exceed f_lo")
    if alpha == 1.0:
        return const * math.log(f_hi / f_lo)
    e = 1.0 - alpha
    return const * (f_hi**e - f_lo**e) / e


@dataclass
class RobustnessMap:
    t1_cutoffs_us: np.ndarray
    outlier_sigmas: np.ndarray
    p_values: np.ndarray  # shape (len sigmas, len cutoffs)
    medians: np.ndarray
    valid: np.ndarray
    min_pairs: int = 8


def robustness_map(
    records: Sequence[AbRecord],
    t1_cutoffs_us: Sequence[float],
    outlier_sigmas: Sequence[float],
    cfg: AnalysisConfig | None = None,
    min_pairs: int = 8,
) -> RobustnessMap:
    """Rerun the full pipeline on a grid of post-processing parameters.

    Cells with fewer than ``min_pairs`` surviving pairs are marked
    invalid (p and median set to NaN)."""
    cfg = cfg or AnalysisConfig()
    cutoffs = np.asarray(list(t1_cutoffs_us), dtype=float)
    sigmas = np.asarray(list(outlier_sigmas), dtype=float)
    if cutoffs.size == 0 or sigmas.size == 0:
        raise ConfigError("cutoff grid must be nonempty")
    p_values = np.full((sigmas.size, cutoffs.size), np.nan)
    medians = np.full_like(p_values, np.nan)
    valid = np.zeros(p_values.shape, dtype=bool)
    for i, sig in enumerate(sigmas):
        for j, cut in enumerate(cutoffs):
            cell_cfg = AnalysisConfig(
                t1_cutoff_us=float(cut),
                outlier_sigma=float(sig),
                omega_ref=cfg.omega_ref,
                ci_level=cfg.ci_level,
                pairing=cfg.pairing,
                aggregation=cfg.aggregation,
                shuffle_seed=cfg.shuffle_seed,
            )
            try:
                paired = pair_and_normalize(records, cell_cfg)
            except DataError:
                continue
            if paired.n_pairs < min_pairs:
                continue
            try:
                test = wilcoxon_signed_rank(paired.diffs, alternative="greater")
            except DataError:
                continue
            p_values[i, j] = test.p_value
            medians[i, j] = float(np.median(paired.diffs))
            valid[i, j] = True
    return RobustnessMap(cutoffs, sigmas, p_values, medians, valid, min_pairs)
