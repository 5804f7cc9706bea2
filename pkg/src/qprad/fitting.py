"""Parameter estimation by damped least squares.

All fits share one engine (`scipy.optimize.least_squares`, trust-region
reflective with bounds) and one result container. Covariances come from
the Gauss-Newton approximation (J^T J)^-1 on whitened residuals; when no
measurement uncertainties are supplied the covariance is scaled by the
reduced chi-square.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import least_squares
from scipy.stats import norm

from .errors import ConfigError, DataError
from .observables import QubitParams, qp_rate_coefficient
from .qp_dynamics import evolve_xqp_closed

_XTOL = 1e-12
_MAX_ITER = 200


@dataclass
class FitResult:
    params: dict[str, float]
    stderr: dict[str, float]
    cov: np.ndarray
    rss: float
    n_iter: int
    converged: bool
    model: str = ""
    n_points: int = 0
    notes: tuple[str, ...] = ()

    def ci95(self, name: str) -> tuple[float, float]:
        z = norm.ppf(0.975)
        return (
            self.params[name] - z * self.stderr[name],
            self.params[name] + z * self.stderr[name],
        )


def _run_fit(
    residual: Callable[[np.ndarray], np.ndarray],
    p0: np.ndarray,
    names: Sequence[str],
    bounds=(-np.inf, np.inf),
    scaled_cov: bool = True,
    model: str = "",
) -> FitResult:
    res = least_squares(
        residual,
        p0,
        bounds=bounds,
        method="trf",
        xtol=_XTOL,
        ftol=_XTOL,
        gtol=1e-12,
        max_nfev=_MAX_ITER * (len(p0) + 1),
    )
    n, k = res.fun.size, len(p0)
    rss = float(res.fun @ res.fun)
    jtj = res.jac.T @ res.jac
    notes = []
    try:
        cov = np.linalg.inv(jtj)
        ill_conditioned = not np.all(np.isfinite(cov))
    except np.linalg.LinAlgError:
        cov = np.linalg.pinv(jtj)
        ill_conditioned = True
    if ill_conditioned:
        notes.append("rank-deficient Jacobian; covariance is a pseudo-inverse")
    if scaled_cov and n > k:
        cov = cov * rss / (n - k)
    stderr = np.sqrt(np.clip(np.diag(cov), 0.0, np.inf))
    converged = bool(res.success) and not ill_conditioned
    return FitResult(
        params=dict(zip(names, map(float, res.x))),
        stderr=dict(zip(names, map(float, stderr))),
        cov=cov,
        rss=rss,
        n_iter=int(res.nfev),
        converged=converged,
        model=model,
        n_points=n,
        notes=tuple(notes),
    )


def _weights(y, sigma):
    if sigma is None:
        return np.ones_like(y), True
    sigma = np.asarray(sigma, dtype=float)
    if np.any(sigma <= 0):
        raise DataError("uncertainties must be > 0")
    return 1.0 / sigma, False


# ---------------------------------------------------------------------------
# exponential relaxation traces


def fit_exponential(
    t: Sequence[float],
    y: Sequence[float],
    sigma: Optional[Sequence[float]] = None,
) -> FitResult:
    """Fit y(t) = amplitude * exp(-gamma1 * t) + offset.

    Seeded by log-linear regression on offset-subtracted data. If the
    data do not decay the fit is returned with converged = False rather
    than raising.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.size < 4:
        raise DataError("need at least 4 points for an exponential fit")
    w, scaled = _weights(y, sigma)

    offset0 = float(np.min(y))
    amp0 = max(float(np.max(y) - offset0), 1e-12)
    resid = np.clip(y - offset0, amp0 * 1e-6, None)
    slope, _ = np.polyfit(t, np.log(resid), 1)
    gamma0 = max(-slope, 1e-3 / max(t[-1] - t[0], 1e-30))

    def residual(p):
        log_gamma, amp, off = p
        return w * (amp * np.exp(-np.exp(log_gamma) * t) + off - y)

    fit = _run_fit(
        residual,
        np.array([math.log(gamma0), amp0, offset0]),
        ["log_gamma", "amplitude", "offset"],
        scaled_cov=scaled,
        model="exponential",
    )
    log_gamma = fit.params.pop("log_gamma")
    gamma = math.exp(log_gamma)
    fit.params = {"gamma1": gamma, **fit.params}
    se = fit.stderr.pop("log_gamma") * gamma  # delta method
    fit.stderr = {"gamma1": se, **fit.stderr}
    # a decay is identified only if the amplitude is resolved
    amp_se = fit.stderr["amplitude"]
    if not np.isfinite(amp_se) or fit.params["amplitude"] <= 2.0 * amp_se:
        fit.converged = False
        fit.notes = fit.notes + ("amplitude not resolved: non-decaying data",)
    return fit


# ---------------------------------------------------------------------------
# rate vs power-density model


def fit_power_law_model(
    power: Sequence[float],
    gamma1: Sequence[float],
    sigma: Optional[Sequence[float]],
    omega: float,
    fix_gamma_other: Optional[float] = None,
    a_grid: Sequence[float] = (1e-4, 1e-3, 1e-2, 1e-1),
) -> FitResult:
    """Fit gamma1 = a * sqrt(omega * P) + gamma_other.

    Multi-start over a log grid of ``a`` seeds; ``fix_gamma_other`` pins
    the offset (e.g. to 0 for the offset-free variant). Requires at
    least 3 distinct power values; identical powers are flagged as
    rank-deficient."""
    p = np.asarray(power, dtype=float)
    g = np.asarray(gamma1, dtype=float)
    if np.unique(p).size < 3:
        raise DataError("need at least 3 distinct power values")
    if np.any(p < 0):
        raise DataError("power densities must be >= 0")
    w, scaled = _weights(g, sigma)
    root = np.sqrt(omega * p)

    best: FitResult | None = None
    for a0 in a_grid:
        if fix_gamma_other is None:

            def residual(q):
                return w * (q[0] * root + q[1] - g)

            fit = _run_fit(
                residual,
                np.array([a0, max(float(g.min()), 0.0)]),
                ["a", "gamma_other"],
                bounds=([0.0, 0.0], [np.inf, np.inf]),
                scaled_cov=scaled,
                model="sqrt-power",
            )
        else:

            def residual(q):
                return w * (q[0] * root + fix_gamma_other - g)

            fit = _run_fit(
                residual,
                np.array([a0]),
                ["a"],
                bounds=([0.0], [np.inf]),
                scaled_cov=scaled,
                model="sqrt-power-fixed-offset",
            )
            fit.params["gamma_other"] = float(fix_gamma_other)
            fit.stderr["gamma_other"] = 0.0
        if best is None or fit.rss < best.rss:
            best = fit
    return best


# ---------------------------------------------------------------------------
# quasiparticle injection recovery


_INJECTION_VARIANTS = {
    # name -> (free rates, fit gamma_other)
    "full": (("r", "s"), True),
    "recombination": (("r",), True),
    "recombination_no_other": (("r",), False),
    "trapping": (("s",), True),
    "trapping_no_other": (("s",), False),
}


def _injection_model(t, x0, r, s, gamma_other, coeff):
    x = np.array([evolve_xqp_closed(x0, r, s, ti) for ti in t])
    return coeff * x + gamma_other


def fit_injection(
    t: Sequence[float],
    gamma1: Sequence[float],
    qubit: QubitParams,
    sigma: Optional[Sequence[float]] = None,
) -> dict:
    """Fit the injection decay gamma1(t) = C(omega) x(t) + gamma_other
    under five model variants (full, recombination-only and
    trapping-only, each with and without gamma_other).

    Returns {"fits": {variant: FitResult}, "ranking": [variant, ...]}
    ordered by residual sum of squares."""
    t = np.asarray(t, dtype=float)
    g = np.asarray(gamma1, dtype=float)
    if t.size < 6:
        raise DataError("need at least 6 delay points")
    w, scaled = _weights(g, sigma)
    coeff = qp_rate_coefficient(qubit)

    g_inf = float(np.min(g))
    x0_guess = max((float(g[0]) - g_inf) / coeff, 1e-12)
    t_scale = max(float(t[t > 0].min()) if np.any(t > 0) else 1e-3, 1e-6)
    r0 = 1.0 / (x0_guess * t_scale * 10.0)
    s0 = 1.0 / (t_scale * 10.0)

    fits: dict[str, FitResult] = {}
    for name, (rates, fit_other) in _INJECTION_VARIANTS.items():
        names = ["x0"] + list(rates) + (["gamma_other"] if fit_other else [])
        p0 = {"x0": x0_guess, "r": r0, "s": s0, "gamma_other": g_inf}
        lo = {"x0": 0.0, "r": 0.0, "s": 0.0, "gamma_other": 0.0}
        hi = {"x0": 1.0, "r": np.inf, "s": np.inf, "gamma_other": np.inf}

        def residual(p, names=names, rates=rates, fit_other=fit_other):
            vals = dict(zip(names, p))
            r = vals.get("r", 0.0)
            s = vals.get("s", 0.0)
            other = vals.get("gamma_other", 0.0)
            return w * (_injection_model(t, vals["x0"], r, s, other, coeff) - g)

        fit = _run_fit(
            residual,
            np.array([p0[n] for n in names]),
            names,
            bounds=([lo[n] for n in names], [hi[n] for n in names]),
            scaled_cov=scaled,
            model=f"injection-{name}",
        )
        for n in ("r", "s", "gamma_other"):
            fit.params.setdefault(n, 0.0)
            fit.stderr.setdefault(n, 0.0)
        fits[name] = fit
    ranking = sorted(fits, key=lambda n: fits[n].rss)
    return {"fits": fits, "ranking": ranking}


# ---------------------------------------------------------------------------
# exponential half-life trends


def fit_halflife(
    t: Sequence[float],
    y: Sequence[float],
    sigma: Optional[Sequence[float]] = None,
) -> FitResult:
    """Fit y(t) = y_inf + amplitude * 2**(-t / t_half)."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.size < 4:
        raise DataError("need at least 4 points for a half-life fit")
    w, scaled = _weights(y, sigma)

    y_inf0 = float(y[-1])
    amp0 = float(y[0] - y_inf0)
    span = max(float(t[-1] - t[0]), 1e-30)

    def residual(p):
        log_th, amp, y_inf = p
        return w * (y_inf + amp * 2.0 ** (-t / math.exp(log_th)) - y)

    fit = _run_fit(
        residual,
        np.array([math.log(span / 2.0), amp0, y_inf0]),
        ["log_t_half", "amplitude", "y_inf"],
        scaled_cov=scaled,
        model="half-life",
    )
    log_th = fit.params.pop("log_t_half")
    t_half = math.exp(log_th)
    fit.params = {"t_half": t_half, **fit.params}
    se = fit.stderr.pop("log_t_half") * t_half
    fit.stderr = {"t_half": se, **fit.stderr}
    amp_se = fit.stderr["amplitude"]
    if not np.isfinite(amp_se) or abs(fit.params["amplitude"]) <= 2.0 * amp_se:
        fit.converged = False
        fit.notes = fit.notes + ("amplitude not resolved: half-life unidentifiable",)
    return fit


# ---------------------------------------------------------------------------
# scintillator spectrum model


@dataclass(frozen=True)
class SpectrumModel:
    """Detector response: quadratic energy-to-ADC scale, quadratic
    resolution variance, and non-negative template weights."""

    c0: float
    c1: float
    c2: float
    sig0_sq: float
    sig1_sq: float
    sig2_sq: float
    weights: tuple[float, ...] = ()

    def adc_of_energy(self, e):
        e = np.asarray(e, dtype=float)
        return self.c0 + self.c1 * e + self.c2 * e * e

    def variance_of_energy(self, e):
        e = np.asarray(e, dtype=float)
        return self.sig0_sq + self.sig1_sq * e + self.sig2_sq * e * e

    def validate_over(self, energies):
        if np.any(self.variance_of_energy(energies) <= 0):
            raise ConfigError("resolution variance must be > 0 over the fit range")
        if any(w < 0 for w in self.weights):
            raise ConfigError("template weights must be >= 0")


def smear_template(
    energies: Sequence[float],
    counts: Sequence[float],
    model: SpectrumModel,
    adc_edges: Sequence[float],
) -> np.ndarray:
    """Convolve an energy-binned template with the Gaussian detector
    response onto ADC bins.

    Each template bin contributes counts * (Phi(edge_hi) - Phi(edge_lo))
    with mean c0 + c1 E + c2 E^2 and variance sig0^2 + sig1^2 E +
    sig2^2 E^2, so total counts are conserved when the ADC range covers
    the smeared support."""
    energies = np.asarray(energies, dtype=float)
    counts = np.asarray(counts, dtype=float)
    edges = np.asarray(adc_edges, dtype=float)
    model.validate_over(energies)
    mu = model.adc_of_energy(energies)
    sd = np.sqrt(model.variance_of_energy(energies))
    # CDF at every (edge, template bin) pair
    z = (edges[:, None] - mu[None, :]) / sd[None, :]
    cdf = norm.cdf(z)
    frac = np.diff(cdf, axis=0)
    return frac @ counts


def fit_spectrum(
    adc_edges: Sequence[float],
    measured: Sequence[float],
    templates: Sequence[tuple[Sequence[float], Sequence[float]]],
    p0: SpectrumModel,
    energy_range: Optional[tuple[float, float]] = None,
) -> FitResult:
    """Nine-parameter response fit: quadratic energy scale (c0, c1, c2),
    quadratic resolution (sig0^2, sig1^2, sig2^2), and one weight per
    template.

    ``energy_range`` restricts the fit window (mapped to ADC through the
    initial scale guess). Poisson weighting with sigma = sqrt(max(n, 1)).
    Near-collinear templates trigger an ill-conditioning warning."""
    edges = np.asarray(adc_edges, dtype=float)
    data = np.asarray(measured, dtype=float)
    if len(templates) < 3:
        raise DataError("need at least 3 templates")
    if data.size != edges.size - 1:
        raise DataError("measured histogram must have len(edges) - 1 bins")
    centers = 0.5 * (edges[:-1] + edges[1:])

    smeared0 = [
        smear_template(e, c, p0, edges) for e, c in templates
    ]
    for i in range(len(smeared0)):
        for j in range(i + 1, len(smeared0)):
            u, v = smeared0[i], smeared0[j]
            denom = np.linalg.norm(u) * np.linalg.norm(v)
            if denom > 0 and float(u @ v) / denom > 0.999:
                warnings.warn(
                    f"templates {i} and {j} are nearly collinear; "
                    "weights will be ill-conditioned",
                    stacklevel=2,
                )

    if energy_range is not None:
        lo, hi = p0.adc_of_energy(np.asarray(energy_range, dtype=float))
        mask = (centers >= lo) & (centers <= hi)
    else:
        mask = np.ones(centers.size, dtype=bool)
    if mask.sum() < 10:
        raise DataError("fit window contains fewer than 10 ADC bins")
    sigma = np.sqrt(np.clip(data, 1.0, None))

    names = ["c0", "c1", "c2", "sig0_sq", "sig1_sq", "sig2_sq"] + [
        f"w{i}" for i in range(len(templates))
    ]
    start = np.array(
        [p0.c0, p0.c1, p0.c2, p0.sig0_sq, p0.sig1_sq, p0.sig2_sq]
        + list(p0.weights if p0.weights else [1.0] * len(templates))
    )
    lo_b = [-np.inf, 0.0, -np.inf, 0.0, 0.0, 0.0] + [0.0] * len(templates)
    hi_b = [np.inf] * 6 + [np.inf] * len(templates)

    def residual(p):
        model = SpectrumModel(*p[:6], weights=tuple(p[6:]))
        total = np.zeros(centers.size)
        for wgt, (e, c) in zip(p[6:], templates):
            total += wgt * smear_template(e, c, model, edges)
        return ((total - data) / sigma)[mask]

    fit = _run_fit(
        residual,
        start,
        names,
        bounds=(lo_b, hi_b),
        scaled_cov=False,
        model="spectrum-9p",
    )
    return fit


def fit_spectrum_ranges(
    adc_edges,
    measured,
    templates,
    p0: SpectrumModel,
    energy_ranges: Sequence[tuple[float, float]],
) -> dict:
    """Run the spectrum fit over several energy windows and report the
    per-template weight spread across windows as a systematic."""
    fits = {
        rng: fit_spectrum(adc_edges, measured, templates, p0, energy_range=rng)
        for rng in energy_ranges
    }
    n_templates = len(templates)
    spread = {}
    for i in range(n_templates):
        vals = [f.params[f"w{i}"] for f in fits.values()]
        spread[f"w{i}"] = float(np.max(vals) - np.min(vals))
    return {"fits": fits, "weight_spread": spread}
