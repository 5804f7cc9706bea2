"""Synthetic measurement campaigns with known ground truth.

All generators are pure functions of (configuration, seed). Independent
streams (e.g. per qubit in an A/B campaign) derive child seeds through
``numpy.random.SeedSequence`` keyed on (master seed, stream index), so
results are identical regardless of evaluation order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .ab_analysis import AbRecord
from .errors import ConfigError
from .observables import QubitParams, ShieldScenario, gamma1_from_power, gamma_qp
from .qp_dynamics import evolve_xqp_closed
from .source_model import (
    EnvironmentModel,
    ShieldState,
    SourceInventory,
    total_power_density,
)


@dataclass(frozen=True)
class TraceConfig:
    """Acquisition settings of one relaxation trace."""

    delays_s: tuple[float, ...]
    shots: int = 500
    residual_population: float = 0.017
    repeats: int = 20
    gamma1_jitter_rel: float = 0.0

    def __post_init__(self):
        if self.shots < 1:
            raise ConfigError("shots must be >= 1")
        if self.repeats < 1:
            raise ConfigError("repeats must be >= 1")
        if not 0.0 <= self.residual_population < 0.5:
            raise ConfigError("residual population must be in [0, 0.5)")
        if self.gamma1_jitter_rel < 0:
            raise ConfigError("gamma1_jitter_rel must be >= 0")


@dataclass(frozen=True)
class DriftModel:
    """Power-law T1 drift: one-sided PSD S(f) = s_const / f**alpha,
    with S in us^2/Hz (i.e. s_const is the PSD at 1 Hz) sampled at
    interval dt."""

    alpha: float = 1.5
    s_const: float = 0.0
    dt_s: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 3.0:
            raise ConfigError("alpha must be in (0, 3)")
        if self.s_const < 0:
            raise ConfigError("s_const must be >= 0")
        if not self.dt_s > 0:
            raise ConfigError("dt must be > 0")

    def psd(self, f):
        return self.s_const / np.asarray(f, dtype=float) ** self.alpha


@dataclass(frozen=True)
class AbQubitSpec:
    """One qubit in the shield A/B campaign. ``cycles`` / ``n_per_position``
    override the campaign-level values (the two samples in the reference
    campaign used different settings)."""

    qubit_id: str
    params: QubitParams
    cycles: Optional[int] = None
    n_per_position: Optional[int] = None


@dataclass(frozen=True)
class AbCampaignConfig:
    qubits: tuple[AbQubitSpec, ...]
    cycles: int
    n_per_position: int
    cycle_period_s: float
    scenario: ShieldScenario
    drift: Optional[DriftModel] = None
    t1_noise_rel: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.cycles < 1 or self.n_per_position < 1:
            raise ConfigError("cycles and n_per_position must be >= 1")
        if not self.cycle_period_s > 0:
            raise ConfigError("cycle period must be > 0")
        if self.t1_noise_rel < 0:
            raise ConfigError("t1_noise_rel must be >= 0")


def _truncated_relative_normal(rng, base, rel, size):
    """base * (1 + rel * z) with redraws enforcing positivity."""
    vals = base * (1.0 + rel * rng.standard_normal(size))
    for _ in range(100):
        bad = vals <= 0
        if not np.any(bad):
            return vals
        vals[bad] = base * (1.0 + rel * rng.standard_normal(int(bad.sum())))
    raise ConfigError("jitter too large: cannot draw positive rates")


def synth_decay_trace(gamma1: float, cfg: TraceConfig, seed: int):
    """Simulate one relaxation trace.

    Each repeat draws its own rate gamma1 * (1 + jitter * z) (truncated
    positive), so the median trace decays super-exponentially at short
    times when jitter > 0. Returns arrays (delays, median population,
    sigma of the median).
    """
    if not gamma1 > 0:
        raise ConfigError("gamma1 must be > 0")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    delays = np.asarray(cfg.delays_s, dtype=float)
    rates = (
        _truncated_relative_normal(rng, gamma1, cfg.gamma1_jitter_rel, cfg.repeats)
        if cfg.gamma1_jitter_rel > 0
        else np.full(cfg.repeats, gamma1)
    )
    res = cfg.residual_population
    probs = (1.0 - res) * np.exp(-np.outer(rates, delays)) + res
    counts = rng.binomial(cfg.shots, probs)
    pops = counts / cfg.shots
    median = np.median(pops, axis=0)
    # normal-approximation uncertainty of the median of binomial fractions
    p_clip = np.clip(median, 1.0 / cfg.shots, 1.0 - 1.0 / cfg.shots)
    sigma = 1.2533 * np.sqrt(p_clip * (1.0 - p_clip) / (cfg.shots * cfg.repeats))
    return delays, median, sigma


def synth_exposure_campaign(
    inventory: SourceInventory,
    env: EnvironmentModel,
    qubit: QubitParams,
    a: float,
    times_s: Sequence[float],
    noise_rel: float = 0.0,
    seed: int = 0,
    shield: ShieldState = ShieldState.NONE,
    material: str = "Al",
):
    """Relaxation-rate time series under a decaying source.

    Returns a dict of aligned arrays: t_s, p_src, p_tot, gamma1_true,
    gamma1_meas, gamma1_err. With noise_rel = 0 the measured series
    equals the truth exactly.
    """
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    times = np.asarray(times_s, dtype=float)
    p_tot = np.array(
        [total_power_density(inventory, env, shield, t, material) for t in times]
    )
    from .source_model import source_power_density

    p_src = np.array([source_power_density(inventory, t, material) for t in times])
    gamma_true = np.array([gamma1_from_power(a, qubit, p) for p in p_tot])
    if noise_rel > 0:
        gamma_meas = _truncated_relative_normal(rng, gamma_true, noise_rel, times.size)
        gamma_err = noise_rel * gamma_true
    else:
        gamma_meas = gamma_true.copy()
        gamma_err = np.zeros_like(gamma_true)
    return {
        "t_s": times,
        "p_src": p_src,
        "p_tot": p_tot,
        "gamma1_true": gamma_true,
        "gamma1_meas": gamma_meas,
        "gamma1_err": gamma_err,
    }


def synth_onef_drift(model: DriftModel, n: int, seed: int) -> np.ndarray:
    """Power-law noise by frequency-domain shaping of white Gaussian
    noise with Hermitian symmetry; the periodogram matches the target
    PSD in expectation. ``n`` must be a power of two, >= 64. Output in us.
    """
    if n < 64 or (n & (n - 1)) != 0:
        raise ConfigError("n must be a power of two >= 64")
    if model.s_const == 0.0:
        return np.zeros(n)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    fs = 1.0 / model.dt_s
    freqs = np.fft.rfftfreq(n, model.dt_s)
    spectrum = np.zeros(n // 2 + 1, dtype=complex)
    target = model.psd(freqs[1:])
    # E|X_k|^2 = S_k * fs * n / 2 reproduces the one-sided periodogram
    amp = np.sqrt(target * fs * n / 4.0)
    spectrum[1:] = amp * (
        rng.standard_normal(n // 2) + 1j * rng.standard_normal(n // 2)
    )
    # Nyquist bin must be real; double its variance to compensate
    spectrum[-1] = math.sqrt(2.0) * spectrum[-1].real
    return np.fft.irfft(spectrum, n)


def _resolve(spec: AbQubitSpec, cfg: AbCampaignConfig):
    cycles = spec.cycles if spec.cycles is not None else cfg.cycles
    n_pos = spec.n_per_position if spec.n_per_position is not None else cfg.n_per_position
    return cycles, n_pos


def synth_ab_campaign(cfg: AbCampaignConfig) -> list[AbRecord]:
    """Shield A/B campaign: per qubit, ``cycles`` cycles of N up-position
    measurements followed by N down-position measurements.

    T1 per measurement combines the shield-state rate baseline, an
    additive power-law T1 drift, and white relative T1 noise.
    """
    records: list[AbRecord] = []
    sc = cfg.scenario
    for iq, spec in enumerate(cfg.qubits):
        cycles, n_pos = _resolve(spec, cfg)
        q = spec.params
        gamma_up = gamma1_from_power(
            sc.a, q, sc.p_int + (1.0 - sc.eta_up) * sc.p_ext
        )
        gamma_down = gamma1_from_power(
            sc.a, q, sc.p_int + (1.0 - sc.eta_down) * sc.p_ext
        )
        n_meas = cycles * 2 * n_pos
        meas_dt = cfg.cycle_period_s / (2 * n_pos)

        cycle_idx = np.repeat(np.arange(cycles), 2 * n_pos)
        within = np.tile(np.arange(2 * n_pos), cycles)
        is_down = within >= n_pos
        rep = np.where(is_down, within - n_pos, within)
        t = cycle_idx * cfg.cycle_period_s + (within + 0.5) * meas_dt

        t1_us = np.where(is_down, 1e6 / gamma_down, 1e6 / gamma_up)

        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, iq]))
        if cfg.drift is not None and cfg.drift.s_const > 0:
            n_fft = max(64, 1 << int(math.ceil(math.log2(n_meas))))
            drift_model = DriftModel(cfg.drift.alpha, cfg.drift.s_const, meas_dt)
            drift = synth_onef_drift(
                drift_model, n_fft, seed=int(rng.integers(2**63))
            )[:n_meas]
            t1_us = t1_us + drift
        if cfg.t1_noise_rel > 0:
            t1_us = t1_us * (1.0 + cfg.t1_noise_rel * rng.standard_normal(n_meas))
        t1_us = np.maximum(t1_us, 0.1)

        records.extend(
            AbRecord(
                qubit_id=spec.qubit_id,
                omega_q=q.omega_q,
                cycle=int(cycle_idx[i]),
                position="down" if is_down[i] else "up",
                repetition=int(rep[i]),
                t1_us=float(t1_us[i]),
                timestamp_s=float(t[i]),
            )
            for i in range(n_meas)
        )
    return records


def synth_injection_series(
    x0: float,
    r: float,
    s: float,
    gamma_other: float,
    qubit: QubitParams,
    delays_s: Sequence[float],
    noise_rel: float = 0.0,
    seed: int = 0,
):
    """Relaxation rate versus delay after a quasiparticle injection pulse:
    gamma1(t) = gamma_qp(x(t)) + gamma_other with the closed-form decay
    of the injected density. Returns (delays, gamma1) arrays."""
    delays = np.asarray(delays_s, dtype=float)
    if np.any(delays < 0):
        raise ConfigError("delays must be >= 0")
    gamma = np.array(
        [gamma_qp(evolve_xqp_closed(x0, r, s, t), qubit) + gamma_other for t in delays]
    )
    if noise_rel > 0:
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        gamma = _truncated_relative_normal(rng, gamma, noise_rel, delays.size)
    return delays, gamma
