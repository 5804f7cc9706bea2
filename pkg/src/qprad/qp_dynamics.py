"""Quasiparticle density dynamics.

The normalized density x = n_qp / n_cp obeys

    dx/dt = -r x^2 - s x + g

with recombination rate r, trapping rate s, and generation rate g.
Closed-form solutions exist for g = 0; the numerical integrator covers
time-dependent generation. Densities are dimensionless and clamped to
[0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from . import _kernels
from .constants import ALUMINUM_COOPER_PAIR_DENSITY_PER_UM3, ALUMINUM_GAP_EV, KB_EV_PER_K, HBAR_EV_S
from .errors import ConfigError, IntegrationError

# Negative densities within this margin are treated as round-off and
# clamped to zero; anything more negative is an error.
_CLAMP_TOL = 1e-15


@dataclass(frozen=True)
class QpParams:
    """Rate-equation coefficients, all in 1/s (r is per unit x_qp)."""

    r: float = 0.0
    s: float = 0.0
    g: float = 0.0

    def __post_init__(self):
        if self.r < 0 or self.s < 0 or self.g < 0:
            raise ConfigError("quasiparticle rates must be >= 0")


@dataclass(frozen=True)
class SuperconductorConstants:
    delta_ev: float = ALUMINUM_GAP_EV
    n_cp_per_um3: float = ALUMINUM_COOPER_PAIR_DENSITY_PER_UM3

    def __post_init__(self):
        if not (self.delta_ev > 0 and self.n_cp_per_um3 > 0):
            raise ConfigError("superconductor constants must be positive")


def _clamp_xqp(x: float) -> float:
    if x < 0.0:
        if x < -_CLAMP_TOL:
            raise IntegrationError(f"x_qp = {x} is negative beyond round-off")
        return 0.0
    return x


def steady_state_xqp(params: QpParams) -> float:
    """Fixed point of the rate equation.

    For r > 0: x = (-s + sqrt(s^2 + 4 r g)) / (2 r); for r = 0, s > 0:
    x = g / s. Raises if r = s = 0 with g > 0 (unbounded growth).
    """
    r, s, g = params.r, params.s, params.g
    if g == 0.0:
        return 0.0
    if r == 0.0:
        if s == 0.0:
            raise ConfigError("no steady state: r = s = 0 with g > 0")
        return g / s
    # 4rg/(s + sqrt(...)) form avoids cancellation when s^2 >> 4rg
    root = math.sqrt(s * s + 4.0 * r * g)
    return 2.0 * g / (s + root)


def evolve_xqp_closed(x0: float, r: float, s: float, t: float) -> float:
    """Decay of an initial density with no generation (g = 0).

    Full solution:  x(t) = x0 s / (-r x0 + exp(s t) (s + r x0))
    s = 0 limit:    x(t) = x0 / (1 + x0 r t)
    r = 0 limit:    x(t) = x0 exp(-s t)
    """
    if t < 0:
        raise ConfigError("evolution time must be >= 0")
    x0 = _clamp_xqp(x0)
    if x0 == 0.0:
        return 0.0
    if s == 0.0:
        return x0 / (1.0 + x0 * r * t)
    if r == 0.0:
        return x0 * math.exp(-s * t)
    # exp(-s t) form stays finite for arbitrarily large s * t
    emst = math.exp(-s * t)
    return x0 * s * emst / (s + r * x0 * (1.0 - emst))


def default_step(x0: float, r: float, s: float, t_span: float) -> float:
    """Integrator step: small against both rate scales and the span."""
    candidates = [t_span / 1e4 if t_span > 0 else 1.0]
    if s > 0:
        candidates.append(1e-2 / s)
    if r > 0 and x0 > 0:
        candidates.append(1e-2 / (r * x0))
    return min(candidates)


def evolve_xqp_numeric(
    x0: float,
    params: QpParams,
    t_grid: Sequence[float],
    g: Union[float, Callable[[float], float], None] = None,
    step: float | None = None,
) -> np.ndarray:
    """Fixed-step RK4 solution of the rate equation on ``t_grid``.

    ``g`` overrides ``params.g``; a callable gives time-dependent
    generation (evaluated on the RK4 stages). The grid must be strictly
    increasing. Raises IntegrationError if the solution leaves [0, 1]
    beyond solver tolerance.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 1:
        raise ConfigError("time grid must be a non-empty 1-D sequence")
    if np.any(np.diff(t_grid) <= 0):
        raise ConfigError("time grid must be strictly increasing")
    x0 = _clamp_xqp(x0)
    span = float(t_grid[-1] - t_grid[0])
    h = step if step is not None else default_step(x0, params.r, params.s, span)

    if g is None or isinstance(g, (int, float)):
        g_const = params.g if g is None else float(g)
        if g_const < 0:
            raise ConfigError("generation rate must be >= 0")
        out = _kernels.rk4_constant_g(x0, params.r, params.s, g_const, t_grid, h)
    else:
        out = _rk4_callable_g(x0, params.r, params.s, g, t_grid, h)

    bad = (out < -1e-9) | (out > 1.0 + 1e-9)
    if np.any(bad):
        raise IntegrationError(
            "trajectory left [0, 1]; decrease the integration step"
        )
    return np.clip(out, 0.0, 1.0)


def _rk4_callable_g(x0, r, s, g, t_grid, h_max):
    def f(t, x):
        gt = g(t)
        if gt < 0:
            raise ConfigError("generation rate must be >= 0 on the grid")
        return -r * x * x - s * x + gt

    out = np.empty(t_grid.shape[0])
    x = x0
    out[0] = x
    for i in range(1, t_grid.shape[0]):
        t = t_grid[i - 1]
        span = t_grid[i] - t
        nsub = max(1, int(math.ceil(span / h_max)))
        hh = span / nsub
        for _ in range(nsub):
            k1 = f(t, x)
            k2 = f(t + 0.5 * hh, x + 0.5 * hh * k1)
            k3 = f(t + 0.5 * hh, x + 0.5 * hh * k2)
            k4 = f(t + hh, x + hh * k3)
            x += (hh / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            t += hh
        out[i] = x
    return out


def thermal_xqp(temperature_k: float, delta_ev: float = ALUMINUM_GAP_EV) -> float:
    """Thermal-equilibrium normalized quasiparticle density,
    sqrt(2 pi kT / Delta) * exp(-Delta / kT)."""
    if temperature_k <= 0:
        raise ConfigError("temperature must be > 0")
    kt = KB_EV_PER_K * temperature_k
    return math.sqrt(2.0 * math.pi * kt / delta_ev) * math.exp(-delta_ev / kt)


def generation_from_power(
    power_density: float,
    a: float,
    delta_ev: float = ALUMINUM_GAP_EV,
    r: float = 1.0,
) -> float:
    """Generation rate g such that the recombination-limited steady state
    reproduces the square-root rate law: g = r a^2 pi^2 hbar P / (2 Delta).

    The qubit frequency cancels, so g depends only on (P, a, Delta, r).
    """
    if power_density < 0:
        raise ConfigError("power density must be >= 0")
    if r <= 0:
        raise ConfigError("recombination rate must be > 0")
    return r * a * a * math.pi**2 * HBAR_EV_S * power_density / (2.0 * delta_ev)
