"""Maps from quasiparticle density and radiation power to measurable
qubit and resonator quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .constants import HBAR_EV_S
from .errors import ConfigError
from .qp_dynamics import SuperconductorConstants

_PI2 = math.pi**2


@dataclass(frozen=True)
class QubitParams:
    """Transition angular frequency, lumped non-quasiparticle loss rate,
    and the superconductor constants of the film."""

    omega_q: float
    gamma_other: float = 0.0
    sc: SuperconductorConstants = field(default_factory=SuperconductorConstants)

    def __post_init__(self):
        if not self.omega_q > 0:
            raise ConfigError("omega_q must be > 0")
        if self.gamma_other < 0:
            raise ConfigError("gamma_other must be >= 0")


@dataclass(frozen=True)
class ResonatorParams:
    omega_r0: float
    alpha_k: float = 0.0

    def __post_init__(self):
        if not self.omega_r0 > 0:
            raise ConfigError("omega_r0 must be > 0")
        if not 0.0 <= self.alpha_k <= 1.0:
            raise ConfigError("alpha_k must be in [0, 1]")


@dataclass(frozen=True)
class ShieldScenario:
    """Inputs of the shield-effect prediction: the power-to-rate
    coefficient ``a`` (sqrt(mm^3/keV)), internal and external power
    densities, and the shield efficiencies in the two positions."""

    a: float
    p_int: float
    p_ext: float
    eta_up: float
    eta_down: float

    def __post_init__(self):
        if self.p_int < 0 or self.p_ext < 0:
            raise ConfigError("power densities must be >= 0")
        for label, eta in (("eta_up", self.eta_up), ("eta_down", self.eta_down)):
            if not 0.0 <= eta <= 1.0:
                raise ConfigError(f"{label} must be in [0, 1]")
        if self.eta_up < self.eta_down:
            raise ConfigError("eta_up must be >= eta_down")


def qp_rate_coefficient(q: QubitParams) -> float:
    """Proportionality between x_qp and the quasiparticle decay rate:
    C(omega) = sqrt(2 omega Delta / (pi^2 hbar))."""
    return math.sqrt(2.0 * q.omega_q * q.sc.delta_ev / (_PI2 * HBAR_EV_S))


def gamma_qp(x_qp: float, q: QubitParams) -> float:
    """Quasiparticle-induced energy relaxation rate (1/s), linear in x_qp."""
    return qp_rate_coefficient(q) * x_qp


def xqp_from_gamma(gamma_qp_rate: float, q: QubitParams) -> float:
    """Inverse of gamma_qp."""
    if gamma_qp_rate < 0:
        raise ConfigError("gamma_qp must be >= 0")
    return gamma_qp_rate / qp_rate_coefficient(q)


def gamma1_total(gamma_qp_rate: float, gamma_other: float) -> float:
    return gamma_qp_rate + gamma_other


def gamma1_from_power(a: float, q: QubitParams, power_density: float) -> float:
    """Total relaxation rate a * sqrt(omega_q * P) + gamma_other (1/s)."""
    if power_density < 0:
        raise ConfigError("power density must be >= 0")
    return a * math.sqrt(q.omega_q * power_density) + q.gamma_other


def survival_probability(gamma1: float, t: float) -> float:
    """Excited-state survival exp(-gamma1 * t)."""
    if t < 0:
        raise ConfigError("delay must be >= 0")
    return math.exp(-gamma1 * t)


def qubit_frequency_shift(x_qp: float, q: QubitParams) -> float:
    """Quasiparticle-induced qubit frequency shift (rad/s, <= 0 for
    x_qp >= 0): -sqrt(Delta omega_q / (2 hbar pi^2)) * x_qp."""
    return -math.sqrt(q.sc.delta_ev * q.omega_q / (2.0 * HBAR_EV_S * _PI2)) * x_qp


def resonator_frequency_shift(n_qp_rel_change: float, res: ResonatorParams) -> float:
    """Resonator shift from a relative quasiparticle density change.

    Kinetic inductance responds as dLk/Lk = (1/2) dn/n and the frequency
    as domega/omega0 = -(alpha/2) dLk/Lk, so domega = -(alpha/4) (dn/n)
    * omega0: more quasiparticles lower the frequency.
    """
    return -(res.alpha_k / 4.0) * n_qp_rel_change * res.omega_r0


def delta_gamma_shield(sc: ShieldScenario, q: QubitParams) -> float:
    """Predicted rate difference between shield-down and shield-up:

    a sqrt(omega) (sqrt(P_int + (1-eta_d) P_ext) - sqrt(P_int + (1-eta_u) P_ext))
    """
    root_w = math.sqrt(q.omega_q)
    return sc.a * root_w * (
        math.sqrt(sc.p_int + (1.0 - sc.eta_down) * sc.p_ext)
        - math.sqrt(sc.p_int + (1.0 - sc.eta_up) * sc.p_ext)
    )


def pint_from_delta_gamma(
    delta_gamma: float, sc: ShieldScenario, q: QubitParams
) -> float:
    """Numerically invert the shield prediction for the internal power
    density that reproduces a measured rate difference."""
    if delta_gamma <= 0:
        raise ConfigError("delta_gamma must be > 0 for inversion")
    zero_pint = ShieldScenario(sc.a, 0.0, sc.p_ext, sc.eta_up, sc.eta_down)
    if delta_gamma >= delta_gamma_shield(zero_pint, q):
        return 0.0

    def objective(p_int):
        trial = ShieldScenario(sc.a, p_int, sc.p_ext, sc.eta_up, sc.eta_down)
        return delta_gamma_shield(trial, q) - delta_gamma

    hi = max(sc.p_ext, 1.0)
    while objective(hi) > 0:
        hi *= 2.0
        if hi > 1e12:
            raise ConfigError("no internal power reproduces delta_gamma")
    return brentq(objective, 0.0, hi, xtol=1e-12, rtol=1e-12)


def pint_bound_from_asymmetry(
    a_median: float, eta_up: float, eta_down: float, p_ext: float
) -> float:
    """Upper bound on the internal power density from the median paired
    asymmetry: P~_int = (eta_u - eta_d) / (2 <A>) * P_ext.

    The bound is "effective": it absorbs the non-quasiparticle loss term
    gamma_other / (a sqrt(omega_q)), which is treated as a power density
    in this linearization; subtract_gamma_other_term removes it.
    """
    if a_median <= 0:
        raise ConfigError("median asymmetry must be > 0 (shield must help)")
    return (eta_up - eta_down) / (2.0 * a_median) * p_ext


def subtract_gamma_other_term(
    pint_bound: float, gamma_other: float, a: float, q: QubitParams
) -> float:
    """Remove the gamma_other / (a sqrt(omega_q)) pseudo-power from the
    effective internal-power bound."""
    return pint_bound - gamma_other / (a * math.sqrt(q.omega_q))


def fc_correction(
    rho_src_al: float, rho_src_si: float, p_ext_al: float, p_ext_si: float
) -> float:
    """Order-unity bound on the error from attributing quasiparticle
    generation to aluminum-absorbed power only:
    f_c = sqrt((rho_Al / rho_Si) * (P_ext_Si / P_ext_Al))."""
    for label, v in (
        ("rho_src_al", rho_src_al),
        ("rho_src_si", rho_src_si),
        ("p_ext_al", p_ext_al),
        ("p_ext_si", p_ext_si),
    ):
        if not v > 0:
            raise ConfigError(f"{label} must be > 0")
    return math.sqrt((rho_src_al / rho_src_si) * (p_ext_si / p_ext_al))
