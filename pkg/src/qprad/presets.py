"""Reference scenario built from the published measurement campaign:
an activated-copper source above an aluminum transmon chip, laboratory
gamma and cosmic-ray backgrounds, and the lead-shield A/B experiment.

Values not directly published (the per-component shield efficiency in
the down position, the absorbed-power coefficient of the source) are
derived here from published aggregates; each derivation is written out
rather than hardcoded.
"""

from __future__ import annotations

import math

from .constants import BQ_PER_UCI, SECONDS_PER_HOUR
from .observables import QubitParams, ShieldScenario
from .source_model import (
    EnvironmentComponent,
    EnvironmentModel,
    Isotope,
    SourceInventory,
)
from .synth import AbCampaignConfig, AbQubitSpec, DriftModel

# power-to-rate conversion coefficient, sqrt(mm^3/keV)
A_COEFF = 5.4e-3

OMEGA_Q1 = 2 * math.pi * 3.48e9
OMEGA_Q2 = 2 * math.pi * 4.6e9

GAMMA_OTHER_Q1 = 1.0 / 40e-6  # 1/s
GAMMA_OTHER_Q2 = 1.0 / 32e-6

CU64_HALF_LIFE_S = 12.7 * SECONDS_PER_HOUR
CU64_ACTIVITY_UCI = 162.0
CU64_ACTIVITY_BQ = CU64_ACTIVITY_UCI * BQ_PER_UCI

# Environmental power densities in aluminum, keV/s/mm^3
P_GAMMA = 0.060
P_COSMIC = 0.042
P_EXT = P_GAMMA + P_COSMIC

# Shield efficiency: about 80% of the wall-gamma power is blocked with
# the shield up while cosmic rays are unaffected; the gamma efficiency
# below reproduces the published power-weighted 46.1% total.
ETA_GAMMA_UP = 0.784
ETA_COSMIC_UP = 0.0
ETA_UP_WEIGHTED = (ETA_GAMMA_UP * P_GAMMA + ETA_COSMIC_UP * P_COSMIC) / P_EXT

# The weighted down-position efficiency is not published directly; 0.02
# reproduces the published shield-effect prediction of ~1/15.5 per ms
# when inverted through the rate-difference model.
ETA_DOWN_WEIGHTED = 0.02
ETA_GAMMA_DOWN = ETA_DOWN_WEIGHTED * P_EXT / P_GAMMA

# Internal power density inferred from the measured shield effect
P_INT_MEASURED = 0.081


def qubit_q1(gamma_other: float = GAMMA_OTHER_Q1) -> QubitParams:
    return QubitParams(omega_q=OMEGA_Q1, gamma_other=gamma_other)


def qubit_q2(gamma_other: float = GAMMA_OTHER_Q2) -> QubitParams:
    return QubitParams(omega_q=OMEGA_Q2, gamma_other=gamma_other)


def cu64_power_coefficient(material: str = "Al") -> float:
    """Absorbed power density per unit activity of the copper source.

    Derived by requiring the rate model to reproduce the measured
    campaign-start relaxation rate of Q1 (1/5.7 us with 1/40 us of
    non-quasiparticle loss) at the calibrated initial activity."""
    gamma_start = 1.0 / 5.7e-6
    p_start = ((gamma_start - GAMMA_OTHER_Q1) / A_COEFF) ** 2 / OMEGA_Q1
    return p_start / CU64_ACTIVITY_BQ


def cu64_isotope(material: str = "Al") -> Isotope:
    return Isotope(
        name="Cu64",
        half_life_s=CU64_HALF_LIFE_S,
        power_coeff={material: cu64_power_coefficient(material)},
    )


def cu64_inventory(material: str = "Al") -> SourceInventory:
    return SourceInventory(
        reference_time=0.0,
        entries=((cu64_isotope(material), CU64_ACTIVITY_BQ),),
    )


def lab_environment(material: str = "Al", internal_power: float = 0.0) -> EnvironmentModel:
    return EnvironmentModel(
        components=(
            EnvironmentComponent(
                name="wall-gammas",
                power={material: P_GAMMA},
                eta_up=ETA_GAMMA_UP,
                eta_down=ETA_GAMMA_DOWN,
            ),
            EnvironmentComponent(
                name="cosmic-rays",
                power={material: P_COSMIC},
                eta_up=ETA_COSMIC_UP,
                eta_down=0.0,
            ),
        ),
        internal_power=internal_power,
    )


def shield_scenario(p_int: float = 0.0, p_ext: float = P_EXT) -> ShieldScenario:
    return ShieldScenario(
        a=A_COEFF,
        p_int=p_int,
        p_ext=p_ext,
        eta_up=ETA_UP_WEIGHTED,
        eta_down=ETA_DOWN_WEIGHTED,
    )


# T1 drift spectral amplitude matching the published cycle-frequency
# noise level: S(1/900 s) = 3.4e4 us^2/Hz with alpha = 1.5.
DRIFT_ALPHA = 1.5
PUBLISHED_S_AT_CYCLE = 3.4e4
CYCLE_PERIOD_S = 900.0
PUBLISHED_DRIFT_CONST = PUBLISHED_S_AT_CYCLE * (1.0 / CYCLE_PERIOD_S) ** DRIFT_ALPHA


def reference_ab_config(
    seed: int = 0,
    p_int: float = P_INT_MEASURED,
    t1_noise_rel: float = 0.01,
    drift_s_const: float = 2e-4,
) -> AbCampaignConfig:
    """Seven-qubit shield campaign at the published scale: 65 cycles of
    N = 50 for the two-qubit sample, 85 cycles of N = 10 for the
    five-qubit sample, 15-minute cycles.

    The drift amplitude and white T1 noise are synthesis parameters (the
    published campaign does not quantify the per-measurement scatter).
    """
    # Baselines chosen so typical T1 sits below the 30 us analysis cutoff.
    others = [1.0 / (t * 1e-6) for t in (25.0, 28.0, 15.0, 18.0, 22.0, 17.0, 19.0)]
    omegas = [OMEGA_Q1, OMEGA_Q2] + [
        2 * math.pi * f * 1e9 for f in (3.2, 3.7, 4.1, 4.4, 4.9)
    ]
    qubits = []
    for i, (omega, gamma_other) in enumerate(zip(omegas, others)):
        qubits.append(
            AbQubitSpec(
                qubit_id=f"Q{i + 1}",
                params=QubitParams(omega_q=omega, gamma_other=gamma_other),
                cycles=65 if i < 2 else 85,
                n_per_position=50 if i < 2 else 10,
            )
        )
    return AbCampaignConfig(
        qubits=tuple(qubits),
        cycles=85,
        n_per_position=10,
        cycle_period_s=CYCLE_PERIOD_S,
        scenario=shield_scenario(p_int=p_int),
        drift=DriftModel(alpha=DRIFT_ALPHA, s_const=drift_s_const, dt_s=1.0),
        t1_noise_rel=t1_noise_rel,
        seed=seed,
    )
