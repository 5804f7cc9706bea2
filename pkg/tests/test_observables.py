import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qprad.constants import ALUMINUM_GAP_EV, HBAR_EV_S
from qprad.errors import ConfigError
from qprad.observables import (
    QubitParams,
    ResonatorParams,
    ShieldScenario,
    delta_gamma_shield,
    fc_correction,
    gamma1_from_power,
    gamma_qp,
    pint_bound_from_asymmetry,
    pint_from_delta_gamma,
    qp_rate_coefficient,
    qubit_frequency_shift,
    resonator_frequency_shift,
    subtract_gamma_other_term,
    survival_probability,
    xqp_from_gamma,
)
from qprad.presets import OMEGA_Q1, OMEGA_Q2

Q1 = QubitParams(omega_q=OMEGA_Q1, gamma_other=0.0)
Q2 = QubitParams(omega_q=OMEGA_Q2, gamma_other=0.0)


def test_rate_coefficient_oracle():
    # independent recomputation of sqrt(2 omega delta_rad / pi^2) with
    # the gap expressed as an angular frequency
    delta_rad = ALUMINUM_GAP_EV / HBAR_EV_S
    expected = math.sqrt(2.0 * OMEGA_Q1 * delta_rad / math.pi**2)
    assert qp_rate_coefficient(Q1) == pytest.approx(expected, rel=1e-12)


@given(x=st.floats(1e-12, 1e-4))
@settings(max_examples=50, deadline=None)
def test_gamma_xqp_round_trip(x):
    assert xqp_from_gamma(gamma_qp(x, Q1), Q1) == pytest.approx(x, rel=1e-12)


def test_gamma1_from_power_is_sqrt_law():
    a = 5.4e-3
    g1 = gamma1_from_power(a, Q1, 0.04)
    g4 = gamma1_from_power(a, Q1, 0.16)
    assert g4 == pytest.approx(2.0 * g1, rel=1e-12)
    q = QubitParams(omega_q=OMEGA_Q1, gamma_other=100.0)
    assert gamma1_from_power(a, q, 0.04) == pytest.approx(g1 + 100.0, rel=1e-12)


def test_survival_probability():
    assert survival_probability(1e4, 1e-4) == pytest.approx(math.exp(-1.0))
    assert survival_probability(1e4, 0.0) == 1.0


def test_qubit_frequency_shift_sign_and_scale():
    # delta_omega = -sqrt(delta_rad * omega / 2) * x / pi ... verified
    # against the independent closed form below
    x = 1e-6
    delta_rad = ALUMINUM_GAP_EV / HBAR_EV_S
    expected = -math.sqrt(delta_rad * OMEGA_Q1 / (2.0 * math.pi**2)) * x
    assert qubit_frequency_shift(x, Q1) == pytest.approx(expected, rel=1e-12)
    assert qubit_frequency_shift(x, Q1) < 0


def test_resonator_shift_linear_in_density_change():
    res = ResonatorParams(omega_r0=2 * math.pi * 6e9, alpha_k=0.1)
    s1 = resonator_frequency_shift(1e-3, res)
    s2 = resonator_frequency_shift(2e-3, res)
    assert s1 < 0
    assert s2 == pytest.approx(2.0 * s1, rel=1e-12)
    # -(alpha/4) * (dn/n) * omega0
    assert s1 == pytest.approx(-0.1 / 4.0 * 1e-3 * res.omega_r0, rel=1e-12)


def test_delta_gamma_shield_zero_and_positive():
    sc = ShieldScenario(a=5.4e-3, p_int=0.0, p_ext=0.10, eta_up=0.461, eta_down=0.02)
    assert delta_gamma_shield(sc, Q1) > 0
    same = ShieldScenario(a=5.4e-3, p_int=0.0, p_ext=0.10, eta_up=0.3, eta_down=0.3)
    assert delta_gamma_shield(same, Q1) == 0.0


def test_delta_gamma_decreases_with_internal_power():
    prev = math.inf
    for p_int in (0.0, 0.05, 0.2, 1.0):
        sc = ShieldScenario(5.4e-3, p_int, 0.10, 0.461, 0.02)
        cur = delta_gamma_shield(sc, Q1)
        assert cur < prev
        prev = cur


@given(p_int=st.floats(0.0, 5.0))
@settings(max_examples=50, deadline=None)
def test_pint_inversion_round_trip(p_int):
    sc = ShieldScenario(5.4e-3, p_int, 0.10, 0.461, 0.02)
    dg = delta_gamma_shield(sc, Q1)
    zero = ShieldScenario(5.4e-3, 0.0, 0.10, 0.461, 0.02)
    assert pint_from_delta_gamma(dg, zero, Q1) == pytest.approx(
        p_int, rel=1e-6, abs=1e-9
    )


def test_pint_inversion_rejects_nonpositive():
    sc = ShieldScenario(5.4e-3, 0.0, 0.10, 0.461, 0.02)
    with pytest.raises(ConfigError):
        pint_from_delta_gamma(0.0, sc, Q1)


def test_pint_bound_formula():
    # (eta_u - eta_d) / (2 A) * P_ext
    assert pint_bound_from_asymmetry(0.01, 0.5, 0.1, 1.0) == pytest.approx(20.0)
    with pytest.raises(ConfigError):
        pint_bound_from_asymmetry(-0.1, 0.5, 0.1, 1.0)


def test_subtract_gamma_other_term():
    q = QubitParams(omega_q=OMEGA_Q1, gamma_other=0.0)
    a = 5.4e-3
    term = 5000.0 / (a * math.sqrt(OMEGA_Q1))
    assert subtract_gamma_other_term(10.0, 5000.0, a, q) == pytest.approx(
        10.0 - term, rel=1e-12
    )


def test_fc_correction():
    assert fc_correction(1.0, 1.0, 1.0, 1.0) == 1.0
    assert fc_correction(2.0, 1.0, 1.0, 2.0) == pytest.approx(2.0)
    with pytest.raises(ConfigError):
        fc_correction(0.0, 1.0, 1.0, 1.0)


def test_scenario_invariant():
    with pytest.raises(ConfigError):
        ShieldScenario(5.4e-3, 0.0, 0.10, eta_up=0.1, eta_down=0.5)
