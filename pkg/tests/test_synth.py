import numpy as np
import pytest

from qprad.ab_analysis import AnalysisConfig, pair_and_normalize
from qprad.errors import ConfigError
from qprad.observables import QubitParams, ShieldScenario, gamma1_from_power, gamma_qp
from qprad.presets import OMEGA_Q1, cu64_inventory, lab_environment
from qprad.qp_dynamics import evolve_xqp_closed
from qprad.source_model import ShieldState
from qprad.synth import (
    AbCampaignConfig,
    AbQubitSpec,
    DriftModel,
    TraceConfig,
    synth_ab_campaign,
    synth_decay_trace,
    synth_exposure_campaign,
    synth_injection_series,
    synth_onef_drift,
)

Q1 = QubitParams(omega_q=OMEGA_Q1, gamma_other=25000.0)


def test_exposure_noiseless_equals_truth():
    times = np.linspace(0.0, 48 * 3600.0, 50)
    res = synth_exposure_campaign(
        cu64_inventory(), lab_environment(), Q1, 5.4e-3, times, noise_rel=0.0
    )
    assert np.array_equal(res["gamma1_meas"], res["gamma1_true"])
    assert np.all(res["gamma1_err"] == 0.0)
    # truth follows the sqrt-power law pointwise
    expect = np.array([gamma1_from_power(5.4e-3, Q1, p) for p in res["p_tot"]])
    assert np.allclose(res["gamma1_true"], expect, rtol=1e-12)


def test_exposure_noise_is_seeded():
    times = np.linspace(0.0, 3600.0, 20)
    kw = dict(noise_rel=0.05)
    a = synth_exposure_campaign(cu64_inventory(), lab_environment(), Q1, 5.4e-3, times, seed=1, **kw)
    b = synth_exposure_campaign(cu64_inventory(), lab_environment(), Q1, 5.4e-3, times, seed=1, **kw)
    c = synth_exposure_campaign(cu64_inventory(), lab_environment(), Q1, 5.4e-3, times, seed=2, **kw)
    assert np.array_equal(a["gamma1_meas"], b["gamma1_meas"])
    assert not np.array_equal(a["gamma1_meas"], c["gamma1_meas"])


def test_exposure_shield_reduces_power():
    times = np.array([0.0, 100.0])
    none = synth_exposure_campaign(cu64_inventory(), lab_environment(), Q1, 5.4e-3, times)
    up = synth_exposure_campaign(
        cu64_inventory(), lab_environment(), Q1, 5.4e-3, times, shield=ShieldState.UP
    )
    assert np.all(up["p_tot"] < none["p_tot"])


def test_decay_trace_matches_model():
    gamma1 = 1.0 / 20e-6
    delays = tuple(np.linspace(0.0, 100e-6, 21))
    cfg = TraceConfig(delays_s=delays, shots=4000, repeats=10, residual_population=0.02)
    t, pop, sigma = synth_decay_trace(gamma1, cfg, seed=3)
    model = (1 - 0.02) * np.exp(-gamma1 * t) + 0.02
    assert np.all(np.abs(pop - model) < 5 * sigma)
    assert np.all(sigma > 0)


def test_onef_drift_psd_matches_target():
    model = DriftModel(alpha=1.5, s_const=2.0, dt_s=1.0)
    n = 4096
    # average periodograms over independent seeds
    psds = []
    freqs = np.fft.rfftfreq(n, 1.0)[1:]
    for seed in range(40):
        x = synth_onef_drift(model, n, seed=seed)
        spec = np.abs(np.fft.rfft(x)) ** 2 / (n * 1.0) * 2.0
        psds.append(spec[1:])
    mean_psd = np.mean(psds, axis=0)
    target = model.psd(freqs)
    band = (freqs > 1e-3) & (freqs < 0.2)
    ratio = mean_psd[band] / target[band]
    assert 0.7 < np.median(ratio) < 1.3


def test_onef_drift_requires_power_of_two():
    with pytest.raises(ConfigError):
        synth_onef_drift(DriftModel(1.5, 1.0, 1.0), 100, seed=0)


def _campaign(seed=0, **kw):
    sc = ShieldScenario(5.4e-3, 0.081, 0.102, 0.4612, 0.02)
    spec = AbQubitSpec("Qx", QubitParams(omega_q=OMEGA_Q1, gamma_other=50000.0))
    defaults = dict(
        qubits=(spec,), cycles=10, n_per_position=4, cycle_period_s=900.0,
        scenario=sc, seed=seed,
    )
    defaults.update(kw)
    return AbCampaignConfig(**defaults)


def test_ab_campaign_structure():
    records = synth_ab_campaign(_campaign())
    assert len(records) == 10 * 2 * 4
    ups = [r for r in records if r.position == "up"]
    downs = [r for r in records if r.position == "down"]
    assert len(ups) == len(downs) == 40
    # within each cycle the up block precedes the down block
    for c in range(10):
        cyc = [r for r in records if r.cycle == c]
        t_up = max(r.timestamp_s for r in cyc if r.position == "up")
        t_down = min(r.timestamp_s for r in cyc if r.position == "down")
        assert t_up < t_down
    # timestamps strictly increasing within a qubit
    ts = [r.timestamp_s for r in records]
    assert all(a < b for a, b in zip(ts, ts[1:]))


def test_ab_campaign_noiseless_rates_exact():
    records = synth_ab_campaign(_campaign())
    sc = ShieldScenario(5.4e-3, 0.081, 0.102, 0.4612, 0.02)
    q = QubitParams(omega_q=OMEGA_Q1, gamma_other=50000.0)
    g_up = gamma1_from_power(sc.a, q, sc.p_int + (1 - sc.eta_up) * sc.p_ext)
    g_down = gamma1_from_power(sc.a, q, sc.p_int + (1 - sc.eta_down) * sc.p_ext)
    for r in records:
        expect = g_down if r.position == "down" else g_up
        assert r.gamma1 == pytest.approx(expect, rel=1e-12)


def test_ab_campaign_paired_median_recovers_signal():
    cfg = _campaign(t1_noise_rel=0.01, seed=11)
    records = synth_ab_campaign(cfg)
    paired = pair_and_normalize(records, AnalysisConfig(t1_cutoff_us=0.0))
    sc = cfg.scenario
    q = cfg.qubits[0].params
    g_up = gamma1_from_power(sc.a, q, sc.p_int + (1 - sc.eta_up) * sc.p_ext)
    g_down = gamma1_from_power(sc.a, q, sc.p_int + (1 - sc.eta_down) * sc.p_ext)
    truth = g_down - g_up
    med = np.median(paired.diffs)
    spread = paired.diffs.std() / np.sqrt(paired.n_pairs)
    assert abs(med - truth) < 5 * max(spread, 1e-9)


def test_ab_campaign_seeded_and_per_qubit_streams():
    a = synth_ab_campaign(_campaign(seed=5, t1_noise_rel=0.02))
    b = synth_ab_campaign(_campaign(seed=5, t1_noise_rel=0.02))
    c = synth_ab_campaign(_campaign(seed=6, t1_noise_rel=0.02))
    assert [r.t1_us for r in a] == [r.t1_us for r in b]
    assert [r.t1_us for r in a] != [r.t1_us for r in c]


def test_injection_noiseless_matches_closed_form():
    delays = np.geomspace(1e-6, 1e-1, 30)
    x0, r, s, other = 1e-4, 1e7, 5.0, 25000.0
    t, gamma = synth_injection_series(x0, r, s, other, Q1, delays)
    expect = np.array(
        [gamma_qp(evolve_xqp_closed(x0, r, s, ti), Q1) + other for ti in delays]
    )
    assert np.array_equal(gamma, expect)
    # monotone decay toward gamma_other
    assert np.all(np.diff(gamma) < 0)
    assert gamma[-1] > other
