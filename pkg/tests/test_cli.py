import csv
import json
import os
import shutil
import subprocess
import sys

import numpy as np
import pytest

from qprad.cli import main
from qprad.fitting import SpectrumModel, smear_template

HERE = os.path.dirname(__file__)
REFERENCE = os.path.join(HERE, "..", "configs", "reference_campaign.json")


def _small_config(tmp_path, **overrides):
    with open(REFERENCE) as fh:
        cfg = json.load(fh)
    cfg["exposure"]["n_points"] = 40
    cfg["exposure"]["duration_h"] = 24.0
    cfg["ab_campaign"]["cycles"] = 12
    cfg["ab_campaign"]["n_per_position"] = 4
    cfg["ab_campaign"]["qubit_overrides"] = {}
    cfg["analysis"]["robustness"] = {
        "t1_cutoffs_us": [0.0, 30.0],
        "outlier_sigmas": [5.0, 10.0],
    }
    cfg["injection"]["delays_us"] = {"start": 1.0, "stop": 5e5, "n": 40, "log": True}
    cfg.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def _run(config, out, *args):
    return main(["--config", config, "--out", str(out), *args])


def test_exposure_round_trip(tmp_path):
    config = _small_config(tmp_path)
    out = tmp_path / "run"
    assert _run(config, out, "simulate-exposure") == 0
    assert _run(config, out, "fit-exposure") == 0
    with open(out / "fit.json") as fh:
        fit = json.load(fh)
    assert fit["free"]["converged"]
    assert fit["free"]["params"]["a"] == pytest.approx(5.4e-3, rel=0.05)
    with open(out / "exposure.csv") as fh:
        header = fh.readline().strip().split(",")
    assert header[0] == "t_s"
    assert "gamma1_measured_per_s" in header
    assert (out / "power.csv").exists()
    with open(out / "run_manifest.json") as fh:
        manifest = json.load(fh)
    assert manifest["command"] == "fit-exposure"
    assert "fit.json" in manifest["outputs"]


def test_ab_round_trip_and_report(tmp_path):
    config = _small_config(tmp_path)
    out = tmp_path / "run"
    assert _run(config, out, "simulate-shield-ab") == 0
    assert _run(config, out, "analyze-ab") == 0
    with open(out / "report.json") as fh:
        report = json.load(fh)
    assert report["n_pairs"] > 0
    assert report["wilcoxon"]["p_value"] <= 1.0
    assert "pint_curve" in report
    assert len(report["per_qubit"]) == 7
    # robustness grid covers 3 pairing modes x 2 cutoffs x 2 sigmas
    with open(out / "robustness_grid.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3 * 2 * 2
    assert {r["pairing"] for r in rows} == {"real", "no-move", "shuffled"}
    with open(out / "histogram.csv") as fh:
        hist = list(csv.DictReader(fh))
    assert sum(int(r["count"]) for r in hist) > 0


def test_inject_round_trip(tmp_path):
    config = _small_config(tmp_path)
    out = tmp_path / "run"
    assert _run(config, out, "inject-qp") == 0
    with open(out / "fits.json") as fh:
        fits = json.load(fh)
    assert fits["ranking"][0] in fits["fits"]
    rec = fits["fits"]["recombination"]
    assert rec["params"]["r"] == pytest.approx(1e7, rel=0.05)


def test_reruns_byte_identical(tmp_path):
    config = _small_config(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        for cmd in ("simulate-exposure", "simulate-shield-ab", "inject-qp"):
            assert _run(config, out, cmd) == 0
    for name in ("exposure.csv", "power.csv", "ab_records.csv", "injection.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_seed_flag_changes_outputs(tmp_path):
    config = _small_config(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["--config", config, "--out", str(out1), "--seed", "1",
                 "simulate-shield-ab"]) == 0
    assert main(["--config", config, "--out", str(out2), "--seed", "2",
                 "simulate-shield-ab"]) == 0
    assert (out1 / "ab_records.csv").read_bytes() != (out2 / "ab_records.csv").read_bytes()


def test_json_format_output(tmp_path):
    config = _small_config(tmp_path)
    out = tmp_path / "run"
    assert main(["--config", config, "--out", str(out), "--format", "json",
                 "simulate-exposure"]) == 0
    with open(out / "exposure.json") as fh:
        rows = json.load(fh)
    assert isinstance(rows, list) and "t_s" in rows[0]


def test_bad_config_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"unknown_section": {}}))
    assert main(["--config", str(bad), "--out", str(tmp_path / "o"),
                 "simulate-exposure"]) == 2


def test_missing_input_exit_code(tmp_path):
    config = _small_config(tmp_path)
    assert main(["--config", config, "--out", str(tmp_path / "empty"),
                 "analyze-ab"]) == 3


def test_threads_env_validation(tmp_path, monkeypatch):
    config = _small_config(tmp_path)
    monkeypatch.setenv("QPRAD_THREADS", "zebra")
    assert main(["--config", config, "--out", str(tmp_path / "o"),
                 "simulate-exposure"]) == 2
    monkeypatch.setenv("QPRAD_THREADS", "2")
    assert main(["--config", config, "--out", str(tmp_path / "o"),
                 "simulate-exposure"]) == 0


def test_console_script_entry_point(tmp_path):
    exe = shutil.which("qprad")
    if exe is None:
        pytest.skip("console script not installed")
    config = _small_config(tmp_path)
    proc = subprocess.run(
        [exe, "--config", config, "--out", str(tmp_path / "o"), "simulate-exposure"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr


def test_fit_spectrum_command(tmp_path):
    # build a tiny synthetic spectrum dataset
    e = np.linspace(0.05, 3.0, 80)
    temps = [
        np.exp(-e / 0.4) * 1e4,
        4e3 * np.exp(-0.5 * ((e - 1.2) / 0.08) ** 2),
        2e3 * np.exp(-0.5 * ((e - 0.6) / 0.5) ** 2),
    ]
    true = SpectrumModel(10.0, 300.0, 5.0, 30.0, 120.0, 8.0, weights=(1.4, 0.8, 2.1))
    edges = np.linspace(0.0, 1100.0, 150)
    total = sum(w * smear_template(e, t, true, edges)
                for w, t in zip(true.weights, temps))
    counts = np.random.default_rng(5).poisson(total)

    tdir = tmp_path / "templates"
    tdir.mkdir()
    for i, t in enumerate(temps):
        with open(tdir / f"t{i}.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["energy_mev", "counts"])
            w.writerows(zip(e.tolist(), t.tolist()))
    hist = tmp_path / "hist.csv"
    with open(hist, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["adc_lo", "adc_hi", "counts"])
        w.writerows(zip(edges[:-1].tolist(), edges[1:].tolist(), counts.tolist()))

    config = _small_config(tmp_path, spectrum={
        "scale_offset_adc": 8.0,
        "scale_adc_per_mev": 290.0,
        "scale_quad_adc_per_mev2": 6.0,
        "var_const_adc2": 25.0,
        "var_linear_adc2_per_mev": 100.0,
        "var_quad_adc2_per_mev2": 10.0,
        "initial_weights": [1.0, 1.0, 1.0],
        "energy_ranges_mev": [[0.1, 2.8], [0.2, 2.5]],
    })
    out = tmp_path / "run"
    code = main(["--config", config, "--out", str(out), "fit-spectrum",
                 "--hist", str(hist), "--templates", str(tdir)])
    assert code == 0
    with open(out / "spectrum_fit.json") as fh:
        res = json.load(fh)
    assert set(res["weight_spread"]) == {"w0", "w1", "w2"}
    for fit in res["fits"].values():
        assert fit["params"]["w1"] == pytest.approx(0.8, rel=0.15)
