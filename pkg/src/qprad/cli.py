"""Command-line entry point.

Six subcommands cover the simulate / analyze round trip:

  simulate-exposure   rate vs time under a decaying source  -> exposure.csv, power.csv
  fit-exposure        recover (a, gamma_other) from a series -> fit.json
  simulate-shield-ab  paired shield up/down T1 campaign      -> ab_records.csv
  analyze-ab          paired-difference statistics           -> report.json, histogram.csv,
                                                                robustness_grid.csv
  inject-qp           rate vs delay after a QP pulse         -> injection.csv, fits.json
  fit-spectrum        detector response + template weights   -> spectrum_fit.json

Every run writes run_manifest.json (config hash, seed, output checksums)
into the output directory. Reruns with the same config and seed produce
byte-identical outputs. Exit codes: 0 success, 2 bad configuration,
3 bad input data, 4 a fit failed to converge (outputs still written).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
import time
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .ab_analysis import (
    AbRecord,
    AnalysisConfig,
    asymmetry_stats,
    median_with_ci,
    pair_and_normalize,
    robustness_map,
    wilcoxon_signed_rank,
)
from .config import ScenarioConfig, load_scenario
from .errors import ConfigError, DataError, QpradError
from .fitting import (
    FitResult,
    SpectrumModel,
    fit_injection,
    fit_power_law_model,
    fit_spectrum_ranges,
)
from .observables import (
    QubitParams,
    ShieldScenario,
    delta_gamma_shield,
    pint_bound_from_asymmetry,
    pint_from_delta_gamma,
    qp_rate_coefficient,
    subtract_gamma_other_term,
)
from .source_model import (
    ShieldState,
    environment_power_density,
    source_power_density,
)
from .synth import synth_ab_campaign, synth_exposure_campaign, synth_injection_series

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NOCONV = 4


# ---------------------------------------------------------------------------
# deterministic serialization helpers


def _fmt(v) -> str:
    if isinstance(v, float) or isinstance(v, np.floating):
        return repr(float(v))
    return str(v)


def _atomic_write(path: str, data: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _write_rows(path: str, header: Sequence[str], rows, fmt: str) -> str:
    """Write a table as CSV (default) or a JSON list of row objects.
    Returns the actual path written."""
    if fmt == "json":
        path = os.path.splitext(path)[0] + ".json"
        payload = [dict(zip(header, [_maybe_float(v) for v in row])) for row in rows]
        _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return path
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    _atomic_write(path, buf.getvalue())
    return path


def _maybe_float(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o)}")


def _write_json(path: str, obj) -> str:
    _atomic_write(
        path, json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"
    )
    return path


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(outdir, command, config_path, seed, outputs, t0) -> None:
    manifest = {
        "tool": "qprad",
        "version": __version__,
        "command": command,
        "seed": seed,
        "config_sha256": _sha256(config_path) if config_path else None,
        "outputs": {
            os.path.basename(p): {"sha256": _sha256(p), "bytes": os.path.getsize(p)}
            for p in sorted(outputs)
        },
        "wall_time_s": round(time.monotonic() - t0, 3),
    }
    _write_json(os.path.join(outdir, "run_manifest.json"), manifest)


def _fit_to_dict(fit: FitResult) -> dict:
    return {
        "model": fit.model,
        "params": {k: float(v) for k, v in fit.params.items()},
        "stderr": {k: float(v) for k, v in fit.stderr.items()},
        "ci95": {k: [float(x) for x in fit.ci95(k)] for k in fit.params},
        "rss": float(fit.rss),
        "n_points": fit.n_points,
        "converged": bool(fit.converged),
        "notes": list(fit.notes),
    }


# ---------------------------------------------------------------------------
# CSV readers


def _read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            rows = [r for r in reader if r]
    except FileNotFoundError as exc:
        raise DataError(f"input file not found: {path}") from exc
    if len(rows) < 2:
        raise DataError(f"{path}: needs a header row and at least one data row")
    return rows[0], rows[1:]


def _columns(path: str, names: Sequence[str]) -> dict[str, np.ndarray]:
    header, rows = _read_csv(path)
    missing = [n for n in names if n not in header]
    if missing:
        raise DataError(f"{path}: missing column(s) {missing}; found {header}")
    idx = {n: header.index(n) for n in names}
    out = {}
    for n in names:
        try:
            out[n] = np.array([float(r[idx[n]]) for r in rows])
        except ValueError as exc:
            raise DataError(f"{path}: non-numeric value in column {n!r}") from exc
    return out


def _read_ab_records(path: str) -> list[AbRecord]:
    header, rows = _read_csv(path)
    need = ["qubit_id", "omega_q_rad_s", "cycle", "position", "repetition",
            "t1_us", "timestamp_s"]
    missing = [n for n in need if n not in header]
    if missing:
        raise DataError(f"{path}: missing column(s) {missing}")
    idx = {n: header.index(n) for n in need}
    records = []
    for k, r in enumerate(rows):
        try:
            records.append(
                AbRecord(
                    qubit_id=r[idx["qubit_id"]],
                    omega_q=float(r[idx["omega_q_rad_s"]]),
                    cycle=int(r[idx["cycle"]]),
                    position=r[idx["position"]],
                    repetition=int(r[idx["repetition"]]),
                    t1_us=float(r[idx["t1_us"]]),
                    timestamp_s=float(r[idx["timestamp_s"]]),
                )
            )
        except (ValueError, QpradError) as exc:
            raise DataError(f"{path}: bad record at data row {k + 1}: {exc}") from exc
    return records


def _shield_state(name: str) -> ShieldState:
    try:
        return ShieldState[name.upper()]
    except KeyError as exc:
        raise ConfigError(
            f"unknown shield state {name!r}; expected none, up or down"
        ) from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_simulate_exposure(cfg: ScenarioConfig, args) -> tuple[list[str], int]:
    exp = cfg.exposure
    if not exp:
        raise ConfigError("config has no exposure section")
    qid = exp.get("qubit_id")
    if qid is None:
        raise ConfigError("exposure.qubit_id is required")
    qubit = cfg.qubit(qid)
    if cfg.shield_scenario is None:
        raise ConfigError("simulate-exposure requires a shield_scenario section "
                          "(for the pair-breaking coefficient)")
    a = cfg.shield_scenario.a
    duration_s = float(exp.get("duration_h", 100.0)) * 3600.0
    n = int(exp.get("n_points", 200))
    if n < 2:
        raise ConfigError("exposure.n_points must be >= 2")
    times = np.linspace(0.0, duration_s, n)
    seed = args.seed if args.seed is not None else cfg.seed
    shield = _shield_state(str(exp.get("shield", "none")))
    res = synth_exposure_campaign(
        cfg.inventory,
        cfg.environment,
        qubit,
        a,
        times,
        noise_rel=float(exp.get("noise_rel", 0.0)),
        seed=int(exp.get("trace_seed", seed)),
        shield=shield,
        material=cfg.material,
    )
    rows = [
        (
            res["t_s"][i],
            res["p_src"][i],
            res["p_tot"][i],
            res["gamma1_true"][i],
            res["gamma1_meas"][i],
            res["gamma1_err"][i],
            qubit.omega_q,
        )
        for i in range(n)
    ]
    p1 = _write_rows(
        os.path.join(args.out, "exposure.csv"),
        ["t_s", "p_src_kev_s_mm3", "p_tot_kev_s_mm3", "gamma1_true_per_s",
         "gamma1_measured_per_s", "gamma1_stderr_per_s", "omega_q_rad_s"],
        rows,
        args.format,
    )
    p_env = np.array(
        [environment_power_density(cfg.environment, shield, cfg.material)] * n
    )
    p2 = _write_rows(
        os.path.join(args.out, "power.csv"),
        ["t_s", "p_src_kev_s_mm3", "p_env_kev_s_mm3", "p_tot_kev_s_mm3"],
        [
            (res["t_s"][i], res["p_src"][i], p_env[i], res["p_tot"][i])
            for i in range(n)
        ],
        args.format,
    )
    return [p1, p2], EXIT_OK


def cmd_fit_exposure(cfg: ScenarioConfig, args) -> tuple[list[str], int]:
    path = args.input or os.path.join(args.out, "exposure.csv")
    cols = _columns(
        path,
        ["p_tot_kev_s_mm3", "gamma1_measured_per_s", "gamma1_stderr_per_s",
         "omega_q_rad_s"],
    )
    omega = float(cols["omega_q_rad_s"][0])
    if not np.allclose(cols["omega_q_rad_s"], omega):
        raise DataError(f"{path}: omega_q_rad_s must be constant within one series")
    sigma = cols["gamma1_stderr_per_s"]
    sigma_opt: Optional[np.ndarray] = sigma if np.all(sigma > 0) else None
    free = fit_power_law_model(
        cols["p_tot_kev_s_mm3"], cols["gamma1_measured_per_s"], sigma_opt, omega
    )
    fixed = fit_power_law_model(
        cols["p_tot_kev_s_mm3"],
        cols["gamma1_measured_per_s"],
        sigma_opt,
        omega,
        fix_gamma_other=0.0,
    )
    report = {
        "input": os.path.basename(path),
        "omega_q_rad_s": omega,
        "free": _fit_to_dict(free),
        "zero_offset": _fit_to_dict(fixed),
    }
    out = _write_json(os.path.join(args.out, "fit.json"), report)
    code = EXIT_OK if free.converged and fixed.converged else EXIT_NOCONV
    return [out], code


def cmd_simulate_shield_ab(cfg: ScenarioConfig, args) -> tuple[list[str], int]:
    ab_cfg = cfg.build_ab_config(seed=args.seed)
    records = synth_ab_campaign(ab_cfg)
    rows = [
        (r.qubit_id, r.omega_q, r.cycle, r.position, r.repetition, r.t1_us,
         r.timestamp_s)
        for r in records
    ]
    p = _write_rows(
        os.path.join(args.out, "ab_records.csv"),
        ["qubit_id", "omega_q_rad_s", "cycle", "position", "repetition",
         "t1_us", "timestamp_s"],
        rows,
        args.format,
    )
    return [p], EXIT_OK


_DEFAULT_CUTOFFS = (20.0, 30.0, 40.0, 60.0, 100.0)
_DEFAULT_SIGMAS = (3.0, 5.0, 10.0, 20.0)


def cmd_analyze_ab(cfg: ScenarioConfig, args) -> tuple[list[str], int]:
    path = args.input or os.path.join(args.out, "ab_records.csv")
    records = _read_ab_records(path)
    acfg = cfg.analysis
    paired = pair_and_normalize(records, acfg)
    med = median_with_ci(paired.diffs, level=acfg.ci_level)
    wil = wilcoxon_signed_rank(paired.diffs, alternative="greater")
    asym = asymmetry_stats(records, acfg)

    report = {
        "input": os.path.basename(path),
        "n_records": len(records),
        "n_pairs": paired.n_pairs,
        "n_removed_cutoff": paired.n_removed_cutoff,
        "n_removed_outlier": paired.n_removed_outlier,
        "n_unmatched": paired.n_unmatched,
        "median_delta_gamma_per_s": med.median,
        "ci_level": acfg.ci_level,
        "ci_low_per_s": med.lower,
        "ci_high_per_s": med.upper,
        "wilcoxon": {
            "statistic": wil.statistic,
            "p_value": wil.p_value,
            "n": wil.n_effective,
            "method": wil.method,
            "alternative": "greater",
        },
        "asymmetry_median": asym.median,
    }

    sc = cfg.shield_scenario
    if sc is not None and asym.median > 0:
        q_ref = QubitParams(omega_q=acfg.omega_ref, gamma_other=0.0)
        bound = pint_bound_from_asymmetry(
            asym.median, sc.eta_up, sc.eta_down, sc.p_ext
        )
        report["pint_bound_kev_s_mm3"] = bound
        report["pint_bound_over_pext"] = bound / sc.p_ext
        gamma_other_ref = cfg.ab_campaign.get("gamma_other_ref_per_us")
        # with the Q1 non-QP rate configured, also report the corrected bound
        for qid, q in cfg.qubits.items():
            if math.isclose(q.omega_q, acfg.omega_ref, rel_tol=1e-9):
                corrected = subtract_gamma_other_term(bound, q.gamma_other, sc.a, q)
                report["pint_bound_corrected_kev_s_mm3"] = corrected
                report["pint_bound_corrected_over_pext"] = corrected / sc.p_ext
                break
        try:
            pint = pint_from_delta_gamma(med.median, sc, q_ref)
            report["pint_from_median_kev_s_mm3"] = pint
            report["pint_from_median_over_pext"] = pint / sc.p_ext
        except ConfigError:
            pass
        grid = np.linspace(0.0, 10.0 * sc.p_ext, 101)
        report["pint_curve"] = [
            {
                "pint_over_pext": float(p / sc.p_ext),
                "delta_gamma_per_s": delta_gamma_shield(
                    ShieldScenario(sc.a, float(p), sc.p_ext, sc.eta_up, sc.eta_down),
                    q_ref,
                ),
            }
            for p in grid
        ]

    per_qubit = {}
    for qid in sorted({r.qubit_id for r in records}):
        sub = [r for r in records if r.qubit_id == qid]
        try:
            pq = pair_and_normalize(sub, acfg)
        except DataError:
            continue
        per_qubit[qid] = {
            "n_pairs": pq.n_pairs,
            "median_delta_gamma_per_s": float(np.median(pq.diffs)),
        }
    report["per_qubit"] = per_qubit
    outputs = [_write_json(os.path.join(args.out, "report.json"), report)]

    lo, hi = np.percentile(paired.diffs, [0.5, 99.5])
    counts, edges = np.histogram(paired.diffs, bins=60, range=(lo, hi))
    outputs.append(
        _write_rows(
            os.path.join(args.out, "histogram.csv"),
            ["bin_lo_per_s", "bin_hi_per_s", "count"],
            [(edges[i], edges[i + 1], int(counts[i])) for i in range(counts.size)],
            args.format,
        )
    )

    rob = cfg.robustness
    cutoffs = [float(v) for v in rob.get("t1_cutoffs_us", _DEFAULT_CUTOFFS)]
    sigmas = [float(v) for v in rob.get("outlier_sigmas", _DEFAULT_SIGMAS)]
    grid_rows = []
    for mode in ("real", "no-move", "shuffled"):
        mode_cfg = AnalysisConfig(
            t1_cutoff_us=acfg.t1_cutoff_us,
            outlier_sigma=acfg.outlier_sigma,
            omega_ref=acfg.omega_ref,
            ci_level=acfg.ci_level,
            pairing=mode,
            aggregation=acfg.aggregation,
            shuffle_seed=acfg.shuffle_seed,
        )
        rmap = robustness_map(records, cutoffs, sigmas, mode_cfg)
        for i, sig in enumerate(rmap.outlier_sigmas):
            for j, cut in enumerate(rmap.t1_cutoffs_us):
                grid_rows.append(
                    (
                        mode,
                        cut,
                        sig,
                        rmap.p_values[i, j],
                        rmap.medians[i, j],
                        int(rmap.valid[i, j]),
                    )
                )
    outputs.append(
        _write_rows(
            os.path.join(args.out, "robustness_grid.csv"),
            ["pairing", "t1_cutoff_us", "outlier_sigma", "p_value",
             "median_delta_gamma_per_s", "valid"],
            grid_rows,
            args.format,
        )
    )
    return outputs, EXIT_OK


def _injection_delays(inj: dict) -> np.ndarray:
    spec = inj.get("delays_us")
    if spec is None:
        raise ConfigError("injection.delays_us is required")
    if isinstance(spec, dict):
        allowed = {"start", "stop", "n", "log"}
        unknown = set(spec) - allowed
        if unknown:
            raise ConfigError(f"unknown key(s) {sorted(unknown)} at injection.delays_us")
        start, stop = float(spec["start"]), float(spec["stop"])
        n = int(spec["n"])
        if n < 2:
            raise ConfigError("injection.delays_us.n must be >= 2")
        if spec.get("log", False):
            if start <= 0:
                raise ConfigError("log-spaced delays need start > 0")
            return np.geomspace(start, stop, n) * 1e-6
        return np.linspace(start, stop, n) * 1e-6
    return np.asarray([float(v) for v in spec]) * 1e-6


def cmd_inject_qp(cfg: ScenarioConfig, args) -> tuple[list[str], int]:
    inj = cfg.injection
    if not inj:
        raise ConfigError("config has no injection section")
    qid = inj.get("qubit_id")
    if qid is None:
        raise ConfigError("injection.qubit_id is required")
    qubit = cfg.qubit(qid)
    delays = _injection_delays(inj)
    seed = args.seed if args.seed is not None else cfg.seed
    t, gamma = synth_injection_series(
        x0=float(inj.get("x0", 0.0)),
        r=float(inj.get("r_per_s", 0.0)),
        s=float(inj.get("s_per_s", 0.0)),
        gamma_other=float(inj.get("gamma_other_per_us", 0.0)) * 1e6,
        qubit=qubit,
        delays_s=delays,
        noise_rel=float(inj.get("noise_rel", 0.0)),
        seed=seed,
    )
    outputs = [
        _write_rows(
            os.path.join(args.out, "injection.csv"),
            ["t_s", "gamma1_per_s"],
            list(zip(t, gamma)),
            args.format,
        )
    ]
    result = fit_injection(t, gamma, qubit)
    payload = {
        "omega_q_rad_s": qubit.omega_q,
        "rate_coeff_per_s": qp_rate_coefficient(qubit),
        "ranking": result["ranking"],
        "fits": {name: _fit_to_dict(f) for name, f in result["fits"].items()},
    }
    outputs.append(_write_json(os.path.join(args.out, "fits.json"), payload))
    best = result["fits"][result["ranking"][0]]
    return outputs, EXIT_OK if best.converged else EXIT_NOCONV


def cmd_fit_spectrum(cfg: ScenarioConfig, args) -> tuple[list[str], int]:
    spec = cfg.spectrum
    if not spec:
        raise ConfigError("config has no spectrum section")
    if not args.hist or not args.templates:
        raise ConfigError("fit-spectrum requires --hist and --templates")
    cols = _columns(args.hist, ["adc_lo", "adc_hi", "counts"])
    lo, hi = cols["adc_lo"], cols["adc_hi"]
    if not np.allclose(lo[1:], hi[:-1]):
        raise DataError(f"{args.hist}: ADC bins must be contiguous")
    edges = np.concatenate([lo, hi[-1:]])
    measured = cols["counts"]

    names = sorted(
        f for f in os.listdir(args.templates) if f.endswith(".csv")
    )
    if len(names) < 3:
        raise DataError(f"{args.templates}: need at least 3 template CSV files")
    templates = []
    for name in names:
        tc = _columns(os.path.join(args.templates, name), ["energy_mev", "counts"])
        templates.append((tc["energy_mev"], tc["counts"]))

    weights = spec.get("initial_weights", [1.0] * len(templates))
    if len(weights) != len(templates):
        raise ConfigError(
            f"spectrum.initial_weights has {len(weights)} entries for "
            f"{len(templates)} templates"
        )
    if "scale_adc_per_mev" not in spec:
        raise ConfigError("missing required key spectrum.scale_adc_per_mev")
    p0 = SpectrumModel(
        c0=float(spec.get("scale_offset_adc", 0.0)),
        c1=float(spec["scale_adc_per_mev"]),
        c2=float(spec.get("scale_quad_adc_per_mev2", 0.0)),
        sig0_sq=float(spec.get("var_const_adc2", 1.0)),
        sig1_sq=float(spec.get("var_linear_adc2_per_mev", 0.0)),
        sig2_sq=float(spec.get("var_quad_adc2_per_mev2", 0.0)),
        weights=tuple(float(w) for w in weights),
    )
    ranges = [tuple(float(v) for v in r) for r in spec.get("energy_ranges_mev", [])]
    if len(ranges) < 1:
        raise ConfigError("spectrum.energy_ranges_mev needs at least one window")
    result = fit_spectrum_ranges(edges, measured, templates, p0, ranges)
    payload = {
        "templates": names,
        "ranges_mev": [list(r) for r in ranges],
        "fits": {
            f"{r[0]:g}-{r[1]:g}": _fit_to_dict(f) for r, f in result["fits"].items()
        },
        "weight_spread": result["weight_spread"],
    }
    out = _write_json(os.path.join(args.out, "spectrum_fit.json"), payload)
    ok = all(f.converged for f in result["fits"].values())
    return [out], EXIT_OK if ok else EXIT_NOCONV


_COMMANDS = {
    "simulate-exposure": cmd_simulate_exposure,
    "fit-exposure": cmd_fit_exposure,
    "simulate-shield-ab": cmd_simulate_shield_ab,
    "analyze-ab": cmd_analyze_ab,
    "inject-qp": cmd_inject_qp,
    "fit-spectrum": cmd_fit_spectrum,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qprad",
        description="Radiation-to-relaxation simulator and inference toolkit",
    )
    parser.add_argument("--config", required=True, help="scenario JSON file")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the seed from the config")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--threads", type=int, default=None,
                        help="BLAS/FFT thread cap (default: QPRAD_THREADS or leave as-is)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="tabular output format")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("simulate-exposure", "simulate-shield-ab"):
        sub.add_parser(name)
    for name in ("fit-exposure", "analyze-ab"):
        p = sub.add_parser(name)
        p.add_argument("--input", default=None,
                       help="input CSV (default: <out>/<command's simulate output>)")
    sub.add_parser("inject-qp")
    p = sub.add_parser("fit-spectrum")
    p.add_argument("--hist", required=True, help="measured ADC histogram CSV")
    p.add_argument("--templates", required=True,
                   help="directory of energy-binned template CSVs")
    return parser


def _apply_threads(args) -> None:
    n = args.threads
    if n is None:
        env = os.environ.get("QPRAD_THREADS")
        if env is not None:
            try:
                n = int(env)
            except ValueError as exc:
                raise ConfigError(f"QPRAD_THREADS must be an integer, got {env!r}") from exc
    if n is None:
        return
    if n < 1:
        raise ConfigError("thread count must be >= 1")
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ[var] = str(n)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.monotonic()
    try:
        _apply_threads(args)
        cfg = load_scenario(args.config)
        os.makedirs(args.out, exist_ok=True)
        if not hasattr(args, "input"):
            args.input = None
        outputs, code = _COMMANDS[args.command](cfg, args)
        seed = args.seed if args.seed is not None else cfg.seed
        _write_manifest(args.out, args.command, args.config, seed, outputs, t0)
    except ConfigError as exc:
        print(f"qprad: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"qprad: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    if code == EXIT_NOCONV:
        print("qprad: warning: at least one fit did not converge", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
