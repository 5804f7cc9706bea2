"""Scenario configuration: a JSON tree with unit-suffixed keys, strict
validation (unknown keys rejected with their path), and constructors for
the domain objects used by the CLI commands."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from .ab_analysis import AnalysisConfig
from .constants import BQ_PER_UCI, SECONDS_PER_HOUR
from .errors import ConfigError
from .observables import QubitParams, ShieldScenario
from .source_model import (
    EnvironmentComponent,
    EnvironmentModel,
    Isotope,
    SourceInventory,
)
from .synth import AbCampaignConfig, AbQubitSpec, DriftModel


def _check_keys(section: Mapping[str, Any], allowed: set[str], path: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(
            f"unknown key(s) {sorted(unknown)} at {path or '<root>'}; "
            f"allowed: {sorted(allowed)}"
        )


def _require(section: Mapping[str, Any], key: str, path: str):
    if key not in section:
        raise ConfigError(f"missing required key {path}.{key}")
    return section[key]


def _parse_isotope(d: Mapping[str, Any], path: str) -> tuple[Isotope, float]:
    _check_keys(
        d,
        {"name", "half_life_h", "half_life_s", "activity_bq", "activity_uci",
         "power_coeff_kev_s_mm3_per_bq", "notes"},
        path,
    )
    name = _require(d, "name", path)
    if "half_life_s" in d:
        half_life = float(d["half_life_s"])
    elif "half_life_h" in d:
        half_life = float(d["half_life_h"]) * SECONDS_PER_HOUR
    else:
        raise ConfigError(f"{path}: need half_life_h or half_life_s")
    if "activity_bq" in d:
        activity = float(d["activity_bq"])
    elif "activity_uci" in d:
        activity = float(d["activity_uci"]) * BQ_PER_UCI
    else:
        raise ConfigError(f"{path}: need activity_bq or activity_uci")
    coeff = {
        str(k): float(v)
        for k, v in _require(d, "power_coeff_kev_s_mm3_per_bq", path).items()
    }
    return Isotope(name=name, half_life_s=half_life, power_coeff=coeff), activity


def _parse_inventory(d: Mapping[str, Any], path: str) -> SourceInventory:
    _check_keys(d, {"reference_time_s", "isotopes", "notes"}, path)
    isotopes = tuple(
        _parse_isotope(iso, f"{path}.isotopes[{i}]")
        for i, iso in enumerate(d.get("isotopes", []))
    )
    return SourceInventory(
        reference_time=float(d.get("reference_time_s", 0.0)), entries=isotopes
    )


def _parse_environment(d: Mapping[str, Any], path: str) -> EnvironmentModel:
    _check_keys(d, {"internal_power_kev_s_mm3", "components", "notes"}, path)
    comps = []
    for i, c in enumerate(d.get("components", [])):
        cpath = f"{path}.components[{i}]"
        _check_keys(c, {"name", "power_kev_s_mm3", "eta_up", "eta_down", "notes"}, cpath)
        comps.append(
            EnvironmentComponent(
                name=_require(c, "name", cpath),
                power={str(k): float(v) for k, v in _require(c, "power_kev_s_mm3", cpath).items()},
                eta_up=float(c.get("eta_up", 0.0)),
                eta_down=float(c.get("eta_down", 0.0)),
            )
        )
    return EnvironmentModel(
        components=tuple(comps),
        internal_power=float(d.get("internal_power_kev_s_mm3", 0.0)),
    )


def _parse_qubit(d: Mapping[str, Any], path: str) -> tuple[str, QubitParams]:
    _check_keys(
        d, {"id", "frequency_ghz", "omega_rad_s", "gamma_other_per_us", "notes"}, path
    )
    qid = str(_require(d, "id", path))
    if "omega_rad_s" in d:
        omega = float(d["omega_rad_s"])
    elif "frequency_ghz" in d:
        omega = 2 * math.pi * float(d["frequency_ghz"]) * 1e9
    else:
        raise ConfigError(f"{path}: need frequency_ghz or omega_rad_s")
    gamma_other = float(d.get("gamma_other_per_us", 0.0)) * 1e6
    return qid, QubitParams(omega_q=omega, gamma_other=gamma_other)


def _parse_scenario_section(d: Mapping[str, Any], path: str) -> ShieldScenario:
    _check_keys(
        d,
        {"a_sqrt_mm3_per_kev", "p_int_kev_s_mm3", "p_ext_kev_s_mm3",
         "eta_up", "eta_down", "notes"},
        path,
    )
    return ShieldScenario(
        a=float(_require(d, "a_sqrt_mm3_per_kev", path)),
        p_int=float(d.get("p_int_kev_s_mm3", 0.0)),
        p_ext=float(_require(d, "p_ext_kev_s_mm3", path)),
        eta_up=float(_require(d, "eta_up", path)),
        eta_down=float(d.get("eta_down", 0.0)),
    )


def _parse_drift(d: Mapping[str, Any], path: str) -> DriftModel:
    _check_keys(d, {"alpha", "s_const_us2_per_hz", "dt_s", "notes"}, path)
    return DriftModel(
        alpha=float(d.get("alpha", 1.5)),
        s_const=float(d.get("s_const_us2_per_hz", 0.0)),
        dt_s=float(d.get("dt_s", 1.0)),
    )


def _parse_analysis(d: Mapping[str, Any], path: str) -> AnalysisConfig:
    _check_keys(
        d,
        {"t1_cutoff_us", "outlier_sigma", "omega_ref_rad_s", "ci_level",
         "pairing", "aggregation", "shuffle_seed", "robustness", "notes"},
        path,
    )
    kwargs = {}
    if "t1_cutoff_us" in d:
        kwargs["t1_cutoff_us"] = float(d["t1_cutoff_us"])
    if "outlier_sigma" in d:
        kwargs["outlier_sigma"] = float(d["outlier_sigma"])
    if "omega_ref_rad_s" in d:
        kwargs["omega_ref"] = float(d["omega_ref_rad_s"])
    if "ci_level" in d:
        kwargs["ci_level"] = float(d["ci_level"])
    if "pairing" in d:
        kwargs["pairing"] = str(d["pairing"])
    if "aggregation" in d:
        kwargs["aggregation"] = str(d["aggregation"])
    if "shuffle_seed" in d:
        kwargs["shuffle_seed"] = int(d["shuffle_seed"])
    rob = d.get("robustness", {})
    if rob:
        _check_keys(rob, {"t1_cutoffs_us", "outlier_sigmas", "notes"}, f"{path}.robustness")
    return AnalysisConfig(**kwargs)


@dataclass
class ScenarioConfig:
    """Validated scenario with constructed domain objects."""

    raw: dict
    seed: int = 0
    material: str = "Al"
    inventory: SourceInventory = field(default_factory=lambda: SourceInventory(0.0))
    environment: EnvironmentModel = field(default_factory=EnvironmentModel)
    qubits: dict[str, QubitParams] = field(default_factory=dict)
    shield_scenario: Optional[ShieldScenario] = None
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    exposure: dict = field(default_factory=dict)
    ab_campaign: dict = field(default_factory=dict)
    injection: dict = field(default_factory=dict)
    spectrum: dict = field(default_factory=dict)
    robustness: dict = field(default_factory=dict)

    def qubit(self, qid: str) -> QubitParams:
        if qid not in self.qubits:
            raise ConfigError(f"unknown qubit id {qid!r}; configured: {sorted(self.qubits)}")
        return self.qubits[qid]

    def build_ab_config(self, seed: Optional[int] = None) -> AbCampaignConfig:
        ab = self.ab_campaign
        if not ab:
            raise ConfigError("config has no ab_campaign section")
        if self.shield_scenario is None:
            raise ConfigError("ab_campaign requires a shield_scenario section")
        overrides = ab.get("qubit_overrides", {})
        specs = []
        for qid, params in self.qubits.items():
            ov = overrides.get(qid, {})
            specs.append(
                AbQubitSpec(
                    qubit_id=qid,
                    params=params,
                    cycles=int(ov["cycles"]) if "cycles" in ov else None,
                    n_per_position=int(ov["n_per_position"]) if "n_per_position" in ov else None,
                )
            )
        drift = ab.get("drift")
        return AbCampaignConfig(
            qubits=tuple(specs),
            cycles=int(ab.get("cycles", 1)),
            n_per_position=int(ab.get("n_per_position", 1)),
            cycle_period_s=float(ab.get("cycle_period_s", 900.0)),
            scenario=self.shield_scenario,
            drift=_parse_drift(drift, "ab_campaign.drift") if drift else None,
            t1_noise_rel=float(ab.get("t1_noise_rel", 0.0)),
            seed=self.seed if seed is None else seed,
        )


_TOP_KEYS = {
    "seed", "material", "inventory", "environment", "qubits",
    "shield_scenario", "analysis", "exposure", "ab_campaign", "injection",
    "spectrum", "notes",
}

_EXPOSURE_KEYS = {
    "qubit_id", "duration_h", "n_points", "noise_rel", "shield",
    "trace_seed", "notes",
}
_AB_KEYS = {
    "cycles", "n_per_position", "cycle_period_s", "t1_noise_rel", "drift",
    "qubit_overrides", "notes",
}
_INJECTION_KEYS = {
    "qubit_id", "x0", "r_per_s", "s_per_s", "gamma_other_per_us",
    "delays_us", "noise_rel", "notes",
}
_SPECTRUM_KEYS = {
    "scale_adc_per_mev", "scale_offset_adc", "scale_quad_adc_per_mev2",
    "var_const_adc2", "var_linear_adc2_per_mev", "var_quad_adc2_per_mev2",
    "initial_weights", "energy_ranges_mev", "notes",
}


def parse_scenario(raw: Mapping[str, Any]) -> ScenarioConfig:
    if not isinstance(raw, Mapping):
        raise ConfigError("config root must be a JSON object")
    _check_keys(raw, _TOP_KEYS, "")
    cfg = ScenarioConfig(raw=dict(raw))
    cfg.seed = int(raw.get("seed", 0))
    cfg.material = str(raw.get("material", "Al"))
    if "inventory" in raw:
        cfg.inventory = _parse_inventory(raw["inventory"], "inventory")
    if "environment" in raw:
        cfg.environment = _parse_environment(raw["environment"], "environment")
    for i, q in enumerate(raw.get("qubits", [])):
        qid, params = _parse_qubit(q, f"qubits[{i}]")
        if qid in cfg.qubits:
            raise ConfigError(f"duplicate qubit id {qid!r}")
        cfg.qubits[qid] = params
    if "shield_scenario" in raw:
        cfg.shield_scenario = _parse_scenario_section(
            raw["shield_scenario"], "shield_scenario"
        )
    if "analysis" in raw:
        cfg.analysis = _parse_analysis(raw["analysis"], "analysis")
        cfg.robustness = raw["analysis"].get("robustness", {})
    if "exposure" in raw:
        _check_keys(raw["exposure"], _EXPOSURE_KEYS, "exposure")
        cfg.exposure = dict(raw["exposure"])
    if "ab_campaign" in raw:
        _check_keys(raw["ab_campaign"], _AB_KEYS, "ab_campaign")
        cfg.ab_campaign = dict(raw["ab_campaign"])
    if "injection" in raw:
        _check_keys(raw["injection"], _INJECTION_KEYS, "injection")
        cfg.injection = dict(raw["injection"])
    if "spectrum" in raw:
        _check_keys(raw["spectrum"], _SPECTRUM_KEYS, "spectrum")
        cfg.spectrum = dict(raw["spectrum"])
    return cfg


def load_scenario(path: str) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {path}: {exc}") from exc
    return parse_scenario(raw)
