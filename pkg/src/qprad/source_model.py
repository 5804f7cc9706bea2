"""Radiation source bookkeeping: decaying isotope inventories,
environmental components with shield efficiencies, and absorbed power
density in a target material.

All operations are pure functions of immutable inputs. Times are
elapsed seconds relative to the inventory reference timestamp;
back-extrapolation (negative elapsed time) is allowed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Tuple

from .errors import ConfigError


class ShieldState(enum.Enum):
    NONE = "none"
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class Isotope:
    """A radioisotope with its half-life and per-material conversion from
    activity to absorbed power density (keV/s/mm^3 per Bq)."""

    name: str
    half_life_s: float
    power_coeff: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.half_life_s > 0:
            raise ConfigError(f"isotope {self.name!r}: half_life must be > 0")
        for material, coeff in self.power_coeff.items():
            if coeff < 0:
                raise ConfigError(
                    f"isotope {self.name!r}: power coefficient for "
                    f"{material!r} must be >= 0"
                )


@dataclass(frozen=True)
class SourceInventory:
    """Isotope activities (Bq) at a common reference time."""

    reference_time: float
    entries: Tuple[Tuple[Isotope, float], ...] = ()

    def __post_init__(self):
        names = [iso.name for iso, _ in self.entries]
        if len(names) != len(set(names)):
            raise ConfigError("inventory entries must be unique by isotope name")
        for iso, activity in self.entries:
            if activity < 0:
                raise ConfigError(f"activity of {iso.name!r} must be >= 0")


@dataclass(frozen=True)
class EnvironmentComponent:
    """One external radiation component (e.g. wall gammas, cosmic rays)
    with its power density per material and shield efficiency per shield
    position. Efficiency with no shield is zero by definition."""

    name: str
    power: Mapping[str, float]
    eta_up: float = 0.0
    eta_down: float = 0.0

    def __post_init__(self):
        for material, p in self.power.items():
            if p < 0:
                raise ConfigError(
                    f"component {self.name!r}: power for {material!r} must be >= 0"
                )
        for label, eta in (("eta_up", self.eta_up), ("eta_down", self.eta_down)):
            if not 0.0 <= eta <= 1.0:
                raise ConfigError(f"component {self.name!r}: {label} must be in [0, 1]")

    def eta(self, shield: ShieldState) -> float:
        if shield is ShieldState.NONE:
            return 0.0
        return self.eta_up if shield is ShieldState.UP else self.eta_down


@dataclass(frozen=True)
class EnvironmentModel:
    """External components plus an internal power density that the shield
    cannot attenuate."""

    components: Tuple[EnvironmentComponent, ...] = ()
    internal_power: float = 0.0

    def __post_init__(self):
        if self.internal_power < 0:
            raise ConfigError("internal_power must be >= 0")


def activity_at(inventory: SourceInventory, t_s: float) -> dict[str, float]:
    """Activities (Bq) of every isotope after ``t_s`` elapsed seconds.

    Each isotope decays independently: A(t) = A0 * 2**(-t / half_life).
    """
    return {
        iso.name: activity * 2.0 ** (-t_s / iso.half_life_s)
        for iso, activity in inventory.entries
    }


def source_power_density(
    inventory: SourceInventory, t_s: float, material: str
) -> float:
    """Absorbed power density (keV/s/mm^3) from the inventory at ``t_s``."""
    total = 0.0
    for iso, activity in inventory.entries:
        if material not in iso.power_coeff:
            raise ConfigError(
                f"isotope {iso.name!r} has no power coefficient for "
                f"material {material!r}"
            )
        total += (
            activity
            * 2.0 ** (-t_s / iso.half_life_s)
            * iso.power_coeff[material]
        )
    return total


def environment_power_density(
    env: EnvironmentModel, shield: ShieldState, material: str
) -> float:
    """Internal power plus shield-attenuated external components."""
    total = env.internal_power
    for comp in env.components:
        total += (1.0 - comp.eta(shield)) * comp.power.get(material, 0.0)
    return total


def total_power_density(
    inventory: SourceInventory,
    env: EnvironmentModel,
    shield: ShieldState,
    t_s: float,
    material: str,
) -> float:
    return source_power_density(inventory, t_s, material) + environment_power_density(
        env, shield, material
    )


def weighted_shield_efficiency(
    env: EnvironmentModel, shield: ShieldState, material: str
) -> float:
    """Effective efficiency of the shield against the total external power:
    each component's efficiency weighted by its share of the external
    power density in ``material``."""
    total = 0.0
    blocked = 0.0
    for comp in env.components:
        p = comp.power.get(material, 0.0)
        total += p
        blocked += comp.eta(shield) * p
    if total == 0.0:
        return 0.0
    return blocked / total


def external_power_density(env: EnvironmentModel, material: str) -> float:
    """Unshielded external power density (excludes the internal term)."""
    return math.fsum(c.power.get(material, 0.0) for c in env.components)
