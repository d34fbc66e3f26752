# src/experiment/validity.py
"""Sanity checks on the approximations behind the model for one configuration."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Final, Tuple

from src.units.constants import CODATA2018, PhysicalConstants
from src.units.params import GasParameters

DILUTENESS_LIMIT: Final[float] = 1e-2
RELATIVISTIC_FACTOR: Final[float] = 1e9
VELOCITY_LIMIT_OVER_C: Final[float] = 1e-3


@dataclass(frozen=True)
class ValidityCheck:
    name: str
    passed: bool
    value: float
    limit: float


@dataclass(frozen=True)
class ValidityReport:
    diluteness: float
    schwarzschild_radius: float
    relativistic_radius: float
    schwarzschild_ratio: float
    three_body_half_life: float
    estimated_velocity: float
    mass_density: float
    flags: Tuple[ValidityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.flags)

    def flag_dict(self) -> dict:
        return {f"valid_{check.name}": check.passed for check in self.flags}

    def as_row(self) -> dict:
        return {
            "diluteness": self.diluteness,
            "schwarzschild_radius_m": self.schwarzschild_radius,
            "relativistic_radius_m": self.relativistic_radius,
            "schwarzschild_ratio": self.schwarzschild_ratio,
            "three_body_half_life_s": self.three_body_half_life,
            "estimated_velocity_m_s": self.estimated_velocity,
            "mass_density_kg_m3": self.mass_density,
            **self.flag_dict(),
        }


def three_body_half_life(rate: float, density: float) -> float:
    """Time for n to halve under dn/dt = -rate n³, i.e. n(t) = n0 / sqrt(1 + 2 rate n0² t)."""
    if rate == 0.0:
        return math.inf
    return 3.0 / (2.0 * rate * density * density)


def validity_report(params: GasParameters, constants: PhysicalConstants = CODATA2018) -> ValidityReport:
    species = params.species
    n = params.density
    total_mass = params.atom_count * species.mass

    diluteness = n * abs(species.scattering_length) ** 3
    r_s = constants.G * total_mass / constants.c**2
    relativistic_radius = RELATIVISTIC_FACTOR * r_s
    # uncertainty estimate: dx ~ n^{-1/3}, dp ~ m v
    velocity = constants.hbar * n ** (1.0 / 3.0) / species.mass
    velocity_limit = VELOCITY_LIMIT_OVER_C * constants.c

    flags = (
        ValidityCheck("dilute", diluteness < DILUTENESS_LIMIT, diluteness, DILUTENESS_LIMIT),
        ValidityCheck(
            "non_relativistic_size",
            params.box_length > relativistic_radius,
            params.box_length,
            relativistic_radius,
        ),
        ValidityCheck("slow_atoms", velocity < velocity_limit, velocity, velocity_limit),
    )
    return ValidityReport(
        diluteness=diluteness,
        schwarzschild_radius=r_s,
        relativistic_radius=relativistic_radius,
        schwarzschild_ratio=params.box_length / r_s,
        three_body_half_life=three_body_half_life(species.three_body_rate, n),
        estimated_velocity=velocity,
        mass_density=total_mass / params.volume,
        flags=flags,
    )
