# src/units/params.py
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from src.common.errors import ConfigError

from .constants import CODATA2018, PhysicalConstants
from .species import Species


@dataclass(frozen=True)
class GasParameters:
    """Experiment configuration: N atoms of one species in a cubic box of side L (m).

    ``g_em_override`` (J m^3) replaces 4 pi hbar^2 a_s / m, e.g. to model Feshbach tuning.
    """

    species: Species
    atom_count: float
    box_length: float
    g_em_override: Optional[float] = None

    def __post_init__(self):
        if not self.atom_count >= 1:
            raise ConfigError(f"atom count must be >= 1, got {self.atom_count}")
        if not self.box_length > 0:
            raise ConfigError(f"box length must be positive, got {self.box_length}")
        if self.g_em_override is not None and not math.isfinite(self.g_em_override):
            raise ConfigError("g_em override must be finite")

    @property
    def volume(self) -> float:
        return self.box_length**3

    @property
    def density(self) -> float:
        return self.atom_count / self.volume

    def replace(self, **changes) -> "GasParameters":
        return replace(self, **changes)


@dataclass(frozen=True)
class DerivedQuantities:
    volume: float
    density: float
    g_em: float


def contact_coupling(species: Species, constants: PhysicalConstants = CODATA2018) -> float:
    """g_em = 4 pi hbar^2 a_s / m."""
    return 4.0 * math.pi * constants.hbar**2 * species.scattering_length / species.mass


def derived_quantities(
    params: GasParameters, constants: PhysicalConstants = CODATA2018
) -> DerivedQuantities:
    g_em = (
        params.g_em_override
        if params.g_em_override is not None
        else contact_coupling(params.species, constants)
    )
    return DerivedQuantities(volume=params.volume, density=params.density, g_em=g_em)


def energy_scale(params: GasParameters, constants: PhysicalConstants = CODATA2018) -> float:
    """E0 = hbar^2 / (2 m L^2), for reporting only."""
    return constants.hbar**2 / (2.0 * params.species.mass * params.box_length**2)
