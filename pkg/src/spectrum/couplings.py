# src/spectrum/couplings.py
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional

from src.common.errors import ConfigError, DegenerateRegimeError
from src.potential.coefficients import GravityCoupling
from src.units.constants import CODATA2018, PhysicalConstants
from src.units.params import GasParameters, derived_quantities

log = logging.getLogger(__name__)


class GravityTheory(str, Enum):
    """Semi-classical gravity (one-body mean field) or linearised quantum gravity (two-body)."""

    CLASSICAL = "classical"
    QUANTUM = "quantum"

    @classmethod
    def select(cls, choice: str) -> List["GravityTheory"]:
        """'quantum' | 'classical' | 'both'; 'both' always lists Classical first."""
        choice = choice.strip().lower()
        if choice == "both":
            return [cls.CLASSICAL, cls.QUANTUM]
        try:
            return [cls(choice)]
        except ValueError:
            raise ConfigError(f"theory must be quantum, classical or both, got {choice!r}") from None


class Regime(str, Enum):
    EM_DOMINATED = "EMDominated"
    GRAVITY_DOMINATED = "GravityDominated"


@dataclass(frozen=True)
class CouplingSet:
    """Couplings of one gas configuration (J m³), density n (m⁻³) and the box it lives in.

    g_gk(n²) = gk_prefactor / n².  A set with no interaction at all
    (g_em = g_g0 = 0) counts as EMDominated; any other tie g_em = |g_g0| is rejected.
    """

    g_em: float
    g_g0: float
    gk_prefactor: float
    density: float
    mass: float
    box_length: float
    atom_count: float
    constants: PhysicalConstants = CODATA2018

    def __post_init__(self):
        if self.g_em == abs(self.g_g0) and self.g_g0 != 0.0:
            raise DegenerateRegimeError(
                f"g_em = |g_g0| = {self.g_em:.6g} J m^3 sits exactly on the regime boundary"
            )

    @property
    def regime(self) -> Regime:
        if self.g_em < abs(self.g_g0):
            return Regime.GRAVITY_DOMINATED
        return Regime.EM_DOMINATED

    @property
    def volume(self) -> float:
        return self.box_length**3

    def g_gk(self, n2):
        """Mode coefficient for shell n² (scalar or numpy array, n² >= 1)."""
        return self.gk_prefactor / n2

    def without_gravity(self) -> "CouplingSet":
        return replace(self, g_g0=0.0, gk_prefactor=0.0)

    def with_gk_zeroed(self) -> "CouplingSet":
        return replace(self, gk_prefactor=0.0)

    def as_dict(self) -> dict:
        return {
            "g_em_J_m3": self.g_em,
            "g_g0_J_m3": self.g_g0,
            "gk_prefactor_J_m3": self.gk_prefactor,
            "density_m3": self.density,
            "regime": self.regime.value,
        }


def build_couplings(
    params: GasParameters, constants: PhysicalConstants = CODATA2018
) -> CouplingSet:
    derived = derived_quantities(params, constants)
    gravity = GravityCoupling(params.species.mass, params.box_length, constants)
    couplings = CouplingSet(
        g_em=derived.g_em,
        g_g0=gravity.g_g0,
        gk_prefactor=gravity.prefactor,
        density=derived.density,
        mass=params.species.mass,
        box_length=params.box_length,
        atom_count=params.atom_count,
        constants=constants,
    )
    log.debug(
        "couplings for %s N=%g L=%g: g_em=%.6g g_g0=%.6g (%s)",
        params.species.name,
        params.atom_count,
        params.box_length,
        couplings.g_em,
        couplings.g_g0,
        couplings.regime.value,
    )
    return couplings


def resolve_couplings(params: GasParameters, couplings: Optional[CouplingSet]) -> CouplingSet:
    return build_couplings(params) if couplings is None else couplings


@dataclass(frozen=True)
class ChemicalPotential:
    mu: float
    theory: GravityTheory
    regime: Regime


def chemical_potential(couplings: CouplingSet, theory: GravityTheory) -> ChemicalPotential:
    """Gapless choice of mu: n(g_em + g_g0), tripled for quantum gravity when gravity dominates."""
    regime = couplings.regime
    mu = couplings.density * (couplings.g_em + couplings.g_g0)
    if theory is GravityTheory.QUANTUM and regime is Regime.GRAVITY_DOMINATED:
        mu = 3.0 * mu
    return ChemicalPotential(mu=mu, theory=theory, regime=regime)
