# src/spectrum/dispersion.py
"""Quasiparticle energies and Bogolyubov coefficients on the box lattice.

Everything here depends on a mode only through n², so the array functions take
shells (integer n² >= 1) and the scalar wrappers take a ModeIndex.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.common.errors import ConfigError, DynamicalInstabilityError, NonFiniteError
from src.potential.modes import ModeIndex
from src.thermo.shells import shell_table
from src.units.params import GasParameters

from .couplings import (
    CouplingSet,
    GravityTheory,
    Regime,
    chemical_potential,
    resolve_couplings,
)


def _as_shells(n2) -> np.ndarray:
    shells = np.atleast_1d(np.asarray(n2, dtype=float))
    if shells.size and shells.min() < 1:
        raise ConfigError("quasiparticle shells start at n² = 1; the zero mode is the condensate")
    return shells


def wavenumbers(couplings: CouplingSet, n2) -> np.ndarray:
    return 2.0 * math.pi * np.sqrt(_as_shells(n2)) / couplings.box_length


def kinetic_energies(couplings: CouplingSet, n2) -> np.ndarray:
    """hbar² k² / 2m."""
    hk = couplings.constants.hbar * wavenumbers(couplings, n2)
    return hk * hk / (2.0 * couplings.mass)


def _raise_first_negative(radicand: np.ndarray, shells: np.ndarray, theory: GravityTheory):
    bad = np.flatnonzero(radicand < 0.0)
    if bad.size:
        i = bad[0]
        raise DynamicalInstabilityError(int(shells[i]), float(radicand[i]), theory.value)


def shell_energies(couplings: CouplingSet, theory: GravityTheory, n2) -> np.ndarray:
    """Gapless dispersion for every shell in ``n2``.

    classical:                 hbar k sqrt(hbar²k²/4m² + n g_em/m)
    quantum, EM dominated:     hbar k sqrt(hbar²k²/4m² + n g_em/m + n g_gk/m)
    quantum, gravity dominated sqrt((e - 2n(g_em + g_g0)) (e - 2n(g_g0 - g_gk))),  e = hbar²k²/2m
    """
    shells = _as_shells(n2)
    m = couplings.mass
    n = couplings.density
    hk = couplings.constants.hbar * wavenumbers(couplings, shells)

    if theory is GravityTheory.QUANTUM and couplings.regime is Regime.GRAVITY_DOMINATED:
        e = hk * hk / (2.0 * m)
        radicand = (e - 2.0 * n * (couplings.g_em + couplings.g_g0)) * (
            e - 2.0 * n * (couplings.g_g0 - couplings.g_gk(shells))
        )
        _raise_first_negative(radicand, shells, theory)
        energies = np.sqrt(radicand)
    else:
        # the quantum term is added last so that a zero g_gk leaves the classical value untouched
        inner = hk * hk / (4.0 * m * m) + n * couplings.g_em / m
        if theory is GravityTheory.QUANTUM:
            inner = inner + n * couplings.g_gk(shells) / m
        _raise_first_negative(inner, shells, theory)
        energies = hk * np.sqrt(inner)

    if not np.all(np.isfinite(energies)):
        raise NonFiniteError(f"non-finite quasiparticle energy ({theory.value})")
    return energies


@dataclass(frozen=True)
class DispersionPoint:
    mode: ModeIndex
    k: float
    epsilon: float
    theory: GravityTheory


def dispersion(
    params: GasParameters,
    theory: GravityTheory,
    mode: ModeIndex,
    couplings: Optional[CouplingSet] = None,
) -> DispersionPoint:
    mode.require_excitation()
    couplings = resolve_couplings(params, couplings)
    epsilon = float(shell_energies(couplings, theory, mode.n2)[0])
    return DispersionPoint(
        mode=mode, k=mode.wavenumber(couplings.box_length), epsilon=epsilon, theory=theory
    )


def _pre_gapless_terms(couplings: CouplingSet, theory: GravityTheory, shells: np.ndarray, mu: float):
    """Diagonal (A) and off-diagonal (B) Bogolyubov matrix elements before fixing mu."""
    n = couplings.density
    e = kinetic_energies(couplings, shells)
    if theory is GravityTheory.QUANTUM:
        g_gk = couplings.g_gk(shells)
        diagonal = e - mu + n * (2.0 * couplings.g_em + couplings.g_g0 + g_gk)
        off_diagonal = n * (couplings.g_em + g_gk)
    else:
        diagonal = e - mu + n * (2.0 * couplings.g_em + couplings.g_g0)
        off_diagonal = np.full_like(e, n * couplings.g_em)
    return diagonal, off_diagonal


def pre_gapless_energy(
    couplings: CouplingSet, theory: GravityTheory, mode: ModeIndex, mu: float
) -> float:
    """sqrt(A² - B²) for an arbitrary mu; with the gapless mu this is the dispersion again."""
    mode.require_excitation()
    a, b = _pre_gapless_terms(couplings, theory, _as_shells(mode.n2), mu)
    radicand = (a - b) * (a + b)
    _raise_first_negative(radicand, _as_shells(mode.n2), theory)
    return float(np.sqrt(radicand)[0])


def mixing(couplings: CouplingSet, theory: GravityTheory, n2) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(u², v², epsilon) per shell with u² = A/2eps + 1/2 and v² = A/2eps - 1/2."""
    shells = _as_shells(n2)
    mu = chemical_potential(couplings, theory).mu
    eps = shell_energies(couplings, theory, shells)
    if np.any(eps == 0.0):
        raise NonFiniteError("zero quasiparticle energy: Bogolyubov coefficients undefined")
    a, b = _pre_gapless_terms(couplings, theory, shells, mu)
    ratio = np.maximum(a / (2.0 * eps), 0.5)
    # no off-diagonal coupling means no mixing at all
    unmixed = b == 0.0
    u2 = np.where(unmixed, 1.0, ratio + 0.5)
    v2 = np.where(unmixed, 0.0, ratio - 0.5)
    return u2, v2, eps


@dataclass(frozen=True)
class BogolyubovCoefficients:
    u: float
    v: float
    mode: ModeIndex


def bogolyubov_coefficients(
    params: GasParameters,
    theory: GravityTheory,
    mode: ModeIndex,
    couplings: Optional[CouplingSet] = None,
) -> BogolyubovCoefficients:
    mode.require_excitation()
    couplings = resolve_couplings(params, couplings)
    u2, v2, _ = mixing(couplings, theory, mode.n2)
    return BogolyubovCoefficients(u=math.sqrt(u2[0]), v=math.sqrt(v2[0]), mode=mode)


@dataclass(frozen=True)
class GroundStateEnergy:
    """Partial ground-state energy up to ``shell_cutoff``; grows without bound as the cutoff rises."""

    energy: float
    shell_cutoff: int
    kinetic_scale: float
    theory: GravityTheory


def ground_state_energy(
    params: GasParameters,
    theory: GravityTheory,
    shell_cutoff: int,
    couplings: Optional[CouplingSet] = None,
) -> GroundStateEnergy:
    if shell_cutoff < 1:
        raise ConfigError(f"shell_cutoff must be >= 1, got {shell_cutoff}")
    couplings = resolve_couplings(params, couplings)
    table = shell_table(shell_cutoff)
    shells = np.flatnonzero(table)
    shells = shells[shells >= 1]
    r3 = table[shells].astype(float)

    n = couplings.density
    N = couplings.atom_count
    mu = chemical_potential(couplings, theory).mu
    e = kinetic_energies(couplings, shells)
    u2, v2, eps = mixing(couplings, theory, shells)

    parts = [
        0.5 * n * N * couplings.g_em,
        *(0.5 * r3 * (mu - e - 2.0 * n * couplings.g_em - n * couplings.g_g0)),
    ]
    if theory is GravityTheory.QUANTUM:
        parts.append(0.5 * n * N * couplings.g_g0)
        parts.extend(0.5 * r3 * (eps - n * couplings.g_gk(shells)))
    else:
        # thermal-cloud mean field, N_T taken at zero temperature
        depleted = math.fsum(r3 * v2)
        parts.append(depleted * depleted / couplings.volume * couplings.g_g0)
        parts.extend(0.5 * r3 * eps)

    return GroundStateEnergy(
        energy=math.fsum(parts),
        shell_cutoff=shell_cutoff,
        kinetic_scale=math.fsum(0.5 * r3 * e),
        theory=theory,
    )
