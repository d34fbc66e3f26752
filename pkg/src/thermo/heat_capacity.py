# src/thermo/heat_capacity.py
"""Heat capacity, internal energy and depletion as sums over quasiparticle shells.

c_V / k_B = sum_s r3(s) f(eps_s / k_B T),   f(x) = x² e^x / (e^x - 1)².
The energies come from the spectrum package; eps depends on a mode only
through s = n², so every shell is evaluated once and weighted by r3(s).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Final, List, Optional

import numpy as np

from src.common.errors import ConfigError, NoConvergenceError
from src.spectrum.couplings import CouplingSet, GravityTheory, chemical_potential, resolve_couplings
from src.spectrum.dispersion import GroundStateEnergy, ground_state_energy, mixing, shell_energies
from src.units.constants import CODATA2018, PhysicalConstants
from src.units.params import GasParameters

from .shells import lattice_shells, shell_table

log = logging.getLogger(__name__)

SERIES_CUTOFF: Final[float] = 1e-4
# e^{-745} is the last positive double
UNDERFLOW_CUTOFF: Final[float] = 745.0
DEFAULT_REL_TOL: Final[float] = 1e-9
DEFAULT_MAX_SHELL: Final[int] = 1_000_000
QUIET_SHELLS: Final[int] = 5
CHUNK: Final[int] = 512


def mode_term_series(x):
    return 1.0 - x * x / 12.0


def mode_term_exact(x):
    """x² e^{-x} / (1 - e^{-x})², written with e^{-x} so large x never overflows."""
    return x * x * np.exp(-x) / np.expm1(-x) ** 2


def mode_terms(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    small = x < SERIES_CUTOFF
    mid = ~small & (x <= UNDERFLOW_CUTOFF)
    out[small] = mode_term_series(x[small])
    out[mid] = mode_term_exact(x[mid])
    return out


def occupation_energies(eps: np.ndarray, x: np.ndarray) -> np.ndarray:
    """eps / (e^x - 1) as eps e^{-x} / (1 - e^{-x}), zero once the Bose factor underflows."""
    out = np.zeros_like(eps)
    live = x <= UNDERFLOW_CUTOFF
    out[live] = eps[live] * np.exp(-x[live]) / -np.expm1(-x[live])
    return out


def mode_term(epsilon: float, temperature: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Contribution of one mode of energy epsilon (J) to c_V / k_B at temperature (K)."""
    if epsilon < 0 or temperature <= 0:
        raise ConfigError("mode_term needs epsilon >= 0 and temperature > 0")
    return float(mode_terms(np.array([epsilon / (constants.k_B * temperature)]))[0])


@dataclass(frozen=True)
class ThermoResult:
    temperature: float
    c_v: float
    c_v_over_kB: float
    internal_energy_thermal: float
    shells_used: int
    converged: bool
    theory: GravityTheory

    def as_row(self) -> dict:
        return {
            "T_K": self.temperature,
            "cv_over_kB": self.c_v_over_kB,
            "shells_used": self.shells_used,
            "converged": self.converged,
            "theory": self.theory.value,
        }


def _check_temperature(temperature: float):
    if not temperature > 0 or not math.isfinite(temperature):
        raise ConfigError(f"temperature must be positive and finite, got {temperature}")


def _shell_contributions(
    couplings: CouplingSet, theory: GravityTheory, kT: float, lo: int, hi: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-shell (c_V/k_B, thermal energy) for lo <= s <= hi; empty shells give zeros."""
    r3 = shell_table(hi)[lo : hi + 1]
    cv = np.zeros(r3.size)
    energy = np.zeros(r3.size)
    filled = r3 > 0
    if filled.any():
        shells = np.arange(lo, hi + 1)[filled]
        eps = shell_energies(couplings, theory, shells)
        x = eps / kT
        weight = r3[filled].astype(float)
        cv[filled] = weight * mode_terms(x)
        energy[filled] = weight * occupation_energies(eps, x)
    return cv, energy


def _result(couplings, theory, temperature, cv_parts, energy_parts, shells_used, converged):
    c_v_over_kB = math.fsum(cv_parts)
    return ThermoResult(
        temperature=temperature,
        c_v=c_v_over_kB * couplings.constants.k_B,
        c_v_over_kB=c_v_over_kB,
        internal_energy_thermal=math.fsum(energy_parts),
        shells_used=shells_used,
        converged=converged,
        theory=theory,
    )


def heat_capacity(
    params: GasParameters,
    theory: GravityTheory,
    temperature: float,
    rel_tol: float = DEFAULT_REL_TOL,
    couplings: Optional[CouplingSet] = None,
    max_shell: int = DEFAULT_MAX_SHELL,
) -> ThermoResult:
    """Shell sum in ascending s, stopped once QUIET_SHELLS consecutive shells each add
    no more than rel_tol of the running total."""
    _check_temperature(temperature)
    if not rel_tol > 0:
        raise ConfigError(f"rel_tol must be positive, got {rel_tol}")
    couplings = resolve_couplings(params, couplings)
    kT = couplings.constants.k_B * temperature

    cv_parts: List[float] = []
    energy_parts: List[float] = []
    running = 0.0
    quiet = 0
    lo = 1
    while lo <= max_shell:
        hi = min(lo + CHUNK - 1, max_shell)
        cv, energy = _shell_contributions(couplings, theory, kT, lo, hi)
        for offset, (c, u) in enumerate(zip(cv.tolist(), energy.tolist())):
            cv_parts.append(c)
            energy_parts.append(u)
            running += c
            quiet = quiet + 1 if c <= rel_tol * running else 0
            if quiet >= QUIET_SHELLS:
                shells_used = lo + offset
                log.debug(
                    "heat_capacity %s T=%g converged after %d shells", theory.value, temperature, shells_used
                )
                return _result(couplings, theory, temperature, cv_parts, energy_parts, shells_used, True)
        lo = hi + 1

    raise NoConvergenceError(
        f"heat capacity not converged within {max_shell} shells "
        f"(T={temperature:g} K, rel_tol={rel_tol:g}, {theory.value})"
    )


def heat_capacity_to_shell(
    params: GasParameters,
    theory: GravityTheory,
    temperature: float,
    max_shell: int,
    couplings: Optional[CouplingSet] = None,
) -> ThermoResult:
    """The same sum cut at n² <= max_shell with no convergence test."""
    _check_temperature(temperature)
    if max_shell < 1:
        raise ConfigError(f"max_shell must be >= 1, got {max_shell}")
    couplings = resolve_couplings(params, couplings)
    cv, energy = _shell_contributions(
        couplings, theory, couplings.constants.k_B * temperature, 1, max_shell
    )
    return _result(couplings, theory, temperature, cv.tolist(), energy.tolist(), max_shell, False)


def heat_capacity_lattice(
    params: GasParameters,
    theory: GravityTheory,
    temperature: float,
    max_n2: int,
    couplings: Optional[CouplingSet] = None,
) -> ThermoResult:
    """Brute force: one term per lattice vector with n² <= max_n2, no shell grouping."""
    _check_temperature(temperature)
    couplings = resolve_couplings(params, couplings)
    n2 = lattice_shells(max_n2)
    eps = shell_energies(couplings, theory, n2)
    x = eps / (couplings.constants.k_B * temperature)
    return _result(
        couplings,
        theory,
        temperature,
        mode_terms(x).tolist(),
        occupation_energies(eps, x).tolist(),
        max_n2,
        False,
    )


@dataclass(frozen=True)
class InternalEnergy:
    """E = thermal quasiparticle energy + mu N (+ ground state, only when asked for)."""

    thermal: float
    mu_n: float
    ground_state: Optional[GroundStateEnergy]
    shells_used: int

    @property
    def total(self) -> float:
        parts = [self.thermal, self.mu_n]
        if self.ground_state is not None:
            parts.append(self.ground_state.energy)
        return math.fsum(parts)


def internal_energy(
    params: GasParameters,
    theory: GravityTheory,
    temperature: float,
    rel_tol: float = DEFAULT_REL_TOL,
    couplings: Optional[CouplingSet] = None,
    ground_state_cutoff: Optional[int] = None,
) -> InternalEnergy:
    couplings = resolve_couplings(params, couplings)
    if temperature == 0:
        thermal, shells_used = 0.0, 0
    else:
        result = heat_capacity(params, theory, temperature, rel_tol, couplings=couplings)
        thermal, shells_used = result.internal_energy_thermal, result.shells_used
    ground = (
        ground_state_energy(params, theory, ground_state_cutoff, couplings=couplings)
        if ground_state_cutoff is not None
        else None
    )
    mu = chemical_potential(couplings, theory).mu
    return InternalEnergy(
        thermal=thermal, mu_n=mu * couplings.atom_count, ground_state=ground, shells_used=shells_used
    )


@dataclass(frozen=True)
class Depletion:
    n_t: float
    shell_cutoff: int
    temperature: float
    theory: GravityTheory


def depletion(
    params: GasParameters,
    temperature: float,
    theory: GravityTheory,
    shell_cutoff: int,
    couplings: Optional[CouplingSet] = None,
) -> Depletion:
    """N_T = sum over shells of r3 [v² + (u² + v²) / (e^{eps/k_B T} - 1)]; T = 0 keeps only v²."""
    if shell_cutoff < 1:
        raise ConfigError(f"shell_cutoff must be >= 1, got {shell_cutoff}")
    if temperature < 0:
        raise ConfigError(f"temperature must be >= 0, got {temperature}")
    couplings = resolve_couplings(params, couplings)
    table = shell_table(shell_cutoff)
    shells = np.flatnonzero(table[1:]) + 1
    r3 = table[shells].astype(float)
    u2, v2, eps = mixing(couplings, theory, shells)
    occupied = v2.copy()
    if temperature > 0:
        x = eps / (couplings.constants.k_B * temperature)
        bose = np.zeros_like(x)
        live = x <= UNDERFLOW_CUTOFF
        bose[live] = np.exp(-x[live]) / -np.expm1(-x[live])
        occupied = occupied + (u2 + v2) * bose
    return Depletion(
        n_t=math.fsum(r3 * occupied), shell_cutoff=shell_cutoff, temperature=temperature, theory=theory
    )
