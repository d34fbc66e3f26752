# src/potential/coefficients.py
"""Fourier coefficients of the -G m²/|r| pair potential over a cube of side L."""
from __future__ import annotations

import math
from dataclasses import dataclass

from src.units.constants import CODATA2018, PhysicalConstants

from .modes import ModeIndex


def v0_coefficient() -> float:
    """(pi/2) * ((12/pi) asinh(1/sqrt 2) - 1) = 2.3800...; the cube-centre potential in units of G m² L²."""
    return 0.5 * math.pi * (12.0 / math.pi * math.asinh(1.0 / math.sqrt(2.0)) - 1.0)


def v0_closed_form(mass: float, box_length: float, constants: PhysicalConstants = CODATA2018) -> float:
    """V_0 = -(pi G m² L² / 2) [(12/pi) asinh(1/sqrt 2) - 1]  (J m³). This is g_g0."""
    return -v0_coefficient() * constants.G * mass * mass * box_length * box_length


def gk_prefactor(mass: float, box_length: float, constants: PhysicalConstants = CODATA2018) -> float:
    """-G m² L² / pi, so that g_gk = prefactor / n²."""
    return -constants.G * mass * mass * box_length * box_length / math.pi


def gk_approx(
    mode: ModeIndex, mass: float, box_length: float, constants: PhysicalConstants = CODATA2018
) -> float:
    """g_gk = -4 pi G m² / k² = -G m² L² / (pi n²) for a nonzero mode."""
    mode.require_excitation()
    return gk_prefactor(mass, box_length, constants) / mode.n2


@dataclass(frozen=True)
class GravityCoupling:
    """Zero-mode value and mode coefficients of the gravitational pair potential."""

    mass: float
    box_length: float
    constants: PhysicalConstants = CODATA2018

    @property
    def g_g0(self) -> float:
        return v0_closed_form(self.mass, self.box_length, self.constants)

    @property
    def prefactor(self) -> float:
        return gk_prefactor(self.mass, self.box_length, self.constants)

    def g_gk(self, mode: ModeIndex) -> float:
        return gk_approx(mode, self.mass, self.box_length, self.constants)
