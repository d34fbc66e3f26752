# src/units/constants.py
"""Physical constants in SI units.

Values are pinned to CODATA 2018. hbar, k_B and c are exact in the 2019 SI and
therefore agree with any recent ``scipy.constants``; G and the atomic mass unit
are kept at their 2018 values so results do not drift with the scipy release.
"""
from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Final


@dataclass(frozen=True)
class PhysicalConstants:
    # reduced Planck constant (J s)
    hbar: float
    # Newtonian constant of gravitation (m^3 kg^-1 s^-2)
    G: float
    # Boltzmann constant (J/K)
    k_B: float
    # speed of light (m/s)
    c: float
    # atomic mass unit (kg)
    u: float
    version: str = "CODATA 2018"

    def __post_init__(self):
        for name in ("hbar", "G", "k_B", "c", "u"):
            if not getattr(self, name) > 0:
                raise ValueError(f"physical constant {name} must be positive")

    def as_dict(self) -> dict:
        return asdict(self)


CODATA2018: Final[PhysicalConstants] = PhysicalConstants(
    hbar=1.054571817e-34,
    G=6.67430e-11,
    k_B=1.380649e-23,
    c=299792458.0,
    u=1.66053906660e-27,
)
