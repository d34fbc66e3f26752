# src/potential/modes.py
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from src.common.errors import ConfigError, ZeroModeError


@dataclass(frozen=True, order=True)
class ModeIndex:
    """Integer lattice vector labelling a plane-wave mode, k = 2 pi n / L."""

    n_x: int
    n_y: int
    n_z: int

    @property
    def n2(self) -> int:
        return self.n_x * self.n_x + self.n_y * self.n_y + self.n_z * self.n_z

    @property
    def is_zero(self) -> bool:
        return self.n2 == 0

    def wavenumber(self, box_length: float) -> float:
        return 2.0 * math.pi * math.sqrt(self.n2) / box_length

    def canonical(self) -> tuple[int, int, int]:
        """Absolute components in ascending order; equal for all sign flips and permutations."""
        return tuple(sorted((abs(self.n_x), abs(self.n_y), abs(self.n_z))))

    def require_excitation(self) -> "ModeIndex":
        if self.is_zero:
            raise ZeroModeError("the zero mode labels the condensate, not an excitation")
        return self

    @classmethod
    def parse(cls, text: str) -> "ModeIndex":
        """Parse "1,0,0"."""
        try:
            parts = [int(p) for p in text.replace(" ", "").split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad mode {text!r}: expected three integers") from exc
        if len(parts) != 3:
            raise ConfigError(f"bad mode {text!r}: expected three integers")
        return cls(*parts)

    def __str__(self) -> str:
        return f"({self.n_x},{self.n_y},{self.n_z})"


ZERO_MODE = ModeIndex(0, 0, 0)


def shell_mode(n2: int) -> ModeIndex:
    """A representative mode of shell n² (first found in canonical order)."""
    for mode in canonical_modes(n2):
        if mode.n2 == n2:
            return mode
    raise ConfigError(f"no lattice vector has n² = {n2}")


def canonical_modes(max_n2: int) -> Iterator[ModeIndex]:
    """One mode per class of sign flips and permutations, 1 <= n² <= max_n2,
    ordered by (n², components)."""
    r = math.isqrt(max_n2)
    found = set()
    for a, b, c in product(range(r + 1), repeat=3):
        if a <= b <= c and 0 < a * a + b * b + c * c <= max_n2:
            found.add((a * a + b * b + c * c, a, b, c))
    for _, a, b, c in sorted(found):
        yield ModeIndex(a, b, c)
