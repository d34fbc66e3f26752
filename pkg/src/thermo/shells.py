# src/thermo/shells.py
"""Lattice shells: how many integer vectors share each squared norm s = n²."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from src.common.errors import ConfigError

_MIN_TABLE = 1024


@lru_cache(maxsize=4096)
def shell_multiplicity(s: int) -> int:
    """r3(s): number of (n_x, n_y, n_z) in Z³ with n_x² + n_y² + n_z² = s, by direct enumeration."""
    if s < 1:
        raise ConfigError(f"shell index must be >= 1, got {s}")
    bound = math.isqrt(s)
    count = 0
    for x in range(-bound, bound + 1):
        rest_x = s - x * x
        for y in range(-math.isqrt(rest_x), math.isqrt(rest_x) + 1):
            rest = rest_x - y * y
            z = math.isqrt(rest)
            if z * z == rest:
                count += 1 if z == 0 else 2
    return count


def _square_weights(size: int) -> tuple[np.ndarray, np.ndarray]:
    roots = np.arange(math.isqrt(size - 1) + 1)
    weights = np.where(roots == 0, 1, 2).astype(np.int64)
    return roots * roots, weights


@lru_cache(maxsize=8)
def _r3_table(size: int) -> np.ndarray:
    # r3 = r1 * r1 * r1 (convolution), r1 being 1 at 0 and 2 at every positive square
    squares, weights = _square_weights(size)
    r1 = np.zeros(size, dtype=np.int64)
    r1[squares] = weights
    r2 = np.zeros(size, dtype=np.int64)
    for sq, w in zip(squares, weights):
        r2[sq:] += w * r1[: size - sq]
    r3 = np.zeros(size, dtype=np.int64)
    for sq, w in zip(squares, weights):
        r3[sq:] += w * r2[: size - sq]
    r3.flags.writeable = False
    return r3


def shell_table(max_s: int) -> np.ndarray:
    """r3(s) for s = 0..max_s as a read-only int64 array (r3(0) = 1 is the zero mode)."""
    if max_s < 0:
        raise ConfigError(f"max_s must be >= 0, got {max_s}")
    size = _MIN_TABLE
    while size < max_s + 1:
        size *= 2
    return _r3_table(size)[: max_s + 1]


def lattice_shells(max_n2: int) -> np.ndarray:
    """n² of every nonzero lattice vector with n² <= max_n2, one entry per vector."""
    r = math.isqrt(max_n2)
    axis = np.arange(-r, r + 1)
    nx, ny, nz = np.meshgrid(axis, axis, axis, indexing="ij")
    n2 = (nx * nx + ny * ny + nz * nz).ravel()
    return np.sort(n2[(n2 >= 1) & (n2 <= max_n2)])
