# src/potential/oracles.py
"""Brute-force evaluations of the cube Fourier coefficient, used to check the approximations."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Final

import numpy as np
from scipy.integrate import quad

from src.common.errors import ConfigError, NoConvergenceError, QuadratureError, SingularityHandlingError
from src.units.constants import CODATA2018, PhysicalConstants

from .modes import ModeIndex
from .specfun import scaled_re_erf

log = logging.getLogger(__name__)

# bare Gaussian exp(-pi² v² n²) below this is irrelevant in double precision
GAUSSIAN_FLOOR: Final[float] = 1e-300
DEFAULT_SUBDIVISIONS: Final[int] = 500
MIN_GRID: Final[int] = 16


def _integrand(v: float, components: tuple[int, int, int]) -> float:
    """v * prod_j exp(-pi² v² n_j²) Re erf(1/(2v) + i pi n_j v)."""
    if v == 0.0:
        return 0.0
    x = 0.5 / v
    value = v
    for n in components:
        value *= scaled_re_erf(x, math.pi * n * v)
    return value


def _quad_piece(components, lower, upper, rel_tol, abs_tol, budget) -> tuple[float, float]:
    out = quad(
        _integrand,
        lower,
        upper,
        args=(components,),
        epsabs=abs_tol,
        epsrel=rel_tol,
        limit=budget,
        full_output=1,
    )
    value, error = out[0], out[1]
    if len(out) > 3 and error > max(abs_tol, rel_tol * abs(value)):
        raise NoConvergenceError(
            f"1D cube-potential quadrature on [{lower}, {upper}] for n={components}: {out[3]}"
        )
    return value, error


def gk_oracle_1d(
    mode: ModeIndex,
    mass: float,
    box_length: float,
    rel_tol: float = 1e-8,
    constants: PhysicalConstants = CODATA2018,
    subdivisions: int = DEFAULT_SUBDIVISIONS,
) -> float:
    """-2 pi G m² L² int_0^inf v e^{-pi² v² n²} prod Re erf(1/(2v) + i pi n_j v) dv, without approximation."""
    mode.require_excitation()
    if not 1e-12 < rel_tol < 1e-2:
        raise ConfigError(f"rel_tol must lie in (1e-12, 1e-2), got {rel_tol}")
    components = mode.canonical()
    n2 = mode.n2
    # scale of the integral: the leading Gaussian alone gives 1/(2 pi² n²)
    abs_tol = 1e-3 * rel_tol / (2.0 * math.pi**2 * n2)
    v_cut = math.sqrt(-math.log(GAUSSIAN_FLOOR)) / (math.pi * math.sqrt(n2))

    head, head_err = _quad_piece(components, 0.0, v_cut, rel_tol, abs_tol, subdivisions)
    # algebraic tail: the erf growth cancels the Gaussian beyond v_cut
    tail, tail_err = _quad_piece(components, v_cut, math.inf, rel_tol, abs_tol, subdivisions)
    log.debug(
        "gk_oracle_1d n=%s head=%.12g (±%.2g) tail=%.6g (±%.2g)", components, head, head_err, tail, tail_err
    )
    scale = 2.0 * math.pi * constants.G * mass * mass * box_length * box_length
    return -scale * (head + tail)


def gk_oracle_3d(
    mode: ModeIndex,
    mass: float,
    box_length: float,
    grid: int = 128,
    constants: PhysicalConstants = CODATA2018,
    workers: int = 1,
) -> float:
    """int over [-L/2, L/2]³ of -G m² exp(-i k.r)/|r| d³r by the tensor midpoint rule.

    Midpoint nodes of an even grid never touch the origin, where 1/|r| is singular;
    the zero mode (ZERO_MODE) is allowed. Slabs may run in parallel; each slab is
    reduced on its own and the slab sums are combined in fixed order.
    """
    if grid < MIN_GRID:
        raise ConfigError(f"grid must be >= {MIN_GRID}, got {grid}")
    if grid % 2:
        raise SingularityHandlingError(f"grid={grid} is odd and places a node at the origin")

    h = box_length / grid
    nodes = (np.arange(grid) + 0.5) * h - 0.5 * box_length
    k = 2.0 * math.pi / box_length
    wx = np.exp(-1j * k * mode.n_x * nodes)
    wy = np.exp(-1j * k * mode.n_y * nodes)
    wz = np.exp(-1j * k * mode.n_z * nodes)
    yz2 = nodes[:, None] ** 2 + nodes[None, :] ** 2

    def slab(i: int) -> complex:
        inv_r = 1.0 / np.sqrt(nodes[i] ** 2 + yz2)
        row = (inv_r * wz[None, :]).sum(axis=1)
        return complex(wx[i] * (wy * row).sum())

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = list(pool.map(slab, range(grid)))

    real = math.fsum(p.real for p in parts)
    imag = math.fsum(p.imag for p in parts)
    if abs(imag) > 1e-8 * abs(real):
        raise QuadratureError(f"imaginary part {imag:.3g} does not vanish (real {real:.3g})")
    return -constants.G * mass * mass * real * h**3
