# src/experiment/reconcile.py
"""Inverse problem: which contact coupling gives a requested classical heat capacity?"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Final

from scipy.optimize import bisect

from src.common.errors import ConfigError, NoBracketError
from src.spectrum.couplings import GravityTheory, build_couplings
from src.spectrum.dispersion import kinetic_energies
from src.thermo.heat_capacity import DEFAULT_REL_TOL, heat_capacity
from src.units.params import GasParameters

from .deviation import HeatCapacityDeviation, heatcap_deviation

log = logging.getLogger(__name__)

LOG_XTOL: Final[float] = 1e-6
MAX_DECADES: Final[int] = 60


@dataclass(frozen=True)
class Reconciliation:
    g_em: float
    cv_target_over_kB: float
    cv_classical_over_kB: float
    free_gas_cv_over_kB: float
    deviation: HeatCapacityDeviation

    def as_row(self) -> dict:
        return {
            "cv_target_over_kB": self.cv_target_over_kB,
            "g_em_fit_J_m3": self.g_em,
            "cv_classical_over_kB": self.cv_classical_over_kB,
            "cv_quantum_over_kB": self.deviation.quantum,
            "free_gas_cv_over_kB": self.free_gas_cv_over_kB,
            "rel_deviation_percent": self.deviation.rel_deviation_percent,
        }


def _classical_cv(params: GasParameters, g_em: float, temperature: float, rel_tol: float) -> float:
    trial = params.replace(g_em_override=g_em)
    return heat_capacity(trial, GravityTheory.CLASSICAL, temperature, rel_tol).c_v_over_kB


def reconcile_cv_target(
    params: GasParameters,
    temperature: float,
    cv_target_over_kB: float,
    rel_tol: float = DEFAULT_REL_TOL,
) -> Reconciliation:
    """Fit g_em (bisection on ln g_em) so that the classical c_V / k_B equals the target.

    params.g_em_override is ignored. The classical c_V falls monotonically as g_em
    grows, from the free-gas value at g_em = 0 towards zero.
    """
    if not cv_target_over_kB > 0:
        raise ConfigError(f"target c_V/k_B must be positive, got {cv_target_over_kB}")

    free = _classical_cv(params, 0.0, temperature, rel_tol)
    if cv_target_over_kB >= free:
        raise NoBracketError(
            f"target c_V/k_B={cv_target_over_kB:g} is not below the free-gas value {free:.6g}"
        )

    def excess(log_g: float) -> float:
        return _classical_cv(params, math.exp(log_g), temperature, rel_tol) - cv_target_over_kB

    # start where n g_em is far below the lowest kinetic energy
    couplings = build_couplings(params.replace(g_em_override=0.0))
    e1 = float(kinetic_energies(couplings, 1)[0])
    log_lo = math.log(1e-6 * e1 / couplings.density)
    for _ in range(MAX_DECADES):
        if excess(log_lo) > 0:
            break
        log_lo -= math.log(10.0)
    else:
        raise NoBracketError("no lower bracket for the contact coupling")

    log_hi = log_lo
    for _ in range(MAX_DECADES):
        log_hi += math.log(10.0)
        if excess(log_hi) < 0:
            break
    else:
        raise NoBracketError(
            f"c_V/k_B never drops below {cv_target_over_kB:g} within {MAX_DECADES} decades of g_em"
        )

    log.debug("reconcile bracket ln g in [%.4f, %.4f]", log_lo, log_hi)
    log_g = bisect(excess, log_lo, log_hi, xtol=LOG_XTOL)
    g_em = math.exp(log_g)
    fitted = params.replace(g_em_override=g_em)
    deviation = heatcap_deviation(fitted, temperature, rel_tol)
    return Reconciliation(
        g_em=g_em,
        cv_target_over_kB=cv_target_over_kB,
        cv_classical_over_kB=deviation.classical,
        free_gas_cv_over_kB=free,
        deviation=deviation,
    )
