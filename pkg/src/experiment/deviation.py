# src/experiment/deviation.py
"""How far the quantum-gravity prediction sits from the classical one."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from src.potential.modes import ModeIndex
from src.spectrum.couplings import CouplingSet, GravityTheory, resolve_couplings
from src.spectrum.dispersion import dispersion
from src.thermo.heat_capacity import DEFAULT_REL_TOL, ThermoResult, heat_capacity
from src.units.params import GasParameters


def percent_deviation(classical: float, quantum: float) -> float:
    """100 |quantum - classical| / classical; zero when both vanish."""
    diff = abs(quantum - classical)
    if diff == 0.0:
        return 0.0
    if classical == 0.0:
        return float("inf")
    return 100.0 * diff / abs(classical)


@dataclass(frozen=True)
class DeviationReport:
    quantity: str
    classical: float
    quantum: float
    mode: Optional[ModeIndex] = None
    temperature: Optional[float] = None

    @property
    def rel_deviation_percent(self) -> float:
        return percent_deviation(self.classical, self.quantum)


def energy_deviation(
    params: GasParameters,
    mode: ModeIndex,
    couplings: Optional[CouplingSet] = None,
) -> DeviationReport:
    couplings = resolve_couplings(params, couplings)
    classical = dispersion(params, GravityTheory.CLASSICAL, mode, couplings=couplings)
    quantum = dispersion(params, GravityTheory.QUANTUM, mode, couplings=couplings)
    return DeviationReport(
        quantity="epsilon_J", classical=classical.epsilon, quantum=quantum.epsilon, mode=mode
    )


@dataclass(frozen=True)
class HeatCapacityDeviation(DeviationReport):
    classical_result: Optional[ThermoResult] = None
    quantum_result: Optional[ThermoResult] = None


def heatcap_deviation(
    params: GasParameters,
    temperature: float,
    rel_tol: float = DEFAULT_REL_TOL,
    couplings: Optional[CouplingSet] = None,
) -> HeatCapacityDeviation:
    couplings = resolve_couplings(params, couplings)
    classical = heat_capacity(params, GravityTheory.CLASSICAL, temperature, rel_tol, couplings=couplings)
    quantum = heat_capacity(params, GravityTheory.QUANTUM, temperature, rel_tol, couplings=couplings)
    return HeatCapacityDeviation(
        quantity="cv_over_kB",
        classical=classical.c_v_over_kB,
        quantum=quantum.c_v_over_kB,
        temperature=temperature,
        classical_result=classical,
        quantum_result=quantum,
    )
