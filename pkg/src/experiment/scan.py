# src/experiment/scan.py
"""Grid scans over (N, L, T) comparing the two gravity theories."""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from src.common.errors import BecgError
from src.potential.modes import ModeIndex
from src.spectrum.couplings import build_couplings
from src.thermo.heat_capacity import DEFAULT_REL_TOL
from src.units.params import GasParameters
from src.units.species import Species

from .deviation import energy_deviation, heatcap_deviation
from .validity import validity_report

log = logging.getLogger(__name__)

DEVIATION_MODE = ModeIndex(1, 0, 0)
# error code of a row whose failure did not come from the engine
UNEXPECTED_ERROR = "Unexpected"


@dataclass(frozen=True)
class ScanGrid:
    atom_counts: Tuple[float, ...]
    box_lengths: Tuple[float, ...]
    temperatures: Tuple[float, ...]

    def points(self) -> List[Tuple[float, float, float]]:
        """Lexicographic (N, L, T) order."""
        return list(itertools.product(self.atom_counts, self.box_lengths, self.temperatures))

    def __len__(self) -> int:
        return len(self.atom_counts) * len(self.box_lengths) * len(self.temperatures)


@dataclass(frozen=True)
class ScanRow:
    atom_count: float
    box_length: float
    temperature: float
    cv_classical: Optional[float] = None
    cv_quantum: Optional[float] = None
    cv_deviation_percent: Optional[float] = None
    eps_classical: Optional[float] = None
    eps_quantum: Optional[float] = None
    eps_deviation_percent: Optional[float] = None
    validity: Dict[str, bool] = field(default_factory=dict)
    error: Optional[str] = None
    error_detail: Optional[Dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def as_row(self) -> Dict[str, Any]:
        return {
            "N": self.atom_count,
            "L_m": self.box_length,
            "T_K": self.temperature,
            "cv_classical_over_kB": self.cv_classical,
            "cv_quantum_over_kB": self.cv_quantum,
            "cv_rel_deviation_percent": self.cv_deviation_percent,
            "eps_classical_J": self.eps_classical,
            "eps_quantum_J": self.eps_quantum,
            "eps_rel_deviation_percent": self.eps_deviation_percent,
            **self.validity,
            "error": self.error,
        }


def scan_point(
    species: Species,
    atom_count: float,
    box_length: float,
    temperature: float,
    rel_tol: float = DEFAULT_REL_TOL,
    g_em_override: Optional[float] = None,
) -> ScanRow:
    """One grid point. Errors are stored in the row instead of raised."""
    validity: Dict[str, bool] = {}
    try:
        params = GasParameters(species, atom_count, box_length, g_em_override)
        validity = validity_report(params).flag_dict()
        couplings = build_couplings(params)
        energy = energy_deviation(params, DEVIATION_MODE, couplings=couplings)
        heat = heatcap_deviation(params, temperature, rel_tol, couplings=couplings)
    except BecgError as exc:
        log.debug("scan point N=%g L=%g T=%g failed: %s", atom_count, box_length, temperature, exc)
        return ScanRow(
            atom_count,
            box_length,
            temperature,
            validity=validity,
            error=exc.code,
            error_detail=exc.to_dict(),
        )
    except Exception as exc:
        log.warning(
            "scan point N=%g L=%g T=%g raised %s: %s",
            atom_count,
            box_length,
            temperature,
            type(exc).__name__,
            exc,
        )
        return ScanRow(
            atom_count,
            box_length,
            temperature,
            validity=validity,
            error=UNEXPECTED_ERROR,
            error_detail={"error": UNEXPECTED_ERROR, "type": type(exc).__name__, "message": str(exc)},
        )
    return ScanRow(
        atom_count=atom_count,
        box_length=box_length,
        temperature=temperature,
        cv_classical=heat.classical,
        cv_quantum=heat.quantum,
        cv_deviation_percent=heat.rel_deviation_percent,
        eps_classical=energy.classical,
        eps_quantum=energy.quantum,
        eps_deviation_percent=energy.rel_deviation_percent,
        validity=validity,
    )


def scan(
    species: Species,
    grid: ScanGrid,
    rel_tol: float = DEFAULT_REL_TOL,
    g_em_override: Optional[float] = None,
    workers: int = 1,
    on_row_complete: Optional[Callable[[ScanRow], None]] = None,
) -> List[ScanRow]:
    """Evaluate every grid point; rows come back in grid order whatever the worker count."""

    def run(point: Sequence[float]) -> ScanRow:
        row = scan_point(species, *point, rel_tol=rel_tol, g_em_override=g_em_override)
        if on_row_complete is not None:
            on_row_complete(row)
        return row

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(run, grid.points()))
