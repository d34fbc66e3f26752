# src/spectrum/ngb.py
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from src.units.params import GasParameters

from .couplings import CouplingSet, GravityTheory, resolve_couplings
from .dispersion import shell_energies, wavenumbers

FIT_SHELLS = (1, 2, 3, 4)
LINEAR_WINDOW = (0.9, 1.1)
QUADRATIC_WINDOW = (1.9, 2.1)


class NgbType(str, Enum):
    TYPE_A = "TypeA"
    TYPE_B = "TypeB"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class NgbClassification:
    kind: NgbType
    slope: float


def classify_ngb(
    params: GasParameters,
    theory: GravityTheory,
    couplings: Optional[CouplingSet] = None,
) -> NgbClassification:
    """Fit log eps against log k over the lowest shells: slope ~1 is a phonon, ~2 a quadratic mode."""
    couplings = resolve_couplings(params, couplings)
    shells = np.array(FIT_SHELLS, dtype=float)
    eps = shell_energies(couplings, theory, shells)
    slope = float(np.polyfit(np.log(wavenumbers(couplings, shells)), np.log(eps), 1)[0])

    if LINEAR_WINDOW[0] <= slope <= LINEAR_WINDOW[1]:
        kind = NgbType.TYPE_A
    elif QUADRATIC_WINDOW[0] <= slope <= QUADRATIC_WINDOW[1]:
        kind = NgbType.TYPE_B
    else:
        kind = NgbType.INDETERMINATE
    return NgbClassification(kind=kind, slope=slope)
