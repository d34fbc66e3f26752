# src/thermo/commands.py
from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.common.console import console
from src.common.output import provenance, write_table
from src.experiment.deviation import percent_deviation
from src.spectrum.couplings import GravityTheory, build_couplings
from src.units.params import GasParameters

from .heat_capacity import heat_capacity


def heatcap_rows(
    params: GasParameters,
    theories: Sequence[GravityTheory],
    temperatures: Sequence[float],
    rel_tol: float,
) -> List[Dict[str, Any]]:
    """One row per (T, theory). Classical comes first so the quantum row can carry the deviation."""
    couplings = build_couplings(params)
    rows: List[Dict[str, Any]] = []
    for temperature in temperatures:
        classical_cv = None
        for theory in theories:
            result = heat_capacity(params, theory, temperature, rel_tol, couplings=couplings)
            row = result.as_row()
            row["rel_deviation_percent"] = None
            if theory is GravityTheory.CLASSICAL:
                classical_cv = result.c_v_over_kB
            elif classical_cv is not None:
                row["rel_deviation_percent"] = percent_deviation(classical_cv, result.c_v_over_kB)
            rows.append(row)
    return rows


def heatcap_run(
    params: GasParameters,
    theories: Sequence[GravityTheory],
    temperatures: Sequence[float],
    rel_tol: float,
    fmt: str,
    out: Optional[Path],
    config_echo: Dict[str, Any],
) -> None:
    couplings = build_couplings(params)
    console.print(
        f"[cyan]Heat capacity:[/cyan] {len(temperatures)} temperature(s) x "
        f"{', '.join(t.value for t in theories)} ({couplings.regime.value})"
    )
    rows = heatcap_rows(params, theories, temperatures, rel_tol)
    meta = provenance(
        "heatcap",
        config_echo,
        constants=couplings.constants,
        species=params.species,
        extra={"couplings": couplings.as_dict(), "rel_tol": rel_tol},
    )
    write_table(rows, meta, fmt, out)
