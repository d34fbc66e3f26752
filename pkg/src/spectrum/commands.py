# src/spectrum/commands.py
from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Optional

from src.common.console import console
from src.common.errors import DynamicalInstabilityError
from src.common.output import provenance, write_table
from src.thermo.shells import shell_table
from src.units.params import GasParameters, energy_scale

from .couplings import GravityTheory, build_couplings, chemical_potential
from .dispersion import shell_energies, wavenumbers
from .ngb import classify_ngb


def _shell_energy(couplings, theory: GravityTheory, n2: int) -> Optional[float]:
    try:
        return float(shell_energies(couplings, theory, n2)[0])
    except DynamicalInstabilityError:
        return None


def spectrum_rows(params: GasParameters, max_n2: int) -> List[Dict[str, Any]]:
    """Both dispersion relations on every occupied shell up to max_n2; unstable shells are flagged."""
    couplings = build_couplings(params)
    table = shell_table(max_n2)
    rows = []
    for n2 in range(1, max_n2 + 1):
        if table[n2] == 0:
            continue
        eps_cg = _shell_energy(couplings, GravityTheory.CLASSICAL, n2)
        eps_qg = _shell_energy(couplings, GravityTheory.QUANTUM, n2)
        deviation = None
        if eps_cg is not None and eps_qg is not None and eps_cg > 0:
            deviation = 100.0 * abs(eps_qg - eps_cg) / eps_cg
        rows.append(
            {
                "n2": n2,
                "k_per_m": float(wavenumbers(couplings, n2)[0]),
                "epsilon_cg_J": eps_cg,
                "epsilon_qg_J": eps_qg,
                "rel_deviation_percent": deviation,
                "stable_cg": eps_cg is not None,
                "stable_qg": eps_qg is not None,
            }
        )
    return rows


def spectrum_meta(params: GasParameters) -> Dict[str, Any]:
    couplings = build_couplings(params)
    meta: Dict[str, Any] = {
        "couplings": couplings.as_dict(),
        "energy_scale_J": energy_scale(params),
    }
    for theory in GravityTheory.select("both"):
        meta[f"mu_{theory.value}_J"] = chemical_potential(couplings, theory).mu
        try:
            ngb = classify_ngb(params, theory, couplings=couplings)
            meta[f"ngb_{theory.value}"] = {"type": ngb.kind.value, "slope": ngb.slope}
        except DynamicalInstabilityError as exc:
            meta[f"ngb_{theory.value}"] = exc.to_dict()
    return meta


def spectrum_run(
    params: GasParameters,
    max_n2: int,
    fmt: str,
    out: Optional[Path],
    config_echo: Dict[str, Any],
) -> None:
    rows = spectrum_rows(params, max_n2)
    unstable = sum(1 for r in rows if not (r["stable_cg"] and r["stable_qg"]))
    if unstable:
        console.print(f"[yellow]{unstable} shell(s) dynamically unstable[/yellow]")
    meta = provenance(
        "spectrum",
        config_echo,
        constants=build_couplings(params).constants,
        species=params.species,
        extra=spectrum_meta(params),
    )
    write_table(rows, meta, fmt, out)
