# src/potential/commands.py
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

from src import __version__
from src.common.console import console, make_progress
from src.common.output import provenance, write_table
from src.units.constants import CODATA2018
from src.units.species import Species

from .coefficients import gk_approx, v0_closed_form, v0_coefficient
from .modes import ZERO_MODE, canonical_modes
from .oracles import gk_oracle_1d, gk_oracle_3d

FIXTURE_GRID = 128


def potential_rows(
    species: Species,
    box_length: float,
    max_n2: int,
    rel_tol: float,
) -> List[Dict[str, Any]]:
    """Approximate vs 1D-oracle coefficient for one mode per symmetry class with n² <= max_n2."""
    modes = list(canonical_modes(max_n2))
    rows: List[Dict[str, Any]] = []
    progress = make_progress("Potential", "modes")
    with progress:
        task_id = progress.add_task("potential", total=len(modes))
        for mode in modes:
            approx = gk_approx(mode, species.mass, box_length)
            oracle = gk_oracle_1d(mode, species.mass, box_length, rel_tol)
            rows.append(
                {
                    "n_x": mode.n_x,
                    "n_y": mode.n_y,
                    "n_z": mode.n_z,
                    "n2": mode.n2,
                    "g_approx": approx,
                    "g_oracle1d": oracle,
                    "rel_err": abs(approx - oracle) / abs(oracle),
                }
            )
            progress.update(task_id, advance=1)
    return rows


def write_fixture(
    path: Path,
    rows: List[Dict[str, Any]],
    species: Species,
    box_length: float,
    rel_tol: float,
    max_n2: int,
    workers: int = 1,
) -> None:
    """Coefficients in units of G m² L², so the file does not depend on species or box size."""
    scale = CODATA2018.G * species.mass**2 * box_length**2
    zero_3d = gk_oracle_3d(ZERO_MODE, species.mass, box_length, grid=FIXTURE_GRID, workers=workers)
    fixture = {
        "generated_by": f"becg potential {__version__}",
        "max_n2": max_n2,
        "rel_tol": rel_tol,
        "zero_mode": {
            "grid": FIXTURE_GRID,
            "closed_form_coefficient": v0_coefficient(),
            "oracle3d_coefficient": -zero_3d / scale,
            "rel_err": abs(zero_3d - v0_closed_form(species.mass, box_length)) / abs(zero_3d),
        },
        "modes": [
            {
                "n": [r["n_x"], r["n_y"], r["n_z"]],
                "n2": r["n2"],
                "approx_coefficient": r["g_approx"] / scale,
                "oracle1d_coefficient": r["g_oracle1d"] / scale,
                "rel_err": r["rel_err"],
            }
            for r in rows
        ],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(fixture, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    console.print(f"[green]✓[/green] Fixture saved to: {path.absolute()}")


def potential_run(
    species: Species,
    box_length: float,
    max_n2: int,
    rel_tol: float,
    fmt: str,
    out: Optional[Path],
    config_echo: Dict[str, Any],
    fixture: Optional[Path] = None,
    workers: int = 1,
) -> None:
    """Tabulate the mode coefficients of the cube potential against the 1D oracle."""
    rows = potential_rows(species, box_length, max_n2, rel_tol)
    worst = max((r["rel_err"] for r in rows), default=math.nan)
    console.print(f"[cyan]Modes:[/cyan] {len(rows)}  [cyan]max rel_err:[/cyan] {worst:.4g}")
    meta = provenance(
        "potential",
        config_echo,
        constants=CODATA2018,
        species=species,
        extra={"g_g0_J_m3": v0_closed_form(species.mass, box_length), "max_n2": max_n2},
    )
    write_table(rows, meta, fmt, out)
    if fixture is not None:
        write_fixture(fixture, rows, species, box_length, rel_tol, max_n2, workers)
