# src/experiment/commands.py
from __future__ import annotations

import math
import threading
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.common.console import console, make_progress
from src.common.errors import ConfigError
from src.common.output import provenance, write_table
from src.potential.coefficients import gk_approx, v0_closed_form
from src.potential.modes import ZERO_MODE, ModeIndex
from src.potential.oracles import gk_oracle_1d, gk_oracle_3d
from src.potential.specfun import erf_contour_oracle, re_erf_complex
from src.spectrum.couplings import GravityTheory, build_couplings
from src.thermo.heat_capacity import heat_capacity_lattice, heat_capacity_to_shell
from src.units.constants import CODATA2018
from src.units.params import GasParameters
from src.units.species import Species

from .reconcile import reconcile_cv_target
from .scan import ScanGrid, ScanRow, scan
from .threshold import threshold_report
from .validity import validity_report

ORACLE_OPS = ("heatcap", "potential", "erf")


def scan_run(
    species: Species,
    grid: ScanGrid,
    rel_tol: float,
    g_em_override: Optional[float],
    workers: int,
    fmt: str,
    out: Optional[Path],
    config_echo: Dict[str, Any],
) -> List[ScanRow]:
    """Evaluate the (N, L, T) grid with a progress bar; failed points stay in the table."""
    console.print(f"[cyan]Scan:[/cyan] {len(grid)} points, workers={workers}")
    failed: List[str] = []
    lock = threading.Lock()
    progress = make_progress("Scanning", "points")

    with progress:
        task_id = progress.add_task("scan", total=len(grid))

        def on_row_complete(row: ScanRow) -> None:
            with lock:
                progress.update(task_id, advance=1)
                if not row.ok:
                    failed.append(f"N={row.atom_count:g} L={row.box_length:g} T={row.temperature:g}: {row.error}")

        rows = scan(species, grid, rel_tol, g_em_override, workers, on_row_complete)

    for line in failed:
        console.print(f"[red]✗[/red] {line}")
    meta = provenance(
        "scan",
        config_echo,
        constants=CODATA2018,
        species=species,
        extra={
            "grid": {
                "N": list(grid.atom_counts),
                "L_m": list(grid.box_lengths),
                "T_K": list(grid.temperatures),
            },
            "rel_tol": rel_tol,
        },
    )
    write_table([r.as_row() for r in rows], meta, fmt, out)
    return rows


def validate_run(params: GasParameters, fmt: str, out: Optional[Path], config_echo: Dict[str, Any]) -> None:
    report = validity_report(params)
    for check in report.flags:
        mark = "[green]✓[/green]" if check.passed else "[red]✗[/red]"
        console.print(f"{mark} {check.name}: {check.value:.4g} (limit {check.limit:.4g})")
    meta = provenance("validate", config_echo, constants=CODATA2018, species=params.species)
    write_table([report.as_row()], meta, fmt, out)


def nl_threshold_run(
    species: Species,
    n_k2: int,
    deviation_percent: float,
    fmt: str,
    out: Optional[Path],
    config_echo: Dict[str, Any],
) -> None:
    report = threshold_report(species, n_k2, deviation_percent)
    if report.quoted_consistent is False:
        console.print(
            f"[yellow]quoted estimate {report.quoted_estimate:.3g} m disagrees with the formula "
            f"value {report.nl_product:.4g} m (ratio {report.quoted_ratio:.3g})[/yellow]"
        )
    meta = provenance("nl-threshold", config_echo, constants=CODATA2018, species=species)
    write_table([report.as_row()], meta, fmt, out)


def reconcile_run(
    params: GasParameters,
    temperature: float,
    cv_target_over_kB: float,
    rel_tol: float,
    fmt: str,
    out: Optional[Path],
    config_echo: Dict[str, Any],
) -> None:
    with console.status("Fitting g_em"):
        result = reconcile_cv_target(params, temperature, cv_target_over_kB, rel_tol)
    console.print(
        f"[green]✓[/green] g_em = {result.g_em:.6g} J m^3, "
        f"quantum deviation {result.deviation.rel_deviation_percent:.4g}%"
    )
    row = {"T_K": temperature, **result.as_row()}
    meta = provenance("reconcile-cv", config_echo, constants=CODATA2018, species=params.species)
    write_table([row], meta, fmt, out)


def _heatcap_oracle_row(params: GasParameters, theory: GravityTheory, temperature: float, max_n2: int) -> dict:
    couplings = build_couplings(params)
    shells = heat_capacity_to_shell(params, theory, temperature, max_n2, couplings=couplings)
    lattice = heat_capacity_lattice(params, theory, temperature, max_n2, couplings=couplings)
    diff = abs(shells.c_v_over_kB - lattice.c_v_over_kB)
    scale = abs(lattice.c_v_over_kB)
    return {
        "op": "heatcap",
        "theory": theory.value,
        "T_K": temperature,
        "max_n2": max_n2,
        "value": shells.c_v_over_kB,
        "oracle": lattice.c_v_over_kB,
        "rel_diff": diff / scale if scale > 0 else diff,
    }


def compare_oracle_rows(
    op: str,
    params: GasParameters,
    theories: List[GravityTheory],
    temperatures: List[float],
    max_n2: int,
    mode: Optional[ModeIndex],
    grid: int,
    rel_tol: float,
    x: float,
    y: float,
    workers: int = 1,
) -> List[Dict[str, Any]]:
    if op == "heatcap":
        return [
            _heatcap_oracle_row(params, theory, temperature, max_n2)
            for temperature in temperatures
            for theory in theories
        ]
    if op == "potential":
        m, L = params.species.mass, params.box_length
        zero = gk_oracle_3d(ZERO_MODE, m, L, grid=grid, workers=workers)
        closed = v0_closed_form(m, L)
        rows = [
            {
                "op": "potential",
                "mode": "(0,0,0)",
                "value": closed,
                "oracle": zero,
                "rel_diff": abs(closed - zero) / abs(zero),
            }
        ]
        if mode is not None and not mode.is_zero:
            one_d = gk_oracle_1d(mode, m, L, rel_tol=max(rel_tol, 1e-11))
            three_d = gk_oracle_3d(mode, m, L, grid=grid, workers=workers)
            approx = gk_approx(mode, m, L)
            rows.append(
                {
                    "op": "potential",
                    "mode": str(mode),
                    "value": approx,
                    "oracle": one_d,
                    "oracle3d": three_d,
                    "rel_diff": abs(approx - one_d) / abs(one_d),
                    "oracle_rel_diff": abs(three_d - one_d) / abs(one_d),
                }
            )
        return rows
    if op == "erf":
        value = re_erf_complex(x, y)
        oracle = erf_contour_oracle(x, y).real
        diff = abs(value - oracle)
        return [
            {
                "op": "erf",
                "x": x,
                "y": y,
                "value": value,
                "oracle": oracle,
                "rel_diff": diff / abs(oracle) if oracle != 0 else diff,
            }
        ]
    raise ConfigError(f"--op must be one of {ORACLE_OPS}, got {op!r}")


def compare_oracle_run(
    op: str,
    params: GasParameters,
    theories: List[GravityTheory],
    temperatures: List[float],
    max_n2: int,
    mode: Optional[ModeIndex],
    grid: int,
    rel_tol: float,
    x: float,
    y: float,
    fmt: str,
    out: Optional[Path],
    config_echo: Dict[str, Any],
    workers: int = 1,
) -> None:
    rows = compare_oracle_rows(op, params, theories, temperatures, max_n2, mode, grid, rel_tol, x, y, workers)
    worst = max((r["rel_diff"] for r in rows), default=math.nan)
    console.print(f"[cyan]{op}:[/cyan] max relative difference {worst:.3g}")
    meta = provenance(
        "compare-oracle", config_echo, constants=CODATA2018, species=params.species, extra={"max_rel_diff": worst}
    )
    write_table(rows, meta, fmt, out)
