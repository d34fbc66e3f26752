import json
from pathlib import Path
from typing import Callable, List, Optional

import typer

from src.common.config import RunConfig, Sweep, decide_workers
from src.common.console import console, setup_logging
from src.common.errors import PhysicsError, UsageError
from src.experiment.commands import ORACLE_OPS, compare_oracle_run, nl_threshold_run, reconcile_run, scan_run, validate_run
from src.experiment.scan import ScanGrid
from src.potential.commands import potential_run
from src.potential.modes import ModeIndex
from src.spectrum.commands import spectrum_run
from src.spectrum.couplings import GravityTheory
from src.thermo.commands import heatcap_run
from src.units.params import GasParameters
from src.units.species import resolve_species, species_registry

cli = typer.Typer(add_completion=False, no_args_is_help=True)


@cli.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr"),
):
    """Heat capacity and excitation spectrum of a self-gravitating Bose gas in a box."""
    setup_logging(verbose)


def _guarded(ctx: typer.Context, action: Callable[[], None]) -> None:
    """Exit 1 with a JSON error object for physics failures, 2 for bad input."""
    try:
        action()
    except PhysicsError as exc:
        typer.echo(json.dumps(exc.to_dict(), sort_keys=True), err=True)
        raise typer.Exit(code=1)
    except UsageError as exc:
        console.print(f"[red]error:[/red] {exc}")
        typer.echo(json.dumps(exc.to_dict(), sort_keys=True), err=True)
        typer.echo(ctx.get_help(), err=True)
        raise typer.Exit(code=2)


def _load_config(
    config: Optional[Path],
    species: Optional[str] = None,
    atom_count: Optional[float] = None,
    box_length_m: Optional[float] = None,
    temperature_K: Optional[float] = None,
    temperature_sweep: Optional[str] = None,
    theory: Optional[str] = None,
    g_em: Optional[float] = None,
    rel_tol: Optional[float] = None,
    fmt: Optional[str] = None,
    out: Optional[Path] = None,
) -> RunConfig:
    """Flag > config file > default."""
    base = RunConfig.load(config) if config is not None else RunConfig()
    return base.merged(
        species=species,
        atom_count=atom_count,
        box_length_m=box_length_m,
        temperature_K=temperature_K,
        temperature_sweep_K=Sweep.parse(temperature_sweep, "--T-sweep") if temperature_sweep else None,
        theory=theory,
        g_em_override_J_m3=g_em,
        rel_tol=rel_tol,
        output_format=fmt,
        output_path=str(out) if out is not None else None,
    )


def _params(cfg: RunConfig, species_file: Optional[Path]) -> GasParameters:
    species = resolve_species(cfg.species, species_registry(species_file))
    return GasParameters(species, cfg.atom_count, cfg.box_length_m, cfg.g_em_override_J_m3)


def _out(cfg: RunConfig) -> Optional[Path]:
    return Path(cfg.output_path) if cfg.output_path else None


_CONFIG = typer.Option(None, "--config", "-c", help="JSON run config (flags override it)")
_SPECIES = typer.Option(None, "--species", "-s", help="Species name, e.g. Yb-174")
_SPECIES_FILE = typer.Option(None, "--species-file", help="Extra species registry (JSON)")
_N = typer.Option(None, "--N", help="Atom count")
_L = typer.Option(None, "--L-m", help="Box side (m)")
_T = typer.Option(None, "--T-K", help="Temperature (K)")
_T_SWEEP = typer.Option(None, "--T-sweep", help="Geometric temperature sweep start:stop:points (K)")
_THEORY = typer.Option(None, "--theory", help="quantum | classical | both")
_G_EM = typer.Option(None, "--g-em-J-m3", help="Override the contact coupling (J m^3)")
_REL_TOL = typer.Option(None, "--rel-tol", help="Relative tolerance")
_FORMAT = typer.Option(None, "--format", "-f", help="csv | json")
_OUT = typer.Option(None, "--out", "-o", help="Output file (default: stdout)")
_THREADS = typer.Option(None, "--threads", "-j", help="Worker threads (env: BECG_MAX_WORKERS)")


@cli.command("potential")
def potential(
    ctx: typer.Context,
    max_n2: int = typer.Option(27, "--max-n2", help="Largest n² tabulated"),
    fixture: Optional[Path] = typer.Option(None, "--fixture", help="Also write the oracle fixture JSON here"),
    config: Optional[Path] = _CONFIG,
    species: Optional[str] = _SPECIES,
    species_file: Optional[Path] = _SPECIES_FILE,
    box_length_m: Optional[float] = _L,
    rel_tol: Optional[float] = typer.Option(None, "--rel-tol", help="1D quadrature tolerance (default 1e-9)"),
    fmt: Optional[str] = _FORMAT,
    out: Optional[Path] = _OUT,
    threads: Optional[int] = _THREADS,
):
    """Cube-potential mode coefficients: approximation vs 1D oracle."""

    def action():
        cfg = _load_config(config, species=species, box_length_m=box_length_m, rel_tol=rel_tol, fmt=fmt, out=out)
        params = _params(cfg, species_file)
        potential_run(
            params.species,
            params.box_length,
            max_n2,
            cfg.rel_tol,
            cfg.output_format,
            _out(cfg),
            cfg.to_dict(),
            fixture=fixture,
            workers=decide_workers(threads),
        )

    _guarded(ctx, action)


@cli.command("spectrum")
def spectrum(
    ctx: typer.Context,
    max_n2: int = typer.Option(20, "--max-n2", help="Largest shell n²"),
    config: Optional[Path] = _CONFIG,
    species: Optional[str] = _SPECIES,
    species_file: Optional[Path] = _SPECIES_FILE,
    atom_count: Optional[float] = _N,
    box_length_m: Optional[float] = _L,
    g_em: Optional[float] = _G_EM,
    fmt: Optional[str] = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Quasiparticle energies of both theories per shell."""

    def action():
        cfg = _load_config(
            config, species=species, atom_count=atom_count, box_length_m=box_length_m, g_em=g_em, fmt=fmt, out=out
        )
        spectrum_run(_params(cfg, species_file), max_n2, cfg.output_format, _out(cfg), cfg.to_dict())

    _guarded(ctx, action)


@cli.command("heatcap")
def heatcap(
    ctx: typer.Context,
    config: Optional[Path] = _CONFIG,
    species: Optional[str] = _SPECIES,
    species_file: Optional[Path] = _SPECIES_FILE,
    atom_count: Optional[float] = _N,
    box_length_m: Optional[float] = _L,
    temperature_K: Optional[float] = _T,
    temperature_sweep: Optional[str] = _T_SWEEP,
    theory: Optional[str] = _THEORY,
    g_em: Optional[float] = _G_EM,
    rel_tol: Optional[float] = _REL_TOL,
    fmt: Optional[str] = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Heat capacity c_V / k_B for one temperature or a sweep."""

    def action():
        cfg = _load_config(
            config,
            species=species,
            atom_count=atom_count,
            box_length_m=box_length_m,
            temperature_K=temperature_K,
            temperature_sweep=temperature_sweep,
            theory=theory,
            g_em=g_em,
            rel_tol=rel_tol,
            fmt=fmt,
            out=out,
        )
        heatcap_run(
            _params(cfg, species_file),
            GravityTheory.select(cfg.theory),
            cfg.temperatures(),
            cfg.rel_tol,
            cfg.output_format,
            _out(cfg),
            cfg.to_dict(),
        )

    _guarded(ctx, action)


@cli.command("scan")
def scan(
    ctx: typer.Context,
    config: Optional[Path] = _CONFIG,
    species: Optional[str] = _SPECIES,
    species_file: Optional[Path] = _SPECIES_FILE,
    atom_counts: Optional[List[float]] = typer.Option(None, "--N", help="Atom count (repeatable)"),
    box_lengths: Optional[List[float]] = typer.Option(None, "--L-m", help="Box side in m (repeatable)"),
    temperatures: Optional[List[float]] = typer.Option(None, "--T-K", help="Temperature in K (repeatable)"),
    n_sweep: Optional[str] = typer.Option(None, "--N-sweep", help="start:stop:points"),
    l_sweep: Optional[str] = typer.Option(None, "--L-sweep", help="start:stop:points (m)"),
    t_sweep: Optional[str] = _T_SWEEP,
    g_em: Optional[float] = _G_EM,
    rel_tol: Optional[float] = _REL_TOL,
    fmt: Optional[str] = _FORMAT,
    out: Optional[Path] = _OUT,
    threads: Optional[int] = _THREADS,
):
    """Grid scan over (N, L, T) of both deviations, with validity flags per row."""

    def action():
        cfg = _load_config(config, species=species, g_em=g_em, rel_tol=rel_tol, fmt=fmt, out=out)
        cfg = cfg.merged(
            temperature_sweep_K=Sweep.parse(t_sweep, "--T-sweep") if t_sweep else None,
            atom_count_sweep=Sweep.parse(n_sweep, "--N-sweep") if n_sweep else None,
            box_length_sweep_m=Sweep.parse(l_sweep, "--L-sweep") if l_sweep else None,
        )
        grid = ScanGrid(
            atom_counts=tuple(atom_counts or cfg.atom_counts()),
            box_lengths=tuple(box_lengths or cfg.box_lengths()),
            temperatures=tuple(temperatures or cfg.temperatures()),
        )
        species_obj = resolve_species(cfg.species, species_registry(species_file))
        scan_run(
            species_obj,
            grid,
            cfg.rel_tol,
            cfg.g_em_override_J_m3,
            decide_workers(threads),
            cfg.output_format,
            _out(cfg),
            cfg.to_dict(),
        )

    _guarded(ctx, action)


@cli.command("validate")
def validate(
    ctx: typer.Context,
    config: Optional[Path] = _CONFIG,
    species: Optional[str] = _SPECIES,
    species_file: Optional[Path] = _SPECIES_FILE,
    atom_count: Optional[float] = _N,
    box_length_m: Optional[float] = _L,
    fmt: Optional[str] = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Diluteness, relativistic size, three-body lifetime and velocity checks."""

    def action():
        cfg = _load_config(config, species=species, atom_count=atom_count, box_length_m=box_length_m, fmt=fmt, out=out)
        validate_run(_params(cfg, species_file), cfg.output_format, _out(cfg), cfg.to_dict())

    _guarded(ctx, action)


@cli.command("nl-threshold")
def nl_threshold(
    ctx: typer.Context,
    n_k2: int = typer.Option(1, "--n-k2", help="Shell n² of the mode"),
    deviation_percent: float = typer.Option(0.1, "--deviation-percent", help="Target energy shift (%)"),
    config: Optional[Path] = _CONFIG,
    species: Optional[str] = _SPECIES,
    species_file: Optional[Path] = _SPECIES_FILE,
    fmt: Optional[str] = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """N L product needed for a given quantum-vs-classical energy shift."""

    def action():
        cfg = _load_config(config, species=species, fmt=fmt, out=out)
        species_obj = resolve_species(cfg.species, species_registry(species_file))
        nl_threshold_run(species_obj, n_k2, deviation_percent, cfg.output_format, _out(cfg), cfg.to_dict())

    _guarded(ctx, action)


@cli.command("reconcile-cv")
def reconcile_cv(
    ctx: typer.Context,
    target: float = typer.Option(3.164, "--target", help="Classical c_V / k_B to reproduce"),
    config: Optional[Path] = _CONFIG,
    species: Optional[str] = _SPECIES,
    species_file: Optional[Path] = _SPECIES_FILE,
    atom_count: Optional[float] = _N,
    box_length_m: Optional[float] = _L,
    temperature_K: Optional[float] = _T,
    rel_tol: Optional[float] = _REL_TOL,
    fmt: Optional[str] = _FORMAT,
    out: Optional[Path] = _OUT,
):
    """Fit the contact coupling that yields a target classical heat capacity."""

    def action():
        cfg = _load_config(
            config,
            species=species,
            atom_count=atom_count,
            box_length_m=box_length_m,
            temperature_K=temperature_K,
            rel_tol=rel_tol,
            fmt=fmt,
            out=out,
        )
        temperatures = cfg.temperatures()
        reconcile_run(
            _params(cfg, species_file),
            temperatures[0],
            target,
            cfg.rel_tol,
            cfg.output_format,
            _out(cfg),
            cfg.to_dict(),
        )

    _guarded(ctx, action)


@cli.command("compare-oracle")
def compare_oracle(
    ctx: typer.Context,
    op: str = typer.Option(..., "--op", help=" | ".join(ORACLE_OPS)),
    max_n2: int = typer.Option(100, "--max-n2", help="Lattice cutoff for --op heatcap"),
    mode: str = typer.Option("1,0,0", "--mode", help="Mode n_x,n_y,n_z for --op potential"),
    grid: int = typer.Option(128, "--grid", help="3D midpoint grid for --op potential (even)"),
    x: float = typer.Option(0.5, "--x", help="Re z for --op erf"),
    y: float = typer.Option(0.9424777960769379, "--y", help="Im z for --op erf"),
    config: Optional[Path] = _CONFIG,
    species: Optional[str] = _SPECIES,
    species_file: Optional[Path] = _SPECIES_FILE,
    atom_count: Optional[float] = _N,
    box_length_m: Optional[float] = _L,
    temperature_K: Optional[float] = _T,
    theory: Optional[str] = _THEORY,
    g_em: Optional[float] = _G_EM,
    rel_tol: Optional[float] = _REL_TOL,
    fmt: Optional[str] = _FORMAT,
    out: Optional[Path] = _OUT,
    threads: Optional[int] = _THREADS,
):
    """Check a fast path against its brute-force oracle."""

    def action():
        cfg = _load_config(
            config,
            species=species,
            atom_count=atom_count,
            box_length_m=box_length_m,
            temperature_K=temperature_K,
            theory=theory,
            g_em=g_em,
            rel_tol=rel_tol,
            fmt=fmt,
            out=out,
        )
        compare_oracle_run(
            op,
            _params(cfg, species_file),
            GravityTheory.select(cfg.theory),
            cfg.temperatures(),
            max_n2,
            ModeIndex.parse(mode),
            grid,
            cfg.rel_tol,
            x,
            y,
            cfg.output_format,
            _out(cfg),
            cfg.to_dict(),
            workers=decide_workers(threads),
        )

    _guarded(ctx, action)


if __name__ == '__main__':
    cli()
