# src/common/config.py
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from multiprocessing import cpu_count
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .errors import ConfigError
from .utils import geometric_range, parse_float

WORKERS_ENV = "BECG_MAX_WORKERS"
THEORY_CHOICES = ("quantum", "classical", "both")
FORMAT_CHOICES = ("csv", "json")
SWEEP_KEYS = ("temperature_sweep_K", "atom_count_sweep", "box_length_sweep_m")


def decide_workers(threads: Optional[int] = None) -> int:
    """Worker threads: explicit flag, else $BECG_MAX_WORKERS, else half the CPUs (at most 4)."""
    if threads is not None:
        if threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {threads}")
        return threads
    env_workers = os.getenv(WORKERS_ENV)
    if env_workers and env_workers.isdigit():
        return max(1, int(env_workers))
    cpu = max(1, cpu_count())
    return min(4, max(1, cpu // 2))


@dataclass(frozen=True)
class Sweep:
    """Geometric range, both ends included."""

    start: float
    stop: float
    points: int

    def values(self) -> List[float]:
        return geometric_range(self.start, self.stop, self.points)

    @classmethod
    def parse(cls, text: str, name: str = "sweep") -> "Sweep":
        """'start:stop:points', e.g. '1e14:1e16:3'."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{name}: expected start:stop:points, got {text!r}")
        try:
            points = int(parts[2])
        except ValueError:
            raise ConfigError(f"{name}: point count {parts[2]!r} is not an integer") from None
        return cls(parse_float(parts[0], name), parse_float(parts[1], name), points)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], name: str = "sweep") -> "Sweep":
        try:
            return cls(
                start=parse_float(data["start"], f"{name}.start"),
                stop=parse_float(data["stop"], f"{name}.stop"),
                points=int(data["points"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{name} needs start, stop, points: {exc}") from exc


@dataclass(frozen=True)
class RunConfig:
    """One run of the engine. Every numeric key names its unit.

    ``species`` is a registry name or an inline record
    {"name", "mass_u", "a_s_nm", "three_body_rate_m6_per_s"}.
    The sweep keys only matter to commands that iterate (heatcap over T, scan over N, L, T).
    """

    species: Union[str, Dict[str, Any]] = "Yb-174"
    atom_count: float = 1e16
    box_length_m: float = 0.01
    temperature_K: Optional[float] = 1e-14
    temperature_sweep_K: Optional[Sweep] = None
    atom_count_sweep: Optional[Sweep] = None
    box_length_sweep_m: Optional[Sweep] = None
    theory: str = "both"
    g_em_override_J_m3: Optional[float] = None
    rel_tol: float = 1e-9
    output_format: str = "csv"
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.theory not in THEORY_CHOICES:
            raise ConfigError(f"theory must be one of {THEORY_CHOICES}, got {self.theory!r}")
        if self.output_format not in FORMAT_CHOICES:
            raise ConfigError(f"output_format must be one of {FORMAT_CHOICES}, got {self.output_format!r}")
        if not self.rel_tol > 0:
            raise ConfigError(f"rel_tol must be positive, got {self.rel_tol}")

    def temperatures(self) -> List[float]:
        if self.temperature_sweep_K is not None:
            return self.temperature_sweep_K.values()
        if self.temperature_K is None:
            raise ConfigError("either temperature_K or temperature_sweep_K is required")
        return [self.temperature_K]

    def atom_counts(self) -> List[float]:
        if self.atom_count_sweep is not None:
            return self.atom_count_sweep.values()
        return [self.atom_count]

    def box_lengths(self) -> List[float]:
        if self.box_length_sweep_m is not None:
            return self.box_length_sweep_m.values()
        return [self.box_length_m]

    def merged(self, **overrides) -> "RunConfig":
        """Apply CLI flags on top of this config; None means 'not given'.

        A single value given on the command line replaces a sweep from the file.
        """
        changes = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for single, sweep in (
            ("temperature_K", "temperature_sweep_K"),
            ("atom_count", "atom_count_sweep"),
            ("box_length_m", "box_length_sweep_m"),
        ):
            if single in changes and sweep not in changes:
                changes[sweep] = None
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if isinstance(self.species, dict):
            data["species"] = dict(self.species)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("a run config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values: Dict[str, Any] = dict(data)
        for key in ("atom_count", "box_length_m", "rel_tol"):
            if key in values:
                values[key] = parse_float(values[key], key)
        for key in ("temperature_K", "g_em_override_J_m3"):
            if values.get(key) is not None:
                values[key] = parse_float(values[key], key)
        for key in SWEEP_KEYS:
            sweep = values.get(key)
            if sweep is not None and not isinstance(sweep, Sweep):
                values[key] = Sweep.from_dict(sweep, key)
        return cls(**values)

    @classmethod
    def load(cls, path: Path) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)

    def dump(self, path: Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
