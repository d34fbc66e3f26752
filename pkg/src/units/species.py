# src/units/species.py
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Mapping, Optional

from src.common.errors import ConfigError, UnknownSpeciesError

from .constants import CODATA2018, PhysicalConstants

log = logging.getLogger(__name__)

SPECIES_FILE_ENV = "BECG_SPECIES_FILE"


@dataclass(frozen=True)
class Species:
    """Atomic species: mass (kg), s-wave scattering length (m), three-body loss rate (m^6/s)."""

    name: str
    mass: float
    scattering_length: float
    three_body_rate: float = 0.0

    def __post_init__(self):
        if not self.mass > 0:
            raise ConfigError(f"species {self.name}: mass must be positive")
        if self.three_body_rate < 0:
            raise ConfigError(f"species {self.name}: three-body rate must be non-negative")

    @classmethod
    def from_record(
        cls, record: Mapping, constants: PhysicalConstants = CODATA2018
    ) -> "Species":
        """Build from a registry record with fields name, mass_u, a_s_nm, three_body_rate_m6_per_s."""
        try:
            return cls(
                name=str(record["name"]),
                mass=float(record["mass_u"]) * constants.u,
                scattering_length=float(record["a_s_nm"]) * 1e-9,
                three_body_rate=float(record.get("three_body_rate_m6_per_s", 0.0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad species record {dict(record)!r}: {exc}") from exc

    def to_record(self, constants: PhysicalConstants = CODATA2018) -> dict:
        return {
            "name": self.name,
            "mass_u": self.mass / constants.u,
            "a_s_nm": self.scattering_length * 1e9,
            "three_body_rate_m6_per_s": self.three_body_rate,
        }


# Built-in registry. Yb-174: a_s = 5.55 nm (about 105 Bohr radii), three-body
# rate of order 1e-41 m^6/s. H-1: a_s = 0.0648 nm; no three-body rate on record.
BUILTIN_RECORDS: tuple[dict, ...] = (
    {"name": "Yb-174", "mass_u": 174.0, "a_s_nm": 5.55, "three_body_rate_m6_per_s": 1e-41},
    {"name": "H-1", "mass_u": 1.008, "a_s_nm": 0.0648, "three_body_rate_m6_per_s": 0.0},
)


def builtin_registry() -> Dict[str, Species]:
    return {r["name"]: Species.from_record(r) for r in BUILTIN_RECORDS}


def load_species_file(path: Path) -> Dict[str, Species]:
    """Read a JSON registry: a list of records, or {"species": [records]}."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read species file {path}: {exc}") from exc
    records = data.get("species") if isinstance(data, dict) else data
    if not isinstance(records, list):
        raise ConfigError(f"species file {path} must hold a list of records")
    loaded = {}
    for record in records:
        species = Species.from_record(record)
        loaded[species.name] = species
    log.debug("loaded %d species from %s", len(loaded), path)
    return loaded


def species_registry(extra_file: Optional[Path] = None) -> Dict[str, Species]:
    """Built-ins, overlaid by $BECG_SPECIES_FILE, overlaid by an explicit file."""
    registry = builtin_registry()
    env_file = os.getenv(SPECIES_FILE_ENV)
    if env_file:
        registry.update(load_species_file(Path(env_file)))
    if extra_file is not None:
        registry.update(load_species_file(extra_file))
    return registry


def lookup_species(name: str, registry: Optional[Mapping[str, Species]] = None) -> Species:
    registry = builtin_registry() if registry is None else registry
    try:
        return registry[name]
    except KeyError:
        known = ", ".join(sorted(registry))
        raise UnknownSpeciesError(f"unknown species {name!r} (known: {known})") from None


def resolve_species(entry, registry: Optional[Mapping[str, Species]] = None) -> Species:
    """A config ``species`` entry: a registry name or an inline record."""
    if isinstance(entry, Species):
        return entry
    if isinstance(entry, Mapping):
        return Species.from_record(entry)
    return lookup_species(str(entry), registry)
