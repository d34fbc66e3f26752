# src/common/output.py
"""Result tables: CSV with '#' provenance lines, or one JSON object {"meta", "rows"}."""
from __future__ import annotations

import csv
import io
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

import typer

from src import __version__

from .errors import ConfigError
from .utils import canonical_json, sha256_hex


def provenance(
    command: str,
    config: Mapping[str, Any],
    constants=None,
    species=None,
    extra: Optional[Mapping[str, Any]] = None,
) -> Dict[str, Any]:
    """Header block written ahead of every table. Holds nothing time-dependent."""
    meta: Dict[str, Any] = {
        "tool": "bec-gravity-thermo",
        "version": __version__,
        "command": command,
        "config": dict(config),
        "config_sha256": sha256_hex(canonical_json(_jsonable(config))),
    }
    if constants is not None:
        meta["constants"] = constants.as_dict()
    if species is not None:
        meta["species"] = species.to_record()
    if extra:
        meta.update(extra)
    return meta


def _jsonable(value: Any) -> Any:
    """Plain JSON types; non-finite floats become the strings 'inf', '-inf', 'nan'."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return str(value)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "item"):
        return _cell(value.item())
    return str(value)


def _columns(rows: Sequence[Mapping[str, Any]]) -> List[str]:
    seen: Dict[str, None] = {}
    for row in rows:
        for key in row:
            seen.setdefault(key, None)
    return list(seen)


def render_csv(rows: Sequence[Mapping[str, Any]], meta: Mapping[str, Any]) -> str:
    buf = io.StringIO()
    for key in sorted(meta):
        buf.write(f"# {key}: {canonical_json(_jsonable(meta[key]))}\n")
    columns = _columns(rows)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def render_json(rows: Sequence[Mapping[str, Any]], meta: Mapping[str, Any]) -> str:
    document = {"meta": _jsonable(meta), "rows": [_jsonable(r) for r in rows]}
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_table(
    rows: Iterable[Mapping[str, Any]],
    meta: Mapping[str, Any],
    fmt: str = "csv",
    out: Optional[Path] = None,
) -> str:
    """Render and write to ``out`` (or stdout). Returns the rendered text."""
    rows = list(rows)
    if fmt == "csv":
        text = render_csv(rows, meta)
    elif fmt == "json":
        text = render_json(rows, meta)
    else:
        raise ConfigError(f"unknown output format {fmt!r} (csv | json)")
    if out is None:
        typer.echo(text, nl=False)
    else:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    return text
