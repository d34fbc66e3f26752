# src/common/utils.py
from __future__ import annotations

import hashlib
import json
import math
from typing import Any, List

import numpy as np

from .errors import ConfigError


def sha256_hex(s: str) -> str:
    """
    Return the SHA-256 hash of the given string as a hexadecimal string.
    """
    return hashlib.sha256(s.encode("utf-8")).hexdigest()


def canonical_json(obj: Any) -> str:
    """Stable JSON text used for digests and JSON output."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=True)


def parse_float(text: str | float | int, name: str = "value") -> float:
    """
    Parse a number written as 1e16, 1.0e16, 0.01 ...
    No unit inference: the caller's key name carries the unit.
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        value = float(text)
    else:
        try:
            value = float(str(text).strip())
        except ValueError as exc:
            raise ConfigError(f"{name}: cannot parse {text!r} as a number") from exc
    if not math.isfinite(value):
        raise ConfigError(f"{name}: {text!r} is not finite")
    return value


def geometric_range(start: float, stop: float, points: int) -> List[float]:
    """Geometric sweep including both end points."""
    if points < 1:
        raise ConfigError("a sweep needs at least one point")
    if start <= 0 or stop <= 0:
        raise ConfigError("geometric sweeps need positive end points")
    if points == 1:
        return [float(start)]
    return [float(v) for v in np.geomspace(start, stop, points)]
