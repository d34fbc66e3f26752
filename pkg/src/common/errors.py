# src/common/errors.py
from __future__ import annotations

from typing import Any


class BecgError(Exception):
    """Base class for every error raised by the engine."""

    code: str = "BecgError"

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self)}


class PhysicsError(BecgError):
    """A computation failed for physical or numerical reasons (exit code 1)."""

    code = "PhysicsError"


class UsageError(BecgError):
    """Bad input, unknown identifiers or malformed config (exit code 2)."""

    code = "UsageError"


class DynamicalInstabilityError(PhysicsError):
    code = "DynamicalInstability"

    def __init__(self, shell: int, radicand: float, theory: str):
        self.shell = int(shell)
        self.radicand = float(radicand)
        self.theory = theory
        super().__init__(
            f"negative dispersion radicand {self.radicand:.6g} at shell n²={self.shell} ({theory})"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            **super().to_dict(),
            "shell": self.shell,
            "radicand": self.radicand,
            "theory": self.theory,
        }


class NoConvergenceError(PhysicsError):
    code = "NoConvergence"


class NoBracketError(PhysicsError):
    code = "NoBracket"


class DegenerateRegimeError(PhysicsError):
    code = "DegenerateRegime"


class NonFiniteError(PhysicsError):
    code = "NonFinite"


class SingularityHandlingError(PhysicsError):
    code = "SingularityHandling"


class UnknownSpeciesError(UsageError):
    code = "UnknownSpecies"


class ConfigError(UsageError):
    code = "ConfigError"


class ZeroModeError(UsageError):
    code = "ZeroMode"


class QuadratureError(PhysicsError):
    code = "Quadrature"
