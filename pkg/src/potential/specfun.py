# src/potential/specfun.py
"""Real part of the complex error function, plain and Gaussian-scaled."""
from __future__ import annotations

import cmath
import math

from scipy import special
from scipy.integrate import quad

from src.common.errors import NonFiniteError

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


def re_erf_complex(x: float, y: float) -> float:
    """Re[erf(x + iy)].

    The value grows like exp(y² - x²) off the real axis; results outside the
    double range raise NonFiniteError rather than returning inf.
    """
    if not (math.isfinite(x) and math.isfinite(y)):
        raise NonFiniteError(f"re_erf_complex needs finite arguments, got ({x}, {y})")
    if y == 0.0:
        return float(special.erf(x))
    if x == 0.0:
        return 0.0
    value = float(special.erf(complex(x, y)).real)
    if not math.isfinite(value):
        raise NonFiniteError(f"Re erf({x}+{y}i) overflows double precision")
    return value


def scaled_re_erf(x: float, y: float) -> float:
    """exp(-y²) * Re[erf(x + iy)], finite everywhere.

    For x >= 0:  exp(-y²) Re erf(x+iy) = exp(-y²) - Re[exp(-x² - 2ixy) w(-y + ix)],
    with w the Faddeeva function (|w| <= 1 in the upper half plane). Odd in x.
    """
    if y == 0.0:
        return float(special.erf(x))
    if x < 0.0:
        return -scaled_re_erf(-x, y)
    phase = complex(math.cos(2.0 * x * y), -math.sin(2.0 * x * y))
    tail = math.exp(-x * x) * phase * special.wofz(complex(-y, x))
    return math.exp(-y * y) - tail.real


def erf_contour_oracle(x: float, y: float, rel_tol: float = 1e-13) -> complex:
    """erf(z) = (2/sqrt(pi)) * int_0^1 z exp(-(z t)²) dt along the straight path 0 -> z."""
    z = complex(x, y)

    def integrand(t: float) -> complex:
        return z * cmath.exp(-(z * t) ** 2)

    re, _ = quad(lambda t: integrand(t).real, 0.0, 1.0, epsabs=1e-16, epsrel=rel_tol, limit=200)
    im, _ = quad(lambda t: integrand(t).imag, 0.0, 1.0, epsabs=1e-16, epsrel=rel_tol, limit=200)
    return _TWO_OVER_SQRT_PI * complex(re, im)
