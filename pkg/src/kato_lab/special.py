"""Gamma function by the Lanczos approximation (g = 7, 9 terms)."""
from __future__ import annotations

import math

from .errors import PoleError

_G = 7.0
_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _lanczos(x: float) -> float:
    # valid for x >= 0.5
    x -= 1.0
    acc = _COEF[0]
    for k in range(1, len(_COEF)):
        acc += _COEF[k] / (x + k)
    t = x + _G + 0.5
    # split the power to avoid overflow near x ~ 140
    half = t ** (0.5 * (x + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * acc


def gamma_fn(x: float) -> float:
    """Gamma(x) for real x; reflection formula below 1/2.

    Raises PoleError at non-positive integers.
    """
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x:g}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * _lanczos(1.0 - x))
    return _lanczos(x)


def gamma_sin_half(u: float) -> float:
    """Gamma(u) * sin(u pi / 2), continued through u = 0 where it equals pi/2."""
    if abs(u) < 1e-9:
        return math.pi / 2.0
    return gamma_fn(u) * math.sin(0.5 * math.pi * u)


def sphere_area(k: int) -> float:
    """Surface measure of the unit sphere S^k in R^(k+1)."""
    return 2.0 * math.pi ** ((k + 1) / 2.0) / gamma_fn((k + 1) / 2.0)
