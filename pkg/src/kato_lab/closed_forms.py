"""Exact constants of the smoothing identities and the pieces they are built from."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import eval_legendre, roots_jacobi

from .errors import DimensionError, RangeError, UnsupportedDimension
from .special import gamma_fn, gamma_sin_half, sphere_area

__all__ = [
    "ConstantsReport",
    "constants_reports",
    "funk_hecke_eigenvalue",
    "gamma_fn",
    "kato_constant_1d",
    "kato_constant_nd",
    "riesz_constant",
    "sphere_pair_integral",
    "weight_coefficient",
    "weight_integral",
]

_TINY = 1e-300


def _check_weight_exponent(s: float) -> None:
    if not s > 1.0:
        raise RangeError(f"β−2α>1 failed: s = {s:g}")
    if not s <= 2.0:
        raise RangeError(f"β−2α≤2 failed: s = {s:g}")


def weight_coefficient(s: float) -> float:
    """W(s) with  int (1 - cos 2 x xi) / |x|^s dx = W(s) |xi|^(s-1),  1 < s <= 2."""
    _check_weight_exponent(s)
    return 2.0 ** s * gamma_sin_half(2.0 - s) / (s - 1.0)


def weight_integral(s: float, xi: float) -> float:
    w = weight_coefficient(s)
    if xi == 0:
        return 0.0
    return w * abs(xi) ** (s - 1.0)


def kato_constant_1d(alpha: float, beta: float) -> float:
    """Constant of the one-dimensional odd-data identity.

    K = 2^s Gamma(2-s) sin((2-s) pi/2) / (beta (beta - 1 - 2 alpha)),  s = beta - 2 alpha,
    with the s = 2 value taken as the limit (Gamma(u) sin(u pi/2) -> pi/2).
    """
    if not beta > 0:
        raise RangeError(f"β>0 failed: β = {beta:g}")
    return weight_coefficient(beta - 2.0 * alpha) / beta


def riesz_constant(n: int, s: float, continued: bool = False) -> float:
    """c(n, s) in  int exp(i x.k) |x|^-s dx = c(n, s) |k|^(s-n).

    c(n, s) = 2^(n-s) pi^(n/2) Gamma((n-s)/2) / Gamma(s/2), 0 < s < n.
    ``continued=True`` admits s > n (s - n not an even integer), where the
    value is the analytic continuation of the homogeneous distribution.
    """
    if not s > 0:
        raise RangeError(f"Riesz exponent must be positive, got s = {s:g}")
    if s >= n and not continued:
        raise RangeError(f"|x|^-s is not locally integrable for s = {s:g} >= n = {n}")
    return 2.0 ** (n - s) * math.pi ** (n / 2.0) * gamma_fn((n - s) / 2.0) / gamma_fn(s / 2.0)


def _jacobi_unit(m: int, a: float, b: float):
    """Nodes/weights on [0, 1] for the weight u^a (1 - u)^b."""
    v, w = roots_jacobi(m, b, a)
    return 0.5 * (1.0 + v), w * 2.0 ** (-(a + b + 1.0))


def sphere_pair_integral(
    n: int, gamma: float, tol: float = 1e-9, start: int = 256, max_nodes: int = 4096
) -> float:
    """Double sphere integral of |w1 - w2|^-gamma over S^(n-1) x S^(n-1).

    Reduces to |S^(n-1)| |S^(n-2)| int_0^pi (2 sin(t/2))^-gamma sin^(n-2) t dt and,
    after u = sin(t/2), to 2^(n-1-gamma) int_0^1 u^(n-2-gamma) (1-u^2)^((n-3)/2) du.
    The algebraic endpoint factors become the weight of a Gauss-Jacobi rule;
    nodes double until two successive values agree to ``tol``.
    """
    if n < 2:
        raise DimensionError(f"sphere pairing needs n >= 2, got n = {n}")
    if not gamma < n - 1:
        raise RangeError(f"sphere kernel diverges: need γ<n−1, got γ = {gamma:g}, n = {n}")
    a = n - 2.0 - gamma
    b = (n - 3.0) / 2.0

    def rule(m):
        u, w = _jacobi_unit(m, a, b)
        return float(np.sum(w * (1.0 + u) ** b))

    m = start
    prev = rule(m)
    while m < max_nodes:
        m *= 2
        cur = rule(m)
        if abs(cur - prev) <= tol * abs(cur):
            prev = cur
            break
        prev = cur
    return sphere_area(n - 1) * sphere_area(n - 2) * 2.0 ** (n - 1.0 - gamma) * prev


def funk_hecke_eigenvalue(n: int, gamma: float, l: int) -> float:
    """lambda_l = int_{-1}^{1} (2 - 2u)^(-gamma/2) P_l(u) du  on S^2.

    The sphere kernel acts on degree-l harmonics as multiplication by 2 pi lambda_l.
    """
    if n != 3:
        raise UnsupportedDimension(f"Funk-Hecke eigenvalues are implemented for n = 3 only, got {n}")
    if not gamma < 2:
        raise RangeError(f"γ<2 failed: γ = {gamma:g}")
    if int(l) != l or l < 0:
        raise RangeError(f"harmonic degree must be a non-negative integer, got {l}")
    l = int(l)
    m = max(8, l + 2)
    u, w = roots_jacobi(m, -gamma / 2.0, 0.0)
    return float(2.0 ** (-gamma / 2.0) * np.sum(w * eval_legendre(l, u)))


def kato_constant_nd(n: int, alpha: float, beta: float) -> float:
    """Equality constant for radial data in dimension n >= 2.

    C = (2 pi)^(1-n) c(n, s) S2(n, gamma) / (beta |S^(n-1)|),
    s = beta - 2 alpha, gamma = n - s.
    """
    if n < 2:
        raise DimensionError(f"use kato_constant_1d for n = 1 (got n = {n})")
    s = beta - 2.0 * alpha
    if not 1.0 < s < n:
        raise RangeError(f"need 1 < β−2α < n, got β−2α = {s:g}, n = {n}")
    if not beta > 0:
        raise RangeError(f"β>0 failed: β = {beta:g}")
    c = riesz_constant(n, s)
    s2 = sphere_pair_integral(n, n - s)
    return (2.0 * math.pi) ** (1 - n) * c * s2 / (beta * sphere_area(n - 1))


@dataclass(frozen=True)
class ConstantsReport:
    name: str
    params: str
    formula_value: float
    oracle_value: float
    rel_residual: float

    @classmethod
    def compare(cls, name: str, params: str, formula: float, oracle: float) -> "ConstantsReport":
        res = abs(formula - oracle) / max(abs(formula), _TINY)
        return cls(name, params, float(formula), float(oracle), float(res))

    def to_dict(self) -> dict:
        return asdict(self)


def constants_reports() -> list[ConstantsReport]:
    """Every closed form paired with an independent quadrature or closed-form oracle."""
    from . import oracles

    rows = []
    add = rows.append
    for x in (0.3, 0.5, 1.0, 2.5, 7.5):
        add(ConstantsReport.compare("gamma_fn", f"x={x:g}", gamma_fn(x), oracles.gamma_quadrature(x)))
    for alpha, beta in ((0.0, 2.0), (0.0, 1.2), (0.0, 1.5), (0.0, 1.8), (0.25, 2.0)):
        add(ConstantsReport.compare(
            "kato_constant_1d", f"alpha={alpha:g},beta={beta:g}",
            kato_constant_1d(alpha, beta), oracles.kato_constant_1d_quadrature(alpha, beta),
        ))
    for s in (1.2, 1.5, 1.8, 2.0):
        for xi in (0.5, 1.0, 2.0):
            add(ConstantsReport.compare(
                "weight_integral", f"s={s:g},xi={xi:g}",
                weight_integral(s, xi), oracles.weight_integral_quadrature(s, xi),
            ))
    for n, s in ((3, 2.0), (3, 1.5), (3, 2.5), (1, 0.5)):
        add(ConstantsReport.compare(
            "riesz_constant", f"n={n},s={s:g}", riesz_constant(n, s), oracles.riesz_constant_quadrature(n, s),
        ))
    for n, g in ((3, 1.0), (3, 0.0), (3, 1.4), (2, 0.5), (4, 2.0), (5, 3.0)):
        add(ConstantsReport.compare(
            "sphere_pair_integral", f"n={n},gamma={g:g}",
            sphere_pair_integral(n, g), oracles.sphere_pair_quadrature(n, g),
        ))
    for g, l in ((1.0, 0), (1.0, 1), (1.0, 2), (1.4, 0), (1.4, 3), (0.5, 5)):
        add(ConstantsReport.compare(
            "funk_hecke_eigenvalue", f"n=3,gamma={g:g},l={l}",
            funk_hecke_eigenvalue(3, g, l), oracles.funk_hecke_quadrature(g, l),
        ))
    for n, alpha, beta in ((3, 0.0, 2.0), (4, 0.0, 2.0), (5, 0.0, 2.0), (3, 0.2, 2.0), (3, 0.0, 1.5)):
        add(ConstantsReport.compare(
            "kato_constant_nd", f"n={n},alpha={alpha:g},beta={beta:g}",
            kato_constant_nd(n, alpha, beta), oracles.kato_constant_nd_oracle(n, alpha, beta),
        ))
    return rows
