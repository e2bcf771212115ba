"""Independent oracles for the closed forms.

Nothing here calls into ``closed_forms`` or ``special``; special functions
come from scipy and integrals from QUADPACK or explicit panel rules.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate
from scipy.special import beta as beta_fn
from scipy.special import eval_legendre
from scipy.special import gamma as sp_gamma

_QUAD = dict(epsabs=1e-14, epsrel=1e-13, limit=500)


def gamma_quadrature(x: float) -> float:
    """Euler integral  int_0^inf t^(x-1) e^-t dt  for x > 0."""
    if not x > 0:
        raise ValueError("gamma_quadrature needs x > 0")
    head, _ = integrate.quad(lambda t: math.exp(-t), 0.0, 1.0, weight="alg", wvar=(x - 1.0, 0.0), **_QUAD)
    tail, _ = integrate.quad(lambda t: t ** (x - 1.0) * math.exp(-t), 1.0, np.inf, **_QUAD)
    return head + tail


def weight_integral_quadrature(s: float, xi: float, tail_tol: float = 1e-13, nodes: int = 24) -> float:
    """int_R (1 - cos 2 x xi) / |x|^s dx by panels plus an integrated-by-parts tail.

    (0, pi/k] is done adaptively (k = 2|xi|); [pi/k, X] by Gauss-Legendre on
    half-period panels; beyond X the x^-s part is exact and the cosine part
    uses two integrations by parts, X chosen so the remainder
    s X^(-s-1) / k^2 is below ``tail_tol``.
    """
    if xi == 0:
        return 0.0
    k = 2.0 * abs(xi)
    a = math.pi / k
    head, _ = integrate.quad(lambda x: 2.0 * math.sin(0.5 * k * x) ** 2 * x ** -s, 0.0, a, **_QUAD)

    x_req = (s / (k * k * tail_tol)) ** (1.0 / (s + 1.0))
    npanel = max(1, int(math.ceil((x_req - a) / a)))
    X = a * (npanel + 1)
    gx, gw = np.polynomial.legendre.leggauss(nodes)
    body = 0.0
    chunk = 20000
    for start in range(0, npanel, chunk):
        left = a * (1 + np.arange(start, min(start + chunk, npanel)))
        x = left[:, None] + 0.5 * a * (gx[None, :] + 1.0)
        f = 2.0 * np.sin(0.5 * k * x) ** 2 * x ** -s
        body += 0.5 * a * float(np.sum(f @ gw))

    plain = X ** (1.0 - s) / (s - 1.0)
    cos_tail = -math.sin(k * X) * X ** -s / k + s * math.cos(k * X) * X ** (-s - 1.0) / k ** 2
    return 2.0 * (head + body + plain - cos_tail)


def kato_constant_1d_quadrature(alpha: float, beta: float) -> float:
    return weight_integral_quadrature(beta - 2.0 * alpha, 1.0) / beta


def riesz_constant_quadrature(n: int, s: float) -> float:
    """Fourier transform of |x|^-s at |k| = 1 by oscillatory quadrature.

    n = 3 (1 < s < 3): 4 pi int_0^inf r^(1-s) sin r dr.
    n = 1 (0 < s < 1): 2 int_0^inf x^-s cos x dx.
    """
    if n == 3:
        if not 1 < s < 3:
            raise ValueError("radial oracle needs 1 < s < 3 in 3D")
        head, _ = integrate.quad(lambda r: math.sin(r) / r if r else 1.0, 0.0, 1.0, weight="alg", wvar=(2.0 - s, 0.0), **_QUAD)
        tail, _ = integrate.quad(lambda r: r ** (1.0 - s), 1.0, np.inf, weight="sin", wvar=1.0)
        return 4.0 * math.pi * (head + tail)
    if n == 1:
        if not 0 < s < 1:
            raise ValueError("1D oracle needs 0 < s < 1")
        head, _ = integrate.quad(math.cos, 0.0, 1.0, weight="alg", wvar=(-s, 0.0), **_QUAD)
        tail, _ = integrate.quad(lambda x: x ** -s, 1.0, np.inf, weight="cos", wvar=1.0)
        return 2.0 * (head + tail)
    raise ValueError(f"no quadrature oracle for n = {n}")


def _sphere_area(k: int) -> float:
    return 2.0 * math.pi ** ((k + 1) / 2.0) / sp_gamma((k + 1) / 2.0)


def sphere_pair_quadrature(n: int, gamma: float) -> float:
    """Adaptive quadrature in the polar angle, without the u = sin(t/2) substitution."""
    p = n - 2.0 - gamma

    def f(t):
        if t == 0.0:
            return 1.0
        return (2.0 * math.sin(0.5 * t) / t) ** -gamma * (math.sin(t) / t) ** (n - 2)

    val, _ = integrate.quad(f, 0.0, math.pi, weight="alg", wvar=(p, 0.0), **_QUAD)
    return _sphere_area(n - 1) * _sphere_area(n - 2) * val


def sphere_pair_closed_form(n: int, gamma: float) -> float:
    """Same integral through the Beta function."""
    a = (n - 1.0 - gamma) / 2.0
    b = (n - 1.0) / 2.0
    return _sphere_area(n - 1) * _sphere_area(n - 2) * 2.0 ** (n - 2.0 - gamma) * beta_fn(a, b)


def funk_hecke_quadrature(gamma: float, l: int) -> float:
    val, _ = integrate.quad(
        lambda u: eval_legendre(l, u), -1.0, 1.0, weight="alg", wvar=(0.0, -gamma / 2.0), **_QUAD
    )
    return 2.0 ** (-gamma / 2.0) * val


def funk_hecke_closed_form(gamma: float, l: int) -> float:
    """2^(1-gamma) Gamma(1-gamma/2) Gamma(l+gamma/2) / (Gamma(gamma/2) Gamma(l+2-gamma/2)).

    From Rodrigues' formula and l integrations by parts; gamma = 0 is the
    limit (2 for l = 0, 0 otherwise).
    """
    if gamma == 0:
        return 2.0 if l == 0 else 0.0
    h = gamma / 2.0
    return 2.0 ** (1.0 - gamma) * sp_gamma(1.0 - h) * sp_gamma(l + h) / (sp_gamma(h) * sp_gamma(l + 2.0 - h))


def kato_constant_nd_oracle(n: int, alpha: float, beta: float) -> float:
    """Assemble the radial constant from oracle pieces.

    n = 3 uses the Funk-Hecke route  S2 = 8 pi^2 lambda_0  and the radial
    Riesz quadrature; other n use the Beta closed form and scipy's Gamma.
    """
    s = beta - 2.0 * alpha
    gamma = n - s
    if n == 3:
        c = riesz_constant_quadrature(3, s)
        s2 = 8.0 * math.pi ** 2 * funk_hecke_closed_form(gamma, 0)
    else:
        c = 2.0 ** (n - s) * math.pi ** (n / 2.0) * sp_gamma((n - s) / 2.0) / sp_gamma(s / 2.0)
        s2 = sphere_pair_closed_form(n, gamma)
    return (2.0 * math.pi) ** (1 - n) * c * s2 / (beta * _sphere_area(n - 1))
