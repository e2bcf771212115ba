"""Measurable quantities of the smoothing identities.

Two routes are kept strictly apart:

* the *direct* route evolves the data in physical space, integrates
  |(|nabla|^alpha phi)(x, t)|^2 over a time quadrature and then against the
  singular weight |x|^-s on the grid;
* the *Fourier* route evaluates the time-integrated formulas on the spectral
  samples, with the weight integral in closed form.

Only the direct route is evidence for an identity; the Fourier route checks
the plumbing.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta

from .closed_forms import funk_hecke_eigenvalue, riesz_constant, weight_coefficient
from .extrapolation import richardson
from .errors import (
    DimensionError,
    DivergenceWarning,
    FitError,
    GridError,
    ParityError,
    RangeError,
    UnsupportedDimension,
)
from .params import DispersionParams, GridSpec, TimeSpec, mirror_index, parity_defects, validate_params
from .spectral import SampledField, SpectralField, abs_power, embed, forward_transform


@dataclass(frozen=True)
class QuadratureSpec:
    """Discretisation of the direct route.

    ``origin_cutoff`` is the innermost number of grid cells excluded around
    x = 0; ``ladder`` multiplies it to form the cutoff ladder used to remove
    the origin error.
    """

    time: TimeSpec
    origin_cutoff: int = 1
    ladder: tuple = (1, 2, 4)
    grid: GridSpec | None = None
    wrap_threshold: float = 1e-14

    def __post_init__(self):
        if int(self.origin_cutoff) != self.origin_cutoff or self.origin_cutoff < 1:
            raise RangeError(f"origin cutoff must be a whole number of cells >= 1, got {self.origin_cutoff}")
        lad = tuple(int(m) for m in self.ladder)
        if len(lad) < 2 or any(b <= a for a, b in zip(lad, lad[1:])) or lad[0] < 1:
            raise FitError(f"cutoff ladder must strictly increase from >= 1, got {self.ladder}")
        object.__setattr__(self, "ladder", lad)

    def cells(self) -> tuple:
        return tuple(self.origin_cutoff * m for m in self.ladder)


@dataclass(frozen=True, eq=False)
class DensityProfile:
    """Samples of D(x) = int |(|nabla|^alpha phi)(x, t)|^2 dt."""

    x: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class FunctionalResult:
    value: float
    path: str
    discretization: dict = field(default_factory=dict)
    tail_estimate: float = 0.0
    norm_sq: float = float("nan")
    details: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        """value / ||phi0||^2."""
        return self.value / self.norm_sq if self.norm_sq else float("nan")


# ---------------------------------------------------------------------------
# Fourier route


def _density_weight_exponent(alpha: float, beta: float) -> float:
    return beta - 1.0 - 2.0 * alpha


def _density_sum(F, Fm, xi, dxi, xs, weight):
    """sum_k weight_k [ |F_k|^2 + Re(exp(2 i x xi_k) F_k conj(F_{-k})) ] dxi for each x."""
    base = float(np.sum(weight * np.abs(F) ** 2)) * dxi
    cross = weight * F * np.conj(Fm)
    out = np.empty(xs.size)
    for start in range(0, xs.size, 256):
        xc = xs[start:start + 256]
        out[start:start + 256] = np.real(np.exp(2j * np.outer(xc, xi)) @ cross) * dxi
    return base + out


# central 7-point stencils: second derivative (sixth order), fourth derivative (fourth order)
_D2 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
_D4 = np.array([-1.0, 12.0, -39.0, 56.0, -39.0, 12.0, -1.0]) / 6.0


def _origin_derivatives(F, Fm, xi, dxi, xs):
    """(G''(0), G''''(0)) per x for G(xi) = |F|^2 + Re(e^{2 i x xi} F conj F(-xi))."""
    c = int(np.flatnonzero(xi == 0)[0])
    idx = np.arange(c - 3, c + 4)
    Gs = np.abs(F[idx]) ** 2 + np.real(np.exp(2j * np.outer(xs, xi[idx])) * (F[idx] * np.conj(Fm[idx])))
    return Gs @ _D2 / dxi ** 2, Gs @ _D4 / dxi ** 4


def time_integrated_density_1d(spectral0: SpectralField, x, alpha: float, beta: float):
    """D(x) from the spectral data, no time stepping.

    D(x) = 1/(2 pi |beta|) int [ |F(xi)|^2 + Re(e^{2 i x xi} F(xi) conj F(-xi)) ] |xi|^-(beta-1-2 alpha) dxi

    For p = beta-1-2alpha != 0 the xi = 0 sample is dropped and the
    trapezoid defects of the |xi|^-p singularity are subtracted: by the
    generalised Euler-Maclaurin expansion the sum over both half-lines
    exceeds the integral by  sum_{k even} 2 zeta(p-k) G^(k)(0)/k! dxi^(k+1-p).
    Terms k = 0, 2, 4 are removed whenever p < k + 1. A sum that changes
    under halving the frequency resolution is reported as divergent.
    """
    if beta == 0:
        raise RangeError("β≠0 failed: no dispersion, the time integral diverges")
    grid = spectral0.grid
    xi = grid.frequencies()
    dxi = grid.freq_spacing
    F = spectral0.values
    Fm = F[mirror_index(F.size)]
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    p = _density_weight_exponent(alpha, beta)
    scale = 1.0 / (2.0 * math.pi * abs(beta))
    weight = abs_power(xi, -p)

    def corrected(F_, Fm_, xi_, dxi_, w_):
        S = _density_sum(F_, Fm_, xi_, dxi_, xs, w_)
        if p == 0:
            return S
        if p < 1:
            zero = xi_ == 0
            g0 = 2.0 * float(np.sum(np.abs(F_[zero]) ** 2))
            S = S - 2.0 * zeta(p) * g0 * dxi_ ** (1.0 - p)
        if p < 5:
            g2, g4 = _origin_derivatives(F_, Fm_, xi_, dxi_, xs)
            if p < 3:
                S = S - zeta(p - 2.0) * g2 * dxi_ ** (3.0 - p)
            S = S - zeta(p - 4.0) / 12.0 * g4 * dxi_ ** (5.0 - p)
        return S

    D = corrected(F, Fm, xi, dxi, weight)
    if p > 0:
        k = np.arange(F.size) - F.size // 2
        sub = (k % 2) == 0
        D_half = corrected(F[sub], Fm[sub], xi[sub], 2.0 * dxi, weight[sub])
        ref = max(float(np.max(np.abs(D))), 1e-300)
        if np.max(np.abs(D - D_half)) > 1e-2 * ref:
            raise RangeError(
                f"density integral does not converge at xi = 0 for weight |xi|^-{p:g} "
                "(failed the two-resolution stability test; data needs F(0) = 0)"
            )
    D = scale * D
    return float(D[0]) if np.ndim(x) == 0 else D


def density_profile(spectral0: SpectralField, xs, alpha: float, beta: float) -> DensityProfile:
    xs = np.asarray(xs, dtype=float)
    return DensityProfile(xs, time_integrated_density_1d(spectral0, xs, alpha, beta))


def _require_weight_range(params: DispersionParams) -> None:
    if params.n != 1:
        raise DimensionError(f"one-dimensional functional, got n = {params.n}")
    if not 1.0 < params.s <= 2.0:
        raise RangeError(f"need 1 < β−2α ≤ 2, got β−2α = {params.s:g}")


def weighted_spacetime_integral_fourier(spectral0: SpectralField, params: DispersionParams) -> FunctionalResult:
    """int int |(|nabla|^alpha phi)|^2 / |x|^s dx dt for odd data via the closed-form weight integral."""
    _require_weight_range(params)
    F = spectral0.values
    no, ne = parity_defects(F)
    total = math.hypot(no, ne)
    if total > 0 and ne / total > 1e-8:
        raise ParityError(f"Fourier route needs odd data; even defect {ne / total:.3g} exceeds 1e-8")
    grid = spectral0.grid
    xi = grid.frequencies()
    w = abs_power(xi, 0.0)
    w[xi == 0] = 0.0
    mass = float(np.sum(w * np.abs(F) ** 2)) * grid.freq_spacing
    coef = weight_coefficient(params.s) / (2.0 * math.pi * params.beta)
    # aliasing indicator: spectral mass in the outer eighth of the band
    outer = np.abs(xi) > 0.875 * grid.nyquist
    edge = float(np.sum(np.abs(F[outer]) ** 2)) * grid.freq_spacing
    return FunctionalResult(
        value=coef * mass,
        path="fourier",
        discretization={"points": grid.points, "extent": grid.extent},
        tail_estimate=coef * edge,
        norm_sq=spectral0.norm_sq() / (2.0 * math.pi),
    )


# ---------------------------------------------------------------------------
# Direct route


@dataclass
class DirectRun:
    """Time-integrated densities on the wrap-free padded grid."""

    grid: GridSpec
    horizons: list
    densities: list
    last_time: float
    last_density: np.ndarray
    spectral: SpectralField
    norm_sq: float
    info: dict


def band_edge(spectral: SpectralField, rel: float) -> float:
    """Smallest xi_c with |F(xi)|^2 <= rel * max|F|^2 for all |xi| > xi_c."""
    a2 = np.abs(spectral.values) ** 2
    peak = float(a2.max())
    if peak == 0:
        return 0.0
    xi = np.abs(spectral.xi)
    big = a2 > rel * peak
    return float(xi[big].max())


def simulate_density(field0: SampledField, alpha: float, beta: float, time: TimeSpec,
                     wrap_threshold: float = 1e-14, keep: int = 3) -> DirectRun:
    """Evolve ``field0`` and accumulate D_T(x) = int_{-T}^{T} |(|nabla|^alpha phi)(x,t)|^2 dt.

    The data are zero-padded onto a periodic box large enough that no
    spectral component above ``wrap_threshold`` (relative power) travels
    round the box within the horizon. Partial densities at the last ``keep``
    panel edges are returned as well (T/4, T/2, T for geometric panels).
    """
    if field0.grid.dimension != "line":
        raise GridError("direct route needs a line grid")
    if alpha < 0:
        raise RangeError(f"α≥0 failed: α = {alpha:g}")
    T = float(time.horizon)
    h = field0.grid.spacing
    spec0 = forward_transform(field0)
    xi_v = band_edge(spec0, wrap_threshold)
    vmax = abs(beta) * max(xi_v, 1.0) ** max(beta - 1.0, 0.0)
    half_width = field0.grid.extent * 2.0 + vmax * T
    points = max(field0.grid.points, 1 << int(math.ceil(math.log2(2.0 * half_width / h))))
    big = embed(field0, points)
    spec = forward_transform(big)
    xi = spec.xi

    power = np.abs(spec.values) ** 2
    xi_rms = math.sqrt(float(np.sum(xi ** 2 * power)) / float(np.sum(power))) if power.any() else 1.0
    first = min(T, max(1e-4, 0.5 / max(xi_rms, 1e-12) ** abs(beta)))
    ts, ws, ends, edges = time.nodes(first_panel=first)

    # shifts hoisted out of the time loop: work in FFT order throughout
    G = np.fft.ifftshift(spec.values * abs_power(xi, alpha))
    disp = np.fft.ifftshift(abs_power(xi, beta))
    acc = np.zeros(points)
    saved = {}
    end_set = {int(e): float(edge) for e, edge in zip(ends, edges)}
    last_density = None
    for i, (t, w) in enumerate(zip(ts, ws)):
        for sign in (1.0, -1.0):
            u = np.fft.ifft(G * np.exp(-1j * sign * t * disp)) / h
            dens = u.real ** 2 + u.imag ** 2
            acc += w * dens
            if i == ts.size - 1 and sign > 0:
                last_density = np.fft.fftshift(dens)
        if (i + 1) in end_set:
            saved[end_set[i + 1]] = np.fft.fftshift(acc)
    horizons = sorted(saved)[-keep:]
    return DirectRun(
        grid=big.grid,
        horizons=horizons,
        densities=[saved[T_] for T_ in horizons],
        last_time=float(ts[-1]),
        last_density=last_density,
        spectral=spec,
        norm_sq=field0.norm_sq(),
        info={
            "data_points": field0.grid.points,
            "data_extent": field0.grid.extent,
            "padded_points": points,
            "spacing": h,
            "horizon": T,
            "time_nodes_per_side": int(ts.size),
            "time_rule": time.rule,
            "band_edge": xi_v,
        },
    )


def _hurwitz(p: float, m: int) -> float:
    """zeta(p, m) for p < 1 via zeta(p) - sum_{k<m} k^-p."""
    return float(zeta(p)) - float(np.sum(np.arange(1, m, dtype=float) ** -p))


def shell_sums(x: np.ndarray, h: float, D: np.ndarray, s: float, cells) -> np.ndarray:
    """V(m) = h sum_{|x_k| >= m h} D_k |x_k|^-s for each m in ``cells``."""
    ax = np.abs(x)
    k = np.rint(ax / h).astype(np.int64)
    out = []
    for m in cells:
        sel = k >= m
        out.append(h * float(np.sum(D[sel] * ax[sel] ** -s)))
    return np.array(out)


def origin_extrapolate(V, cells, h: float, s: float):
    """Remove the origin error of the cell-excluding sums of an odd profile.

    Near 0 the integrand is g(x)|x|^(2-s) with g smooth and even, so
    V(m) = I + c1 zeta(s-2, m) + c2 zeta(s-4, m) + O(h^(7-s)).
    With three or more ladder members the system is solved in the least-squares
    sense; the error estimate compares against the two-term model.
    """
    V = np.asarray(V, dtype=float)
    cells = list(cells)
    z1 = np.array([_hurwitz(s - 2.0, m) for m in cells])
    z2 = np.array([_hurwitz(s - 4.0, m) for m in cells])
    A2 = np.column_stack([np.ones_like(z1), z1])
    I2 = np.linalg.solve(A2[:2], V[:2])[0]
    if len(cells) < 3:
        return float(I2), abs(float(I2) - float(V[0]))
    A3 = np.column_stack([np.ones_like(z1), z1, z2])
    I3 = np.linalg.lstsq(A3, V, rcond=None)[0][0]
    return float(I3), abs(float(I3) - float(I2))


def _origin_diverging(V, cells) -> bool:
    """True when the innermost shell's per-cell weight exceeds the next shell's by 1.5x."""
    if len(cells) < 3:
        return False
    d1 = (V[0] - V[1]) / (cells[1] - cells[0])
    d2 = (V[1] - V[2]) / (cells[2] - cells[1])
    return d2 > 0 and d1 > 1.5 * d2


def asymptotic_coefficient(spectral: SpectralField, alpha: float, beta: float, s: float) -> float:
    """A with int |(|nabla|^alpha phi)(x,t)|^2 |x|^-s dx ~ A |t|^-s as |t| -> inf (stationary phase).

    A = 1/(2 pi |beta|^s) int |F(xi)|^2 |xi|^(2 alpha - s (beta-1)) dxi.
    """
    xi = spectral.xi
    w = abs_power(xi, 2.0 * alpha - s * (beta - 1.0))
    w[xi == 0] = 0.0
    return float(np.sum(w * np.abs(spectral.values) ** 2)) * spectral.grid.freq_spacing / (
        2.0 * math.pi * abs(beta) ** s
    )


def _increment_slope(horizons, values) -> float:
    T = np.asarray(horizons, dtype=float)
    d = np.diff(np.asarray(values, dtype=float))
    if d.size < 2 or np.any(d <= 0):
        return float("nan")
    return float(np.polyfit(np.log(T[:-1]), np.log(d), 1)[0])


def weighted_spacetime_integral_direct(field0: SampledField, params: DispersionParams,
                                       quad: QuadratureSpec) -> FunctionalResult:
    """int_{-inf}^{inf} int |(|nabla|^alpha phi)(x,t)|^2 / |x|^s dx dt by simulation.

    The finite-horizon integral is computed on the grid, its origin error is
    eliminated over the cutoff ladder, and the |t| > T remainder is added from
    the stationary-phase law A |t|^-s. ``tail_estimate`` is the mismatch of
    that law at the last time node times the added tail, plus the origin
    extrapolation uncertainty.
    """
    _require_weight_range(params)
    s = params.s
    if not np.any(field0.values):
        return FunctionalResult(0.0, "direct", {"data_points": field0.grid.points}, 0.0, 0.0)
    run = simulate_density(field0, params.alpha, params.beta, quad.time, quad.wrap_threshold)
    x = run.grid.coords()
    h = run.grid.spacing
    cells = quad.cells()

    finite, errs, ladders = [], [], []
    diverging = False
    for D in run.densities:
        V = shell_sums(x, h, D, s, cells)
        ladders.append(V.tolist())
        if _origin_diverging(V, cells):
            diverging = True
        I, err = origin_extrapolate(V, cells, h, s)
        finite.append(I)
        errs.append(err)

    disc = dict(run.info, cutoff_cells=list(cells))
    if diverging:
        warnings.warn(
            "cutoff ladder values grow as the origin cutoff shrinks; the weighted integral diverges "
            "(data is not odd)",
            DivergenceWarning,
            stacklevel=2,
        )
        return FunctionalResult(
            float(ladders[-1][0]), "direct", disc, float("inf"), run.norm_sq,
            {"diverging": True, "cutoff_ladder": ladders[-1]},
        )

    T = run.horizons[-1]
    A = asymptotic_coefficient(run.spectral, params.alpha, params.beta, s)
    tail = 2.0 * A * T ** (1.0 - s) / (s - 1.0)
    F_last = float(shell_sums(x, h, run.last_density, s, cells[:1])[0])
    mismatch = abs(F_last * run.last_time ** s / A - 1.0) if A > 0 else 0.0
    value = finite[-1] + tail

    details = {
        "horizons": run.horizons,
        "truncated_values": finite,
        "tail": tail,
        "tail_law_mismatch": mismatch,
        "origin_error": errs[-1],
        "cutoff_ladder": ladders[-1],
        "horizon_slope": _increment_slope(run.horizons, finite),
        "expected_horizon_slope": 1.0 - s,
    }
    if len(finite) >= 2:
        try:
            details["richardson_T"] = richardson(finite, orders=(s - 1.0,))[0]
        except FitError:
            details["richardson_T"] = float("nan")
    return FunctionalResult(value, "direct", disc, mismatch * abs(tail) + errs[-1], run.norm_sq, details)


# ---------------------------------------------------------------------------
# n >= 2 through separated radial x spherical-harmonic data


def radial_reduction_integral(profile: SampledField, l: int, n: int, alpha: float, beta: float) -> FunctionalResult:
    """Weighted space-time integral for phi0_hat(r w) = g(r) Y_l(w), Y_l unit-normalised on S^2.

    value = (2 pi)^(1-2n) / beta * c(n, s) * 2 pi lambda_l * int_0^inf r^(n-1) |g(r)|^2 dr
    and ||phi0||^2 = (2 pi)^-n int_0^inf r^(n-1) |g|^2 dr.
    ``profile`` holds g on a radial grid (0, R].
    """
    if n != 3:
        raise UnsupportedDimension(f"radial reduction is implemented for n = 3 only, got {n}")
    p = validate_params(n, alpha, beta, "thm1")
    if profile.grid.dimension != "radial":
        raise GridError("radial reduction needs a radial grid")
    r = profile.grid.coords()
    dr = profile.grid.spacing
    g2 = np.abs(profile.values) ** 2
    # trapezoid with the r = 0 endpoint (value 0) implicit
    f = r ** (n - 1) * g2
    radial = dr * (float(np.sum(f)) - 0.5 * float(f[-1]))
    lam = funk_hecke_eigenvalue(n, p.gamma, l)
    c = riesz_constant(n, p.s)
    value = (2.0 * math.pi) ** (1 - 2 * n) / beta * c * 2.0 * math.pi * lam * radial
    return FunctionalResult(
        value=value,
        path="radial",
        discretization={"points": profile.grid.points, "extent": profile.grid.extent, "l": int(l)},
        tail_estimate=(2.0 * math.pi) ** (1 - 2 * n) / beta * c * 2.0 * math.pi * lam
        * float(f[-1]) * profile.grid.extent / max(n, 1),
        norm_sq=(2.0 * math.pi) ** (-n) * radial,
        details={"eigenvalue": lam, "riesz_constant": c},
    )


def radial_direct_3d(psi0, grid: GridSpec, quad: QuadratureSpec) -> FunctionalResult:
    """3D radial Schrodinger data (beta = 2, alpha = 0) simulated through u = r psi.

    For radial psi, u(r, t) = r psi(r, t) extends to an odd solution of the 1D
    free equation, int int |psi|^2/|x|^2 dx dt = 2 pi int int |u|^2/x^2 dx dt
    and ||psi0||^2 = 2 pi ||u0||^2, so the 1D direct route measures the 3D ratio.
    """
    x = grid.coords()
    u0 = SampledField(x * psi0(np.abs(x)), grid)
    res = weighted_spacetime_integral_direct(u0, DispersionParams(1, 0.0, 2.0), quad)
    return FunctionalResult(
        2.0 * math.pi * res.value, "direct", dict(res.discretization, reduction="u=r*psi"),
        2.0 * math.pi * res.tail_estimate, 2.0 * math.pi * res.norm_sq, res.details,
    )


# ---------------------------------------------------------------------------
# sup-in-x functional and the negative control


def sup_density(spectral0: SpectralField, beta: float, scan):
    """(max_x D(x), argmax) over ``scan`` with alpha = (beta - 1)/2."""
    p = validate_params(1, (beta - 1.0) / 2.0, beta, "thm3")
    xs = np.asarray(scan, dtype=float)
    D = time_integrated_density_1d(spectral0, xs, p.alpha, p.beta)
    k = int(np.argmax(D))
    return float(D[k]), float(xs[k])


@dataclass(frozen=True)
class ProbeResult:
    slope: float
    status: str
    exponent: float
    epsilons: tuple
    values: tuple


def divergence_probe(field0: SampledField, params: DispersionParams, epsilons=None,
                     horizon: float = 4.0) -> ProbeResult:
    """Growth exponent of the cutoff-excluded direct integral as the cutoff shrinks.

    V(eps) = int_0^T dt int_{|x|>=eps} ... is computed on a geometric cutoff
    ladder; log-increments V(eps_k) - V(eps_{k+1}) are regressed on log eps_k.
    The local model |phi(0,t)|^2 int_eps x^-s dx predicts slope -(s-1) for even
    data. A positive fitted exponent means the sums converge: slope 0, status
    "converged".
    """
    if params.n != 1:
        raise DimensionError("divergence probe is one-dimensional")
    s = params.s
    h = field0.grid.spacing
    if epsilons is None:
        cells = [16, 32, 64, 128]
    else:
        cells = sorted({int(round(e / h)) for e in epsilons})
        if cells and cells[0] < 1:
            raise FitError("cutoffs must be at least one grid cell")
    if len(cells) < 3:
        raise FitError(f"need at least 3 distinct cutoffs, got {len(cells)}")
    run = simulate_density(field0, params.alpha, params.beta, TimeSpec(horizon, 128), keep=1)
    x = run.grid.coords()
    V = shell_sums(x, run.grid.spacing, run.densities[-1], s, cells)
    eps = np.array(cells, dtype=float) * h
    d = V[:-1] - V[1:]
    if np.any(d <= 0):
        raise FitError("cutoff ladder increments are not positive")
    exponent = float(np.polyfit(np.log(eps[:-1]), np.log(d), 1)[0])
    if exponent > 0:
        return ProbeResult(0.0, "converged", exponent, tuple(eps), tuple(V))
    return ProbeResult(exponent, "diverging", exponent, tuple(eps), tuple(V))
