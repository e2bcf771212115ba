"""Parameter validation, grid/time descriptors and parity handling."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import numpy as np

from .errors import DimensionError, GridError, RangeError

if TYPE_CHECKING:
    from .spectral import SampledField

Mode = Literal["thm1", "thm2", "thm3"]
MODES = ("thm1", "thm2", "thm3")


@dataclass(frozen=True)
class DispersionParams:
    """The triple (n, alpha, beta) for  i phi_t = (-Laplacian)^(beta/2) phi.

    ``s`` (weight exponent) and ``gamma`` (sphere-kernel exponent) are
    derived on access, so they can never drift from (n, alpha, beta).
    """

    n: int
    alpha: float
    beta: float

    @property
    def s(self) -> float:
        return self.beta - 2.0 * self.alpha

    @property
    def gamma(self) -> float:
        return self.n - self.beta + 2.0 * self.alpha


def validate_params(n, alpha, beta, mode: Mode = "thm1") -> DispersionParams:
    """Check (n, alpha, beta) against the hypotheses of the chosen mode.

    ``thm1``: 1 < beta - 2 alpha < n.  ``thm2`` (n = 1, odd data):
    1 < beta - 2 alpha <= 2.  ``thm3`` (n = 1): alpha = (beta - 1)/2, beta > -1.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if isinstance(n, bool) or not float(n).is_integer() or int(n) < 1:
        raise DimensionError(f"dimension n must be a positive integer, got {n!r}")
    n = int(n)
    alpha = float(alpha)
    beta = float(beta)
    if not (math.isfinite(alpha) and math.isfinite(beta)):
        raise RangeError(f"alpha and beta must be finite, got alpha={alpha}, beta={beta}")
    if mode in ("thm2", "thm3") and n != 1:
        raise DimensionError(f"mode {mode} is one-dimensional; got n={n}")

    s = beta - 2.0 * alpha
    if mode == "thm1":
        if not s > 1.0:
            raise RangeError(f"β−2α>1 failed: β−2α = {s:g}")
        if not s < n:
            raise RangeError(f"β−2α<n failed: β−2α = {s:g}, n = {n}")
    elif mode == "thm2":
        if not s > 1.0:
            raise RangeError(f"β−2α>1 failed: β−2α = {s:g}")
        if not s <= 2.0:
            raise RangeError(f"β−2α≤2 failed: β−2α = {s:g}")
    else:
        if not beta > -1.0:
            raise RangeError(f"β>−1 failed: β = {beta:g}")
        if abs(alpha - (beta - 1.0) / 2.0) > 1e-12:
            raise RangeError(f"α=(β−1)/2 failed: α = {alpha:g}, (β−1)/2 = {(beta - 1) / 2:g}")
        alpha = (beta - 1.0) / 2.0
    return DispersionParams(n, alpha, beta)


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid descriptor.

    ``dimension="line"``: x_j = -L + j dx, j = 0..N-1 with dx = 2L/N. The grid
    is periodic, so it is symmetric about 0 under j -> N - j (mod N) and x = 0
    is the sample j = N/2.
    ``dimension="radial"``: r_j = j R/N, j = 1..N on (0, R].
    """

    extent: float
    points: int
    dimension: Literal["line", "radial"] = "line"

    def __post_init__(self):
        if not (self.extent > 0 and math.isfinite(self.extent)):
            raise GridError(f"extent must be positive and finite, got {self.extent}")
        p = self.points
        if isinstance(p, bool) or int(p) != p or p < 2 or (int(p) & (int(p) - 1)):
            raise GridError(f"points must be a power of two >= 2, got {p}")
        if self.dimension not in ("line", "radial"):
            raise GridError(f"unknown grid dimension {self.dimension!r}")

    @property
    def spacing(self) -> float:
        if self.dimension == "line":
            return 2.0 * self.extent / self.points
        return self.extent / self.points

    @property
    def nyquist(self) -> float:
        return math.pi / self.spacing

    @property
    def freq_spacing(self) -> float:
        return math.pi / self.extent

    def coords(self) -> np.ndarray:
        if self.dimension == "line":
            return -self.extent + self.spacing * np.arange(self.points)
        return self.spacing * np.arange(1, self.points + 1)

    def frequencies(self) -> np.ndarray:
        """Monotone frequency samples  (k - N/2) * pi/L,  k = 0..N-1."""
        return (np.arange(self.points) - self.points // 2) * self.freq_spacing

    def check_band_limit(self, band_limit: float) -> None:
        if not self.nyquist > band_limit:
            raise GridError(
                f"Nyquist frequency {self.nyquist:g} does not exceed band limit {band_limit:g}"
            )


@dataclass(frozen=True)
class TimeSpec:
    """Time quadrature over [-T, T].

    ``rule="gauss-panels"`` places ``steps`` Gauss-Legendre nodes per half
    line on geometrically graded panels [0, t0], [t0, 2 t0], ..., ending at T;
    ``rule="trapezoid"`` uses ``steps`` uniform intervals per half line.
    Both rules are mirrored about t = 0.
    """

    horizon: float
    steps: int = 256
    rule: Literal["gauss-panels", "trapezoid"] = "gauss-panels"

    def __post_init__(self):
        if not self.horizon > 0:
            raise RangeError(f"time horizon must be positive, got {self.horizon}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise RangeError(f"time steps must be an integer >= 2, got {self.steps}")
        if self.rule not in ("gauss-panels", "trapezoid"):
            raise ValueError(f"unknown time rule {self.rule!r}")

    def nodes(self, first_panel: float = 0.25):
        """Return (t, w, panel_end_index) for the half line [0, T].

        ``panel_end_index[k]`` is the number of nodes lying in [0, edges[k+1]],
        which lets callers read off partial integrals at the panel edges.
        """
        T = float(self.horizon)
        if self.rule == "trapezoid":
            t = np.linspace(0.0, T, self.steps + 1)
            w = np.full_like(t, T / self.steps)
            w[0] *= 0.5
            w[-1] *= 0.5
            return t, w, np.array([t.size]), np.array([T])
        t0 = min(first_panel, T)
        npanel = max(1, int(math.ceil(math.log2(T / t0))) + 1) if T > t0 else 1
        edges = np.concatenate([[0.0], T * 2.0 ** -np.arange(npanel - 1, -1, -1, dtype=float)])
        q = max(4, self.steps // npanel)
        gx, gw = np.polynomial.legendre.leggauss(q)
        ts, ws = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            ts.append(0.5 * (a + b) + 0.5 * (b - a) * gx)
            ws.append(0.5 * (b - a) * gw)
        ends = q * np.arange(1, npanel + 1)
        return np.concatenate(ts), np.concatenate(ws), ends, edges[1:]


@dataclass(frozen=True)
class Parity:
    tag: Literal["odd", "even", "mixed"]
    defect: float


def mirror_index(n: int) -> np.ndarray:
    """Index of -x_j (or -xi_k) for the centred grid layout: j -> N - j mod N."""
    return (-np.arange(n)) % n


def parity_defects(values: np.ndarray) -> tuple[float, float]:
    """(odd-part norm, even-part norm) of samples on a centred grid."""
    fm = values[mirror_index(values.size)]
    return float(np.linalg.norm(0.5 * (values - fm))), float(np.linalg.norm(0.5 * (values + fm)))


def _require_symmetric(field: "SampledField") -> None:
    grid = field.grid
    if grid.dimension != "line" or grid.points % 2:
        raise GridError("parity operations need a symmetric line grid with an even sample count")
    x = grid.coords()
    mirrored = x[mirror_index(grid.points)]
    inner = slice(1, None)
    if not np.allclose(mirrored[inner], -x[inner], rtol=0, atol=1e-12 * grid.extent):
        raise GridError("grid is not symmetric about 0")


def parity_split(field: "SampledField"):
    """Split ``field`` into (odd, even) parts about x = 0."""
    from .spectral import SampledField

    _require_symmetric(field)
    f = field.values
    fm = f[mirror_index(f.size)]
    return (
        SampledField(0.5 * (f - fm), field.grid),
        SampledField(0.5 * (f + fm), field.grid),
    )


def classify_parity(field: "SampledField", tol: float = 1e-10) -> Parity:
    _require_symmetric(field)
    no, ne = parity_defects(field.values)
    total = math.hypot(no, ne)
    if total == 0.0:
        return Parity("odd", 0.0)
    if ne / total < tol:
        return Parity("odd", ne / total)
    if no / total < tol:
        return Parity("even", no / total)
    return Parity("mixed", min(no, ne) / total)
