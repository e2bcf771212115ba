"""Continuum-normalised Fourier transform and diagonal propagators on a 1D grid.

Convention: f_hat(xi) = int exp(-i x xi) f(x) dx, so that
||f_hat||^2 = 2 pi ||f||^2 and the inverse carries 1/(2 pi).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridError, RangeError
from .params import GridSpec


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SampledField:
    """Complex samples of a function on ``grid.coords()``."""

    values: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        vals = _frozen(self.values)
        if vals.ndim != 1 or vals.size != self.grid.points:
            raise GridError(f"expected {self.grid.points} samples, got shape {vals.shape}")
        object.__setattr__(self, "values", vals)

    @property
    def x(self) -> np.ndarray:
        return self.grid.coords()

    def norm_sq(self) -> float:
        return float(self.grid.spacing * np.sum(np.abs(self.values) ** 2))


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Samples of f_hat at ``grid.frequencies()`` (monotone, -xi_max .. xi_max - dxi)."""

    values: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        vals = _frozen(self.values)
        if vals.ndim != 1 or vals.size != self.grid.points:
            raise GridError(f"expected {self.grid.points} samples, got shape {vals.shape}")
        object.__setattr__(self, "values", vals)

    @property
    def xi(self) -> np.ndarray:
        return self.grid.frequencies()

    def norm_sq(self) -> float:
        return float(self.grid.freq_spacing * np.sum(np.abs(self.values) ** 2))


def sample(func, grid: GridSpec) -> SampledField:
    return SampledField(func(grid.coords()), grid)


def _check_line(grid: GridSpec) -> None:
    if grid.dimension != "line":
        raise GridError("Fourier transforms need a line grid")


# The grid puts x = 0 at index N/2; ifftshift moves it to index 0, which is
# exactly the phase reference the DFT assumes.
def fft_continuum(values: np.ndarray, dx: float) -> np.ndarray:
    return dx * np.fft.fftshift(np.fft.fft(np.fft.ifftshift(values)))


def ifft_continuum(values: np.ndarray, dx: float) -> np.ndarray:
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(values))) / dx


def forward_transform(field: SampledField) -> SpectralField:
    _check_line(field.grid)
    return SpectralField(fft_continuum(field.values, field.grid.spacing), field.grid)


def inverse_transform(spectral: SpectralField) -> SampledField:
    _check_line(spectral.grid)
    return SampledField(ifft_continuum(spectral.values, spectral.grid.spacing), spectral.grid)


def abs_power(xi: np.ndarray, p: float) -> np.ndarray:
    """|xi|**p with the xi = 0 sample set to 0 for p > 0, 1 for p == 0.

    For p < 0 the single xi = 0 sample is also given weight 0: it is a
    measure-zero point of a locally integrable multiplier.
    """
    a = np.abs(xi)
    out = np.zeros_like(a)
    nz = a > 0
    out[nz] = a[nz] ** p
    if p == 0:
        out[~nz] = 1.0
    return out


def evolution_multiplier(xi: np.ndarray, t: float, beta: float) -> np.ndarray:
    # abs_power gives 0 at xi = 0 for beta != 0, so that mode is left unchanged.
    return np.exp(-1j * t * abs_power(xi, beta))


def evolve(spectral0: SpectralField, t: float, beta: float) -> SpectralField:
    """Exact free evolution: multiply by exp(-i |xi|^beta t)."""
    return SpectralField(
        spectral0.values * evolution_multiplier(spectral0.xi, t, beta), spectral0.grid
    )


def fractional_derivative(spectral: SpectralField, alpha: float) -> SpectralField:
    """Apply |nabla|^alpha, i.e. multiply by |xi|^alpha."""
    if alpha < 0:
        raise RangeError(f"fractional derivative order must be >= 0, got {alpha}")
    if alpha == 0:
        return spectral
    return SpectralField(spectral.values * abs_power(spectral.xi, alpha), spectral.grid)


def gaussian_oracle(x, t):
    """Closed-form solution for beta = 2 and phi0 = exp(-x^2/2)."""
    z = 1.0 + 2j * np.asarray(t, dtype=float)
    return np.exp(-np.asarray(x, dtype=float) ** 2 / (2.0 * z)) / np.sqrt(z)


def embed(field: SampledField, points: int) -> SampledField:
    """Zero-pad ``field`` symmetrically onto a larger grid with the same spacing."""
    n = field.grid.points
    if points < n:
        raise GridError(f"cannot embed {n} samples into {points}")
    big = GridSpec(field.grid.spacing * points / 2.0, points, "line")
    out = np.zeros(points, dtype=complex)
    start = points // 2 - n // 2
    out[start:start + n] = field.values
    return SampledField(out, big)
