import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kato_lab.errors import GridError, RangeError
from kato_lab.params import GridSpec
from kato_lab.spectral import (
    SampledField,
    SpectralField,
    abs_power,
    embed,
    evolve,
    forward_transform,
    fractional_derivative,
    gaussian_oracle,
    inverse_transform,
    sample,
)

from conftest import odd_gauss

EPS = np.finfo(float).eps
G = GridSpec(40.0, 2048)


def test_gaussian_transform():
    F = forward_transform(sample(lambda x: np.exp(-x ** 2 / 2), G))
    xi = F.xi
    assert np.max(np.abs(F.values - math.sqrt(2 * math.pi) * np.exp(-xi ** 2 / 2))) < 1e-12


def test_odd_gaussian_transform():
    F = forward_transform(sample(odd_gauss, G))
    xi = F.xi
    want = -1j * (math.sqrt(math.pi) / 2) * xi * np.exp(-xi ** 2 / 4)
    assert np.max(np.abs(F.values - want)) < 1e-12


def test_zero_maps_to_zero():
    z = SampledField(np.zeros(G.points), G)
    assert not np.any(forward_transform(z).values)
    assert not np.any(inverse_transform(SpectralField(np.zeros(G.points), G)).values)


def test_inverse_of_gaussian_spectrum():
    F = SpectralField(math.sqrt(2 * math.pi) * np.exp(-G.frequencies() ** 2 / 2), G)
    f = inverse_transform(F)
    assert np.max(np.abs(f.values - np.exp(-G.coords() ** 2 / 2))) < 1e-12


def test_line_grid_required():
    g = GridSpec(5.0, 64, "radial")
    with pytest.raises(GridError):
        forward_transform(SampledField(np.ones(64), g))
    with pytest.raises(GridError):
        SampledField(np.ones(63), G)


def test_fields_are_immutable():
    f = sample(odd_gauss, G)
    with pytest.raises(ValueError):
        f.values[0] = 1.0


FIELDS = {
    "gauss": lambda x: np.exp(-x ** 2 / 2),
    "odd": odd_gauss,
    "hermite": lambda x: (x ** 3 - 0.5 * x) * np.exp(-x ** 2),
    "shifted": lambda x: np.exp(-(x - 2) ** 2) * np.exp(1.5j * x),
}


@pytest.mark.parametrize("name", FIELDS)
def test_plancherel_and_round_trip(name):
    f = sample(FIELDS[name], G)
    F = forward_transform(f)
    assert F.norm_sq() == pytest.approx(2 * math.pi * f.norm_sq(), rel=1e-10)
    back = inverse_transform(F)
    assert np.linalg.norm(back.values - f.values) / np.linalg.norm(f.values) < 1e-12


@pytest.mark.parametrize("beta", [0.5, 1.5, 2.0, 3.0, -0.5])
@pytest.mark.parametrize("t", [0.3, -2.0, 17.0])
def test_unitarity_elementwise(beta, t):
    F = forward_transform(sample(FIELDS["shifted"], G))
    E = evolve(F, t, beta)
    a, b = np.abs(E.values), np.abs(F.values)
    mask = b > 0
    assert np.max(np.abs(a[mask] - b[mask]) / b[mask]) <= 4 * EPS


def test_evolve_identity_at_zero():
    F = forward_transform(sample(odd_gauss, G))
    assert np.array_equal(evolve(F, 0.0, 2.0).values, F.values)


@settings(max_examples=30, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.sampled_from([1.2, 1.5, 2.0, 3.0]))
def test_group_law(t1, t2, beta):
    F = forward_transform(sample(FIELDS["gauss"], G))
    a = evolve(evolve(F, t1, beta), t2, beta).values
    b = evolve(F, t1 + t2, beta).values
    assert np.max(np.abs(a - b)) <= 1e-13 * np.max(np.abs(F.values))


@pytest.mark.parametrize("t", [0.0, 0.5, -1.3, 3.0, 5.0, -5.0])
def test_gaussian_oracle_agreement(t):
    g = GridSpec(60.0, 4096)
    F = forward_transform(sample(lambda x: np.exp(-x ** 2 / 2), g))
    phi = inverse_transform(evolve(F, t, 2.0))
    x = g.coords()
    inner = np.abs(x) <= g.extent / 2
    assert np.max(np.abs(phi.values[inner] - gaussian_oracle(x[inner], t))) < 1e-8


def test_gaussian_oracle_closed_forms():
    assert gaussian_oracle(0.0, 0.0) == 1.0
    x = np.linspace(-6, 6, 41)
    for t in (0.0, 0.7, -3.0):
        mod2 = np.abs(gaussian_oracle(x, t)) ** 2
        assert np.allclose(mod2, (1 + 4 * t * t) ** -0.5 * np.exp(-x ** 2 / (1 + 4 * t * t)), rtol=1e-14)
        xs = np.linspace(-80, 80, 20001)
        norm = np.trapezoid(np.abs(gaussian_oracle(xs, t)) ** 2, xs)
        assert norm == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_fractional_derivative_identity_and_errors():
    F = forward_transform(sample(odd_gauss, G))
    assert fractional_derivative(F, 0.0) is F
    with pytest.raises(RangeError):
        fractional_derivative(F, -0.5)


def test_fractional_derivative_second_order_stencil():
    # |nabla|^2 = -d^2/dx^2; second differences converge at O(h^2)
    errs = []
    for n in (512, 1024):
        g = GridSpec(20.0, n)
        f = sample(lambda x: np.exp(-x ** 2 / 2), g)
        d2 = inverse_transform(fractional_derivative(forward_transform(f), 2.0)).values
        v = f.values
        fd = -(np.roll(v, -1) - 2 * v + np.roll(v, 1)) / g.spacing ** 2
        errs.append(np.max(np.abs(d2 - fd)))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.02)


def test_fractional_derivative_plancherel():
    f = sample(odd_gauss, G)
    F = forward_transform(f)
    d = inverse_transform(fractional_derivative(F, 1.0))
    xi = F.xi
    want = np.sum(xi ** 2 * np.abs(F.values) ** 2) * G.freq_spacing / (2 * math.pi)
    assert d.norm_sq() == pytest.approx(want, rel=1e-12)
    # (pi/4) int xi^4 e^{-xi^2/2} dxi / (2 pi), fourth Gaussian moment 3 sqrt(2 pi)
    closed = (math.pi / 4) * 3 * math.sqrt(2 * math.pi) / (2 * math.pi)
    assert d.norm_sq() == pytest.approx(closed, rel=1e-10)


def test_abs_power_zero_mode():
    xi = np.array([-2.0, 0.0, 3.0])
    assert list(abs_power(xi, 0)) == [1.0, 1.0, 1.0]
    assert list(abs_power(xi, 2)) == [4.0, 0.0, 9.0]
    assert abs_power(xi, -1)[1] == 0.0


def test_embed_preserves_samples():
    f = sample(odd_gauss, GridSpec(10.0, 256))
    big = embed(f, 1024)
    assert big.grid.spacing == f.grid.spacing
    assert big.norm_sq() == pytest.approx(f.norm_sq(), rel=1e-15)
    assert np.allclose(big.values, odd_gauss(big.grid.coords()), atol=1e-20)
    with pytest.raises(GridError):
        embed(f, 128)
