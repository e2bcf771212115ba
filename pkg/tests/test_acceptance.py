"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""
import math
import time

import numpy as np
import pytest

from kato_lab import oracles
from kato_lab.closed_forms import (
    funk_hecke_eigenvalue,
    kato_constant_1d,
    kato_constant_nd,
    riesz_constant,
    sphere_pair_integral,
    weight_integral,
)
from kato_lab.functionals import (
    QuadratureSpec,
    divergence_probe,
    radial_reduction_integral,
    time_integrated_density_1d,
    weighted_spacetime_integral_direct,
    weighted_spacetime_integral_fourier,
)
from kato_lab.params import DispersionParams, GridSpec, TimeSpec
from kato_lab.spectral import (
    SampledField,
    evolve,
    forward_transform,
    gaussian_oracle,
    inverse_transform,
    sample,
)

from conftest import ACCEPTANCE_LINES, ODD_NORM, even_gauss, odd_gauss

GRID = GridSpec(60.0, 4096)
QUAD = QuadratureSpec(TimeSpec(60.0))


def verdict(number, ok, text):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} | {text}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_1_identity_alpha0_beta2():
    t0 = time.perf_counter()
    f = sample(odd_gauss, GRID)
    res = weighted_spacetime_integral_direct(f, DispersionParams(1, 0.0, 2.0), QUAD)
    wall = time.perf_counter() - t0
    target = math.pi * ODD_NORM  # 0.98436...
    ratio_err = abs(res.ratio / math.pi - 1)
    value_err = abs(res.value / target - 1)
    ok = ratio_err < 1e-2 and value_err < 1e-2 and abs(f.norm_sq() / ODD_NORM - 1) < 1e-12 and wall < 120
    verdict(1, ok, f"ratio={res.ratio:.8f} (pi, rel err {ratio_err:.2e} < 1e-2), "
                   f"value={res.value:.6f} vs {target:.6f}, {wall:.1f}s < 120s")


def test_criterion_2_identity_sweep():
    t0 = time.perf_counter()
    f = sample(odd_gauss, GRID)
    F = forward_transform(f)
    worst_fourier = worst_direct = 0.0
    for a, b in ((0.0, 1.2), (0.0, 1.5), (0.0, 1.8), (0.0, 2.0), (0.25, 2.0)):
        p = DispersionParams(1, a, b)
        K = kato_constant_1d(a, b)
        four = weighted_spacetime_integral_fourier(F, p)
        direct = weighted_spacetime_integral_direct(f, p, QUAD)
        worst_fourier = max(worst_fourier, abs(four.ratio / K - 1))
        worst_direct = max(worst_direct, abs(direct.ratio / K - 1))
    wall = time.perf_counter() - t0
    ok = worst_fourier < 1e-9 and worst_direct < 1e-2 and wall < 600
    verdict(2, ok, f"fourier worst rel err {worst_fourier:.2e} < 1e-9, direct worst {worst_direct:.2e} < 1e-2, "
                   f"{wall:.1f}s < 600s")


def test_criterion_3_closed_form_oracles():
    t0 = time.perf_counter()
    worst_w = max(abs(weight_integral(s, xi) / oracles.weight_integral_quadrature(s, xi) - 1)
                  for s in (1.2, 1.5, 1.8, 2.0) for xi in (0.5, 1.0, 2.0))
    checks = {
        "riesz(3,2)=2pi^2": abs(riesz_constant(3, 2.0) / (2 * math.pi ** 2) - 1),
        "S2(3,1)=16pi^2": abs(sphere_pair_integral(3, 1.0) / (16 * math.pi ** 2) - 1),
        "lambda0=2": abs(funk_hecke_eigenvalue(3, 1.0, 0) / 2 - 1),
        "lambda1=2/3": abs(funk_hecke_eigenvalue(3, 1.0, 1) / (2 / 3) - 1),
    }
    wall = time.perf_counter() - t0
    ok = worst_w < 1e-6 and all(v < 1e-8 for v in checks.values()) and wall < 60
    detail = ", ".join(f"{k} {v:.1e}" for k, v in checks.items())
    verdict(3, ok, f"weight_integral worst {worst_w:.2e} < 1e-6; {detail} (< 1e-8); {wall:.1f}s < 60s")


def test_criterion_4_nd_anchors():
    errs = {n: abs(kato_constant_nd(n, 0.0, 2.0) / (math.pi / (n - 2)) - 1) for n in (3, 4, 5)}
    ok = all(e < 1e-8 for e in errs.values())
    verdict(4, ok, ", ".join(f"n={n} rel err {e:.1e}" for n, e in errs.items()) + " (< 1e-8)")


def test_criterion_5_harmonic_dichotomy():
    rg = GridSpec(24.0, 2048, "radial")
    prof = SampledField((2 * math.pi) ** 1.5 * np.exp(-rg.coords() ** 2 / 2), rg)
    C = kato_constant_nd(3, 0.0, 2.0)
    r0 = radial_reduction_integral(prof, 0, 3, 0.0, 2.0).ratio
    r1 = radial_reduction_integral(prof, 1, 3, 0.0, 2.0).ratio
    e0 = abs(r0 / C - 1)
    e1 = abs(r1 / (C / 3) - 1)
    ok = e0 < 1e-12 and e1 < 1e-6 and r1 < r0
    verdict(5, ok, f"l=0 ratio {r0:.15f} vs C (rel {e0:.1e}), l=1 ratio {r1:.12f} vs C/3 (rel {e1:.1e} < 1e-6), "
                   f"strictly below: {r1 < r0}")


def test_criterion_6_sup_bound():
    t0 = time.perf_counter()
    scan = np.linspace(-10.0, 10.0, 2001)
    worst = -math.inf
    odd_origin = 0.0
    data = {"even": lambda x: np.exp(-x ** 2 / 2), "odd": lambda x: x * np.exp(-x ** 2 / 2),
            "mixed": lambda x: (1 + x) * np.exp(-x ** 2)}
    for beta in (1.5, 2.0, 3.0):
        alpha = (beta - 1) / 2
        for name, fn in data.items():
            f = sample(fn, GRID)
            F = forward_transform(f)
            D = time_integrated_density_1d(F, scan, alpha, beta)
            worst = max(worst, float(D.max()) / (2 / beta * f.norm_sq()))
            if name == "odd":
                odd_origin = max(odd_origin, abs(time_integrated_density_1d(F, 0.0, alpha, beta)) / f.norm_sq())
    wall = time.perf_counter() - t0
    ok = worst <= 1 + 1e-3 and odd_origin < 1e-10 and wall < 120
    verdict(6, ok, f"max D/((2/beta)||phi0||^2) = {worst:.15f} <= 1.001, odd D(0)/||phi0||^2 = {odd_origin:.1e} "
                   f"< 1e-10, {wall:.1f}s < 120s")


@pytest.mark.parametrize("s", [1.5, 2.0])
def test_criterion_7_even_divergence(s):
    g = GridSpec(40.0, 1 << 16)
    pr = divergence_probe(sample(even_gauss, g), DispersionParams(1, 0.0, s))
    want = -(s - 1)
    ok = pr.status == "diverging" and abs(pr.slope - want) <= 0.1
    verdict(7, ok, f"s={s}: slope {pr.slope:.4f} vs {want:.1f} (|diff| {abs(pr.slope - want):.4f} <= 0.1)")


def test_criterion_8_engine_invariants():
    t0 = time.perf_counter()
    g = GRID
    fields = [sample(fn, g) for fn in (lambda x: np.exp(-x ** 2 / 2), odd_gauss,
                                       lambda x: (x ** 3 - x) * np.exp(-x ** 2 / 3),
                                       lambda x: np.exp(-(x - 3) ** 2 + 2j * x))]
    planch = trip = unit = group = 0.0
    for f in fields:
        F = forward_transform(f)
        planch = max(planch, abs(F.norm_sq() / (2 * math.pi * f.norm_sq()) - 1))
        trip = max(trip, np.linalg.norm(inverse_transform(F).values - f.values) / np.linalg.norm(f.values))
        for beta in (1.5, 2.0, 3.0):
            for t in (-3.7, 0.4, 11.0):
                E = evolve(F, t, beta)
                nz = np.abs(F.values) > 0
                unit = max(unit, float(np.max(np.abs(np.abs(E.values[nz]) / np.abs(F.values[nz]) - 1))))
                two = evolve(evolve(F, t, beta), 0.9, beta).values
                group = max(group, float(np.max(np.abs(two - evolve(F, t + 0.9, beta).values)))
                            / float(np.max(np.abs(F.values))))
    F = forward_transform(fields[0])
    x = g.coords()
    inner = np.abs(x) <= g.extent / 2
    oracle = max(float(np.max(np.abs(inverse_transform(evolve(F, t, 2.0)).values[inner] - gaussian_oracle(x[inner], t))))
                 for t in np.linspace(-5, 5, 21))
    wall = time.perf_counter() - t0
    eps = np.finfo(float).eps
    ok = planch < 1e-10 and trip < 1e-12 and unit <= 4 * eps and group < 1e-13 and oracle < 1e-8 and wall < 30
    verdict(8, ok, f"plancherel {planch:.1e} < 1e-10, round-trip {trip:.1e} < 1e-12, unitarity {unit:.1e} "
                   f"(rounding only), group law {group:.1e} < 1e-13, gaussian oracle {oracle:.1e} < 1e-8, "
                   f"{wall:.1f}s < 30s")
