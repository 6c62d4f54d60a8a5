import numpy as np
import pytest
from scipy.integrate import quad

from wellbarrier import PotentialSpec, branch_sqrt, spectrum, transform
from wellbarrier.green import (
    JostZero,
    SpectrumHit,
    apply_resolvent,
    derivative_jump,
    green_e,
    green_k,
)

from .conftest import random_energy, random_spec


def test_free_case_negative_energy(free_spec):
    # E = -1, kappa = 1: the half-line kernel -(1/kappa) sinh(kappa r_<) e^{-kappa r_>}
    e = -1.0
    for r, s in ((0.5, 1.7), (2.0, 0.3), (1.2, 1.2001)):
        want = -np.sinh(min(r, s)) * np.exp(-max(r, s))
        assert abs(green_e(free_spec, e, r, s) - want) < 1e-12


def test_symmetry_randomized():
    rng = np.random.default_rng(61)
    for _ in range(40):
        spec = random_spec(rng)
        e = random_energy(rng, spec, im_max=2.0)
        if abs(e.imag) < 1e-6:
            continue
        r, s = rng.uniform(0.1, 3 * spec.b, size=2)
        g1, g2 = green_e(spec, e, r, s), green_e(spec, e, s, r)
        assert abs(g1 - g2) <= 1e-10 * max(abs(g1), 1e-280)


def test_derivative_jump_is_c():
    rng = np.random.default_rng(62)
    for _ in range(40):
        spec = random_spec(rng)
        e = random_energy(rng, spec, im_max=2.0)
        if abs(e.imag) < 1e-6:
            continue
        s = rng.uniform(0.2 * spec.a, 2.0 * spec.b)
        jump = derivative_jump(spec, e, s)
        assert abs(jump - spec.c) < 1e-8 * spec.c


def test_resolvent_identity_three_regions(default_spec):
    spec = default_spec
    bump = transform.SmoothBump(spec.b + 0.2, spec.b + 1.8)
    for e in (complex(-3.0, 0.9), complex(5.0, 2.0), complex(5.0, -2.0)):
        r0 = spec.b + 1.0
        h = 1e-3 * spec.b
        pts = r0 + h * np.arange(-2.0, 3.0)
        g = apply_resolvent(spec, e, bump, bump.support, pts)
        d2 = (-g[4] + 16 * g[3] - 30 * g[2] + 16 * g[1] - g[0]) / (12 * h * h)
        lhs = e * g[2] + d2 / spec.c  # V = 0 at r0 > b
        assert abs(lhs - bump(r0)) < 1e-6 * abs(bump(r0))


def test_apply_resolvent_zero_input(default_spec):
    zero = lambda r: np.zeros_like(np.asarray(r, dtype=float))
    out = apply_resolvent(default_spec, 2 + 1j, zero, (2.5, 3.5), np.array([1.0, 3.0]))
    assert np.max(np.abs(out)) == 0.0


def test_free_case_convolution_oracle(free_spec):
    # E = -1: g(r) = int -sinh(r_<) e^{-r_>} f(s) ds via scipy.quad
    bump = transform.SmoothBump(1.0, 3.0)
    e = -1.0
    for r0 in (0.5, 1.7, 2.5, 4.0):
        def kernel(s):
            rl, rg = min(r0, s), max(r0, s)
            return -np.sinh(rl) * np.exp(-rg) * bump(s)
        want = quad(kernel, 1.0, 3.0, points=[r0] if 1.0 < r0 < 3.0 else None,
                    limit=200, epsabs=1e-13, epsrel=1e-12)[0]
        got = apply_resolvent(free_spec, e, bump, bump.support, r0)
        assert abs(got - want) < 1e-8 * max(abs(want), 1e-10)


def test_green_k_matches_green_e_per_quadrant(default_spec):
    spec = default_spec
    for e in (2 + 3j, 2 - 3j, -2 + 1j, -2 - 1j):
        k = branch_sqrt(spec.c * complex(e))
        if k.imag < 0:
            k = -k  # physical sheet: upper half momentum plane
        for r, s in ((1.3, 2.6), (0.4, 0.9), (3.0, 1.5)):
            ge = green_e(spec, e, r, s)
            gk = green_k(spec, k, r, s)
            assert abs(ge - gk) < 1e-10 * abs(ge)


def test_green_k_symmetry(default_spec):
    k = 1.3 + 0.8j
    assert abs(green_k(default_spec, k, 1.0, 2.5)
               - green_k(default_spec, k, 2.5, 1.0)) < 1e-14


def test_green_k_boundary_limit(default_spec):
    # k -> real axis from above reproduces the upper boundary value of green_e
    spec = default_spec
    for k0 in (1.1, 2.4):
        e0 = k0 * k0 / spec.c
        gk = green_k(spec, complex(k0, 1e-6), 1.3, 2.6)
        ge = green_e(spec, complex(e0, 1e-9), 1.3, 2.6)
        assert abs(gk - ge) < 1e-6


def test_pole_at_bound_state(well_spec):
    state = spectrum.find_bound_states(well_spec)[0]
    deltas = np.geomspace(1e-3, 1e-6, 7)
    vals = [abs(green_e(well_spec, state.energy + d, 0.7, 1.4)) for d in deltas]
    slope = np.polyfit(np.log(deltas), np.log(vals), 1)[0]
    assert abs(slope - (-1.0)) < 0.05


def test_cauchy_contour_smoke(default_spec):
    # closed contour around a spectrum-free disc integrates to ~0
    center, radius = complex(-2.0, 2.0), 0.6
    theta = 2 * np.pi * np.arange(64) / 64
    z = center + radius * np.exp(1j * theta)
    vals = np.array([green_e(default_spec, zz, 1.2, 2.2) for zz in z])
    integral = np.sum(vals * radius * np.exp(1j * theta) * 1j) * (2 * np.pi / 64)
    assert abs(integral) < 1e-8


def test_spectrum_hit_guards(well_spec):
    state = spectrum.find_bound_states(well_spec)[0]
    with pytest.raises(SpectrumHit):
        green_e(well_spec, state.energy, 1.0, 2.0)
    with pytest.raises(SpectrumHit):
        green_e(well_spec, 2.0, 1.0, 2.0)     # on the continuous spectrum


def test_jost_zero_guard(well_spec):
    state = spectrum.find_bound_states(well_spec)[0]
    with pytest.raises(JostZero):
        green_k(well_spec, 1j * state.kappa, 1.0, 2.0)
