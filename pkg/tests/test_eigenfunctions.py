import numpy as np
import pytest

from wellbarrier import PotentialSpec, branch_sqrt, coeffs, eigenfunctions, quadrature, spectrum
from wellbarrier.eigenfunctions import (
    bound_state_function,
    chi,
    chi_tilde,
    momentum_ket,
    phi_delta,
    sigma1_neg,
    sigma2_pos,
    theta_minus,
    theta_plus,
    theta_tilde,
    wronskian,
)

from .conftest import random_energy, random_spec
from .oracles import shoot_chi

ALL_FAMILIES = (chi, chi_tilde, theta_plus, theta_minus, theta_tilde,
                sigma1_neg, sigma2_pos)


def test_free_case_values(free_spec):
    w = chi(free_spec, 1.0)
    assert abs(w(np.pi / 2) - 1.0) < 1e-14          # sin(pi/2)
    w = theta_plus(free_spec, 4.0)                   # k = 2
    assert abs(w(1.0) - np.exp(2j)) < 1e-14
    w = sigma2_pos(free_spec, 1.0)
    assert abs(w(0.0) - 1.0) < 1e-14                 # cos(0); does not vanish at 0


def test_boundary_conditions_at_origin(default_spec):
    for e in (3.0, -2.0, 2.0 + 1.0j):
        assert abs(chi(default_spec, e)(0.0)) < 1e-14
        assert abs(chi_tilde(default_spec, e)(0.0)) < 1e-14
        assert abs(sigma2_pos(default_spec, e)(0.0) - 1.0) < 1e-12


def test_c1_matching_all_families():
    rng = np.random.default_rng(21)
    for _ in range(30):
        spec = random_spec(rng)
        e = random_energy(rng, spec)
        for ctor in ALL_FAMILIES:
            wave = ctor(spec, e)
            for x in (spec.a, spec.b):
                for order in (0, 1):
                    left = wave.derivative(x * (1 - 1e-13), order)
                    right = wave.derivative(x * (1 + 1e-13), order)
                    scale = max(abs(left), abs(right), 1e-12)
                    assert abs(left - right) / scale < 1e-8, (ctor.__name__, x, order)


def test_ode_residual_all_families(default_spec):
    spec = default_spec
    for e in (3.0, -2.5, 1.5 + 0.8j, 7.0 - 1.2j):
        for ctor in ALL_FAMILIES:
            wave = ctor(spec, e)
            for lo, hi, v0 in ((0.0, spec.a, -spec.v1), (spec.a, spec.b, spec.v2),
                               (spec.b, 2.5 * spec.b, 0.0)):
                width = hi - lo
                r = np.linspace(lo + 0.02 * width, hi - 0.02 * width, 1000)
                h = 0.005 * width
                stencil = (-wave(r + 2 * h) + 16 * wave(r + h) - 30 * wave(r)
                           + 16 * wave(r - h) - wave(r - 2 * h)) / (12 * h * h)
                resid = -stencil / spec.c + (v0 - e) * wave(r)
                scale = (1 + abs(e) + spec.v1 + spec.v2) * np.max(np.abs(wave(r)))
                assert np.max(np.abs(resid)) < 1e-6 * scale, ctor.__name__


def test_chi_matches_shooter_fixed_point(default_spec):
    val = chi(default_spec, 3.0)(1.5)
    ref = shoot_chi(default_spec, 3.0, 1.5)
    assert abs(val - ref) < 1e-8 * max(1.0, abs(ref))


def test_chi_matches_shooter_randomized():
    rng = np.random.default_rng(2468)
    for _ in range(25):
        spec = random_spec(rng)
        e = complex(rng.uniform(-0.8 * spec.v1, 3 * (spec.v1 + spec.v2)),
                    rng.choice([0.0, rng.uniform(-2, 2)]))
        if min(abs(e), abs(e - spec.v2), abs(e + spec.v1)) < 1e-2:
            continue
        r_pts = rng.uniform(0.1 * spec.a, 2.5 * spec.b, size=4)
        vals = chi(spec, e)(r_pts) if e.imag else chi(spec, e.real)(r_pts)
        refs = shoot_chi(spec, e if e.imag else e.real, r_pts)
        scale = max(1.0, float(np.max(np.abs(refs))))
        assert np.max(np.abs(vals - refs)) < 1e-8 * scale


def test_reality_of_chi(default_spec):
    r = np.linspace(0.0, 3 * default_spec.b, 400)
    # above the barrier and inside the barrier window, separately
    for e in (default_spec.v2 + 3.0, 0.5 * default_spec.v2):
        vals = chi(default_spec, e)(r)
        assert np.max(np.abs(vals.imag)) < 1e-12 * np.max(np.abs(vals.real))


def test_wronskian_identities(default_spec):
    rng = np.random.default_rng(31)
    for _ in range(20):
        spec = random_spec(rng)
        # right half plane with moderate Im E: at 3b the e^{2 Im(k) r}
        # amplification must stay small enough for float64 to resolve the
        # constancy at 1e-10 (Re E < 0 is covered by the tilde families below)
        e = random_energy(rng, spec, allow_negative=False, im_max=1.0)
        k = branch_sqrt(spec.c * e)
        c_wave = chi(spec, e)
        t_wave = theta_plus(spec, e)
        j4 = coeffs.j(spec, e).c4
        expected = 2j * k * j4
        radii = [0.1 * spec.a, 0.6 * spec.a, 0.5 * (spec.a + spec.b), spec.b, 3 * spec.b]
        vals = [wronskian(c_wave, t_wave, r) for r in radii]
        for v in vals:
            assert abs(v - vals[0]) < 1e-10 * max(abs(vals[0]), 1e-12)
        assert abs(vals[0] - expected) < 1e-10 * abs(expected)
        assert abs(wronskian(c_wave, c_wave, 1.0)) < 1e-14 * max(1.0, abs(expected))


def test_wronskian_tilde_families_negative_energies():
    # W(chi~, Theta~) = -2 k~ J3~, constant in r, on the left half plane
    rng = np.random.default_rng(32)
    for _ in range(20):
        spec = random_spec(rng)
        e = complex(rng.uniform(-0.9 * spec.v1, -0.05), rng.uniform(-1.0, 1.0))
        if abs(e + spec.v1) < 1e-2:
            continue
        kt = branch_sqrt(-spec.c * e)
        ct = chi_tilde(spec, e)
        tt = theta_tilde(spec, e)
        expected = -2.0 * kt * coeffs.tilde_j(spec, e).c3
        radii = [0.1 * spec.a, 0.5 * (spec.a + spec.b), spec.b, 3 * spec.b]
        vals = [wronskian(ct, tt, r) for r in radii]
        for v in vals:
            assert abs(v - expected) < 1e-10 * max(abs(expected), 1e-12)


def test_wronskian_free_case(free_spec):
    # W(sin kr, e^{ikr}) = -k, consistent with 2ik J4 = 2ik (i/2)
    e, k = 4.0, 2.0
    val = wronskian(chi(free_spec, e), theta_plus(free_spec, e), 1.3)
    assert abs(val - (-k)) < 1e-13


def test_phi_delta_free_case(free_spec):
    e = 2.0
    k = np.sqrt(e)
    for r in (0.5, 2.0, 6.0):
        want = np.sin(k * r) / np.sqrt(np.pi * k)
        assert abs(phi_delta(free_spec, e, r) - want) < 1e-13
    assert phi_delta(free_spec, e, 0.0) == 0.0


def test_phi_delta_against_shooter(default_spec):
    e = 3.0
    q = coeffs.j(default_spec, e)
    k = branch_sqrt(default_spec.c * e).real
    rho = (1 / (4 * np.pi)) * (default_spec.c / k) / abs(q.c4) ** 2
    ref = np.sqrt(rho) * shoot_chi(default_spec, e, 5.0)
    assert abs(phi_delta(default_spec, e, 5.0) - ref) < 1e-8


def test_momentum_ket_free_case(free_spec):
    k = 1.7
    for r in (0.4, 1.1, 3.0):
        want = np.sqrt(2 / np.pi) * np.sin(k * r)
        assert abs(momentum_ket(free_spec, k, r) - want) < 1e-13
    assert momentum_ket(free_spec, k, 0.0) == 0.0


def test_momentum_ket_measure_relation(default_spec):
    # |<r|k>|^2 dk-measure equals |phi(r;E)|^2 dE-measure under E = k^2/c
    rng = np.random.default_rng(8)
    for _ in range(40):
        k = rng.uniform(0.3, 8.0)
        r = rng.uniform(0.2, 5.0)
        e = k * k / default_spec.c
        if abs(e - default_spec.v2) < 1e-2:
            continue
        lhs = momentum_ket(default_spec, k, r) ** 2
        rhs = phi_delta(default_spec, e, r) ** 2 * (2 * k / default_spec.c)
        assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(rhs))


def test_bound_state_function_unit_norm(well_spec):
    states = spectrum.find_bound_states(well_spec)
    assert len(states) == 1
    phi1 = bound_state_function(well_spec, states[0])
    assert abs(phi1(0.0)) < 1e-8
    R = eigenfunctions.tail_radius(well_spec, states[0].kappa)
    norm = quadrature.integrate_adaptive(
        lambda r: np.abs(phi1(r)) ** 2,
        [0.0, well_spec.a, well_spec.b, R], rtol=1e-12)
    assert abs(norm - 1.0) < 1e-6


def test_bound_state_orthogonality():
    spec = PotentialSpec(v1=30.0, v2=0.0, a=1.0, b=2.0, c=1.0)
    states = spectrum.find_bound_states(spec)
    assert len(states) == 2
    fns = [bound_state_function(spec, s) for s in states]
    R = eigenfunctions.tail_radius(spec, min(s.kappa for s in states))
    for i in range(2):
        for j in range(2):
            val = quadrature.integrate_adaptive(
                lambda r: fns[i](r) * fns[j](r),
                [0.0, spec.a, spec.b, R], rtol=1e-12)
            assert abs(val - (1.0 if i == j else 0.0)) < 1e-6


def test_pure_well_bound_shape():
    # near-degenerate barrier: the single bound function is sin-like inside,
    # exponential outside
    spec = PotentialSpec(v1=10.0, v2=0.0, a=1.0, b=1.0 + 1e-9, c=1.0)
    states = spectrum.find_bound_states(spec)
    assert len(states) == 1
    phi1 = bound_state_function(spec, states[0])
    kappa = states[0].kappa
    q1 = np.sqrt(spec.c * (states[0].energy + spec.v1))
    inner_ratio = phi1(0.4) / np.sin(q1 * 0.4)
    assert abs(phi1(0.8) / np.sin(q1 * 0.8) - inner_ratio) < 1e-8 * abs(inner_ratio)
    outer_ratio = phi1(2.0) / np.exp(-kappa * 2.0)
    assert abs(phi1(3.5) / np.exp(-kappa * 3.5) - outer_ratio) < 1e-8 * abs(outer_ratio)
