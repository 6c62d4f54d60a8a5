import numpy as np
import pytest
from scipy.integrate import quad

from wellbarrier import PotentialSpec, branch_sqrt, coeffs
from wellbarrier.spectrum import (
    direct_normalization,
    find_bound_states,
    find_jost_zeros,
    jost,
    residue_normalization,
    rho,
    s_matrix,
    s_matrix_residue,
    theta_minus_matrix,
    theta_plus_matrix,
    tk_measure,
)

from .oracles import shooter_bound_states


def analytic_well_count(spec):
    # pure well (v2 = 0): one state per half-integer multiple of pi below sqrt(cV1) a
    z = np.sqrt(spec.c * spec.v1) * spec.a
    return sum(1 for n in range(1, 64) if (n - 0.5) * np.pi < z)


@pytest.mark.parametrize("v1,expected", [(1.0, 0), (10.0, 1), (100.0, 3)])
def test_bound_state_counts_pure_well(v1, expected):
    spec = PotentialSpec(v1=v1, v2=0.0, a=1.0, b=2.0, c=1.0)
    states = find_bound_states(spec)
    assert len(states) == expected
    assert analytic_well_count(spec) == expected
    oracle = shooter_bound_states(spec)
    assert len(oracle) == expected
    for s, ref in zip(states, oracle):
        assert abs(s.energy - ref) < 1e-8 * max(1.0, abs(ref))


def test_bound_states_default_spec(default_spec):
    states = find_bound_states(default_spec)
    oracle = shooter_bound_states(default_spec)
    assert len(states) == len(oracle)
    for s, ref in zip(states, oracle):
        assert abs(s.energy - ref) < 1e-8 * max(1.0, abs(ref))
        # each energy is a root of J3~ and sits inside (-V1, 0)
        assert -default_spec.v1 < s.energy < 0
        j3 = coeffs.tilde_j(default_spec, s.energy).c3
        assert abs(j3) < 1e-10
        assert abs(s.energy + s.kappa**2 / default_spec.c) < 1e-12


def test_energies_ascending_and_indexed():
    spec = PotentialSpec(v1=100.0, v2=0.0, a=1.0, b=2.0, c=1.0)
    states = find_bound_states(spec)
    assert [s.n for s in states] == [1, 2, 3]
    energies = [s.energy for s in states]
    assert energies == sorted(energies)


def test_residue_vs_direct_normalization(default_spec, well_spec):
    for spec in (default_spec, well_spec):
        for state in find_bound_states(spec):
            n_res = residue_normalization(spec, state)
            assert n_res > 0
            direct = direct_normalization(spec, state)
            assert direct.integral > 0
            n2_direct = 1.0 / direct.integral
            assert abs(n_res**2 - n2_direct) < 1e-6 * n2_direct
            assert direct.mismatch < 1e-6


def test_residue_methods_agree(well_spec):
    state = find_bound_states(well_spec)[0]
    res_c = s_matrix_residue(well_spec, 1j * state.kappa, method="contour")
    res_d = s_matrix_residue(well_spec, 1j * state.kappa, method="derivative")
    assert abs(res_c - res_d) < 1e-6 * abs(res_d)


def test_rho_free_case(free_spec):
    for e in (0.5, 2.0, 4.0):
        assert abs(rho(free_spec, e) - 1.0 / (np.pi * np.sqrt(e))) < 1e-13
    assert abs(rho(free_spec, 4.0) - 1.0 / (2 * np.pi)) < 1e-13


def test_rho_positive_on_dense_grid(default_spec):
    es = np.linspace(0.05, 40.0, 400)
    for e in es:
        if abs(e - default_spec.v2) < 1e-3:
            continue
        assert rho(default_spec, e) > 0


def test_theta_matrix_zero_patterns(default_spec):
    tm = theta_minus_matrix(default_spec, complex(-2.0, 0.5))
    assert tm[0, 0] == 0 and tm[1, 0] == 0
    assert tm[0, 1] != 0 and tm[1, 1] != 0
    for e in (complex(3.0, 0.4), complex(3.0, -0.4)):
        tp = theta_plus_matrix(default_spec, e)
        assert tp[0, 1] == 0 and tp[1, 1] == 0
        assert tp[0, 0] != 0 and tp[1, 0] != 0


def test_tk_positive_window(default_spec):
    want = quad(lambda e: rho(default_spec, e), 1.0, 2.0,
                epsabs=1e-13, epsrel=1e-12)[0]
    got = tk_measure(default_spec, 1.0, 2.0)
    assert abs(got - want) < 1e-4 * abs(want)


def test_tk_negative_window_bound_state(default_spec):
    state = find_bound_states(default_spec)[0]
    got = tk_measure(default_spec, state.energy - 0.25, state.energy + 0.25)
    want = state.norm_const**2
    assert abs(got - want) < 1e-4 * want


def test_tk_empty_window(default_spec):
    state = find_bound_states(default_spec)[0]
    hi = state.energy - 0.5
    got = tk_measure(default_spec, hi - 0.2, hi)
    assert abs(got) < 1e-6


def test_jost_free_case(free_spec):
    # identically 1 on the right half plane; on Re k < 0 the sin(Q1 r)
    # normalization of chi flips the sign with the Q1 branch (|J| is still 1)
    for k in (0.5, 2.0, 1.0 + 1.0j, 0.7 - 0.3j):
        assert abs(jost(free_spec, k) - 1.0) < 1e-12
    assert abs(abs(jost(free_spec, -0.7 - 0.3j)) - 1.0) < 1e-12


def test_jost_zeros_are_bound_states(default_spec):
    states = find_bound_states(default_spec)
    for s in states:
        assert abs(jost(default_spec, 1j * s.kappa)) < 1e-10
    # and a generic imaginary momentum is not a zero
    assert abs(jost(default_spec, 1j * (states[0].kappa + 0.3))) > 1e-3


def test_jost_conjugation_symmetry(default_spec):
    # real potential: conj(J4(-conj k)) = J4(k), i.e. conj(J(-conj k)) = -J(k)
    # (the -2i prefactor itself conjugates)
    rng = np.random.default_rng(77)
    for _ in range(100):
        k = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        lhs = np.conj(jost(default_spec, -np.conj(k)))
        rhs = -jost(default_spec, k)
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


def test_s_matrix_free_case(free_spec):
    for k in (0.5, 1.7, 6.0):
        assert abs(s_matrix(free_spec, k) - 1.0) < 1e-13


def test_s_matrix_unitarity(default_spec):
    rng = np.random.default_rng(88)
    for _ in range(300):
        k = rng.uniform(0.05, 12.0)
        assert abs(abs(s_matrix(default_spec, k)) - 1.0) < 1e-10


def test_s_matrix_equals_minus_j3_over_j4(default_spec):
    for k in (0.7, 1.9, 3.3):
        q = coeffs.j(default_spec, k * k / default_spec.c)
        assert abs(s_matrix(default_spec, k) + q.c3 / q.c4) < 1e-14


def test_s_matrix_high_energy_limit(default_spec):
    k = 1e3 * np.sqrt(default_spec.c * max(default_spec.v1, default_spec.v2))
    assert abs(s_matrix(default_spec, k) - 1.0) < 1e-2


def test_find_jost_zeros_free_case(free_spec):
    assert find_jost_zeros(free_spec, (0.2, 6.0, -1.5, -0.01)) == []


def test_find_jost_zeros_barrier_resonances():
    spec = PotentialSpec(v1=10.0, v2=20.0, a=1.0, b=2.0, c=1.0)
    zeros = find_jost_zeros(spec, (0.05, 8.0, -1.5, -1e-4))
    assert len(zeros) >= 2
    for z in zeros:
        assert abs(jost(spec, z)) < 1e-10
        # fourth-quadrant momenta map to lower-half (second sheet) energies
        e = z * z / spec.c
        assert e.imag < 0
    # symmetric rectangle: zeros pair as (k, -conj k)
    sym = find_jost_zeros(spec, (-8.0, 8.0, -1.5, -1e-4))
    assert len(sym) == 2 * len(zeros)
    for z in sym:
        partner = -np.conj(z)
        assert any(abs(partner - w) < 1e-8 for w in sym)


def test_spectrum_assembly(default_spec):
    # discrete part inside (-V1, 0); continuum density finite and positive
    states = find_bound_states(default_spec)
    assert all(-default_spec.v1 < s.energy < 0 for s in states)
    for e in np.linspace(0.1, 30, 100):
        if abs(e - default_spec.v2) < 5e-2:
            continue
        val = rho(default_spec, e)
        assert np.isfinite(val) and val > 0
