"""Spectral data of the Hamiltonian: bound states, continuum density, S-matrix.

The discrete spectrum sits at the zeros of the coefficient J3~ on the energy
interval (-V1, 0), equivalently at the zeros of the Jost function on the
positive imaginary momentum axis.  On (-V1, 0) the function J3~ is real, so
the search reduces to bracketing sign changes of a smooth real function of
kappa = sqrt(-c E).

Bound-state normalizations are computed two independent ways and must agree:

  * residue route:  N_n^2 = res[theta22-]_{E_n}
                          = -(c / (2 sqrt(-c E_n))) J4~(E_n) / J3~'(E_n),
  * direct route:   N_n^2 = 1 / integral of Theta~(r;E_n)^2,
                    with   integral = -i / res[S(k)]_{k_n}.

The continuum carries the density rho(E) = (1/4pi) (c/sqrt(cE)) / |J4(E)|^2,
cross-checked against the boundary-value limit of theta11+ across the cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from . import coeffs, eigenfunctions, quadrature
from .domain import PotentialSpec, branch_sqrt, wavenumbers

__all__ = [
    "BoundState",
    "DirectNormalization",
    "ScanTooCoarse",
    "DegenerateRoot",
    "RootCountMismatch",
    "find_bound_states",
    "residue_normalization",
    "direct_normalization",
    "rho",
    "theta_minus_matrix",
    "theta_plus_matrix",
    "tk_measure",
    "jost",
    "s_matrix",
    "s_matrix_residue",
    "find_jost_zeros",
]


class ScanTooCoarse(RuntimeError):
    """Bound-state scan density hit its cap without a stable root count."""


class DegenerateRoot(RuntimeError):
    """J3~' vanishes at a located root; the residue normalization is undefined."""


class RootCountMismatch(RuntimeError):
    """Argument-principle count disagrees with the refined zero list."""


@dataclass(frozen=True)
class BoundState:
    """One discrete eigenvalue: E_n = -kappa_n^2 / c, unit-norm factor N_n."""

    n: int
    energy: float
    kappa: float
    norm_const: float


class DirectNormalization(NamedTuple):
    integral: float            # int_0^inf Theta+(r;k_n)^2 dr
    minus_i_over_res_s: float  # -i / res[S(k)]_{k_n}
    mismatch: float            # relative difference of the two


# ----------------------------------------------------------------------------
# bound states


def _j3_tilde_on_axis(spec: PotentialSpec, kappas: np.ndarray) -> np.ndarray:
    """J3~ at E = -kappa^2/c, vectorized; real on (-V1, 0)."""
    e = -kappas.astype(complex) ** 2 / spec.c
    kt = branch_sqrt(-spec.c * e)
    q1t = branch_sqrt(-spec.c * (e + spec.v1))
    q2t = branch_sqrt(-spec.c * (e - spec.v2))
    return _as_array(coeffs._tilde_j(kt, q1t, q2t, spec.a, spec.b)[2])


def _as_array(x):
    return np.atleast_1d(np.asarray(x, dtype=complex))


@lru_cache(maxsize=32)
def find_bound_states(spec: PotentialSpec) -> tuple[BoundState, ...]:
    """All discrete eigenvalues, energy-ascending, with normalization constants.

    Scans kappa on (0, sqrt(c V1)) for sign changes of the real function
    J3~(-kappa^2/c), doubling the scan density until the count is stable,
    then polishes each bracket to |d kappa| < 1e-12.
    """
    kappa_max = np.sqrt(spec.c * spec.v1)
    lo, hi = 1e-8, kappa_max - 1e-8
    if hi <= lo:
        return ()

    def scan(n):
        kappas = np.linspace(lo, hi, n)
        g = _j3_tilde_on_axis(spec, kappas)
        scale = max(1.0, float(np.max(np.abs(g))))
        if float(np.max(np.abs(g.imag))) > 1e-8 * scale:
            raise RuntimeError("J3~ acquired an imaginary part on (-V1, 0)")
        gr = g.real
        brackets = [
            (kappas[i], kappas[i + 1])
            for i in range(n - 1)
            if gr[i] == 0.0 or np.sign(gr[i]) != np.sign(gr[i + 1])
        ]
        return brackets

    n = 1024
    brackets = scan(n)
    while True:
        n *= 2
        if n > 2 ** 16:
            raise ScanTooCoarse(
                f"root count not stable at scan density {n // 2}"
            )
        finer = scan(n)
        if len(finer) == len(brackets):
            brackets = finer
            break
        brackets = finer

    def g_scalar(kappa):
        return float(_j3_tilde_on_axis(spec, np.array([kappa]))[0].real)

    states = []
    for i, (ka, kb) in enumerate(brackets):
        kappa = brentq(g_scalar, ka, kb, xtol=1e-13, rtol=8.9e-16)
        energy = -kappa * kappa / spec.c
        norm = _residue_norm_at(spec, energy)
        states.append(BoundState(n=i + 1, energy=energy, kappa=kappa, norm_const=norm))
    states.sort(key=lambda s: s.energy)
    return tuple(
        BoundState(n=i + 1, energy=s.energy, kappa=s.kappa, norm_const=s.norm_const)
        for i, s in enumerate(states)
    )


def _j_tilde_at(spec: PotentialSpec, e: complex):
    wn = wavenumbers(spec, e)
    return coeffs._tilde_j(wn.k_tilde, wn.q1_tilde, wn.q2_tilde, spec.a, spec.b)


def _residue_norm_at(spec: PotentialSpec, energy: float) -> float:
    """N_n from the residue of theta22- at the root energy."""
    h = 1e-5 * max(1.0, abs(energy))
    # Richardson: D(h), D(h/2) central differences -> O(h^4)
    plus, minus = _j_tilde_at(spec, energy + h)[2], _j_tilde_at(spec, energy - h)[2]
    d1 = (plus - minus) / (2 * h)
    d2 = (_j_tilde_at(spec, energy + h / 2)[2] - _j_tilde_at(spec, energy - h / 2)[2]) / h
    j3p = (4.0 * d2 - d1) / 3.0
    j4t = _j_tilde_at(spec, energy)[3]
    # degenerate iff the slope vanishes relative to J3~'s own local magnitude
    local_scale = (abs(plus) + abs(minus)) / (2.0 * h)
    if abs(j3p) < 1e-8 * max(local_scale, 1e-300):
        raise DegenerateRoot(f"J3~' ~ 0 at E = {energy}")
    n2 = -(spec.c / (2.0 * branch_sqrt(-spec.c * energy))) * j4t / j3p
    n2 = complex(n2)
    if n2.real <= 0 or abs(n2.imag) > 1e-8 * n2.real:
        raise RuntimeError(f"residue normalization not positive at E = {energy}: {n2}")
    return float(np.sqrt(n2.real))


def residue_normalization(spec: PotentialSpec, state: BoundState) -> float:
    """N_n > 0 from the residue of the spectral function theta22- at E_n."""
    return _residue_norm_at(spec, state.energy)


def _theta_tilde_sq_integral(spec: PotentialSpec, energy: float, kappa: float) -> float:
    wave = eigenfunctions.theta_tilde(spec, energy)
    R = eigenfunctions.tail_radius(spec, kappa)
    val = quadrature.integrate_adaptive(
        lambda r: wave(r) ** 2, [0.0, spec.a, spec.b, 2 * spec.b, R], rtol=1e-12
    )
    return float(complex(val).real)


def direct_normalization(spec: PotentialSpec, state: BoundState) -> DirectNormalization:
    """Check int Theta+(r;k_n)^2 dr == -i / res[S(k)] at k_n = i kappa_n.

    Theta+(.;k_n) equals Theta~(.;E_n) (same decaying asymptotics), so the
    integral is evaluated on the tilde family; the S-matrix residue comes from
    a 64-point circle contour in the k plane.
    """
    integral = _theta_tilde_sq_integral(spec, state.energy, state.kappa)
    res = s_matrix_residue(spec, 1j * state.kappa, method="contour")
    target = complex(-1j / res)
    if abs(target.imag) > 1e-6 * max(1.0, abs(target.real)):
        raise RuntimeError(f"-i / res S not real at k = i{state.kappa}: {target}")
    mismatch = abs(integral - target.real) / abs(integral)
    return DirectNormalization(integral=integral, minus_i_over_res_s=target.real,
                               mismatch=float(mismatch))


def s_matrix_residue(spec: PotentialSpec, k_pole: complex, method: str = "contour",
                     radius: float = 1e-4, n_points: int = 64) -> complex:
    """Residue of S(k) = -J3(k)/J4(k) at a simple zero of J4.

    method "contour": trapezoid on a circle around the pole;
    method "derivative": -J3(k_pole)/J4'(k_pole) with a central difference.
    """
    if method == "derivative":
        h = 1e-6 * max(1.0, abs(k_pole))
        j4p = (_j_at_k(spec, k_pole + h)[3] - _j_at_k(spec, k_pole - h)[3]) / (2 * h)
        return complex(-_j_at_k(spec, k_pole)[2] / j4p)
    if method != "contour":
        raise ValueError(f"unknown residue method {method!r}")
    theta = 2.0 * np.pi * np.arange(n_points) / n_points
    z = k_pole + radius * np.exp(1j * theta)
    j1, j2, j3, j4 = _j_at_k(spec, z)
    s_vals = -np.asarray(j3) / np.asarray(j4)
    # (1/2pi i) * closed contour integral, dz = i * radius * e^{i theta} d theta
    vals = s_vals * radius * np.exp(1j * theta)
    return complex(quadrature.pairwise_sum(vals) / n_points)


def _j_at_k(spec: PotentialSpec, k):
    k = np.asarray(k, dtype=complex)
    q1 = branch_sqrt(k * k + spec.c * spec.v1)
    q2 = branch_sqrt(k * k - spec.c * spec.v2)
    return coeffs._j(k, q1, q2, spec.a, spec.b)


# ----------------------------------------------------------------------------
# continuum


def rho(spec: PotentialSpec, e: float) -> float:
    """Continuum spectral density (1/4pi)(c/sqrt(cE))/|J4(E)|^2 for E > 0."""
    e = float(e)
    if e <= 0:
        raise ValueError("rho is defined on the positive spectrum E > 0")
    q = coeffs.j(spec, e)
    k = branch_sqrt(spec.c * e).real
    return float((1.0 / (4.0 * np.pi)) * (spec.c / k) / abs(q.c4) ** 2)


def theta_minus_matrix(spec: PotentialSpec, e: complex) -> np.ndarray:
    """2x2 kernel matrix of the resolvent in the (sigma1, Theta~) basis, Re E < 0.

    Only the second column is populated; theta22- carries the bound-state poles.
    """
    e = complex(e)
    jt = _j_tilde_at(spec, e)
    pref = -(spec.c / branch_sqrt(-spec.c * e)) * 0.5
    return np.array([[0.0, pref], [0.0, pref * jt[3] / jt[2]]], dtype=complex)


def theta_plus_matrix(spec: PotentialSpec, e: complex) -> np.ndarray:
    """2x2 kernel matrix in the (chi, sigma2) basis for Re E > 0, Im E != 0.

    Only the first column is populated; the boundary jump of theta11+ across
    the positive axis reproduces the spectral density.
    """
    e = complex(e)
    if e.imag == 0:
        raise ValueError("theta_plus_matrix needs Im E != 0")
    wn = wavenumbers(spec, e)
    j1, j2, j3, j4 = coeffs._j(wn.k, wn.q1, wn.q2, spec.a, spec.b)
    c1, c2, c3, c4 = coeffs._c(wn.k, wn.q1, wn.q2, spec.a, spec.b)
    w = j4 * c3 - j3 * c4
    pref = (spec.c / wn.k) / 2j
    if e.imag > 0:
        t11 = pref * (-c4) / (j4 * w)
    else:
        t11 = -pref * c3 / (j3 * w)
    t21 = pref / w
    return np.array([[t11, 0.0], [t21, 0.0]], dtype=complex)


def _neville_limit(eps: np.ndarray, vals: np.ndarray) -> complex:
    t = vals.astype(complex).copy()
    n = len(t)
    for m in range(1, n):
        for i in range(n - m):
            t[i] = t[i + 1] + (t[i + 1] - t[i]) * eps[i + m] / (eps[i] - eps[i + m])
    return complex(t[0])


def _extrapolate_to_zero(eps: np.ndarray, vals: np.ndarray) -> tuple[float, float]:
    """Polynomial extrapolation of vals(eps) to eps = 0; returns (limit, residual).

    The residual compares the full extrapolant against the one obtained after
    dropping the coarsest eps, which tracks the actual extrapolation error.
    """
    full = _neville_limit(eps, vals)
    reduced = _neville_limit(eps[1:], vals[1:])
    return float(full.real), float(abs(full - reduced))


def tk_measure(spec: PotentialSpec, e1: float, e2: float,
               eps_sequence=None, tol: float = 1e-4) -> float:
    """Spectral measure of the window (e1, e2) from the boundary jump of theta.

    Positive windows integrate (1/2pi i)[theta11+(E-i eps) - theta11+(E+i eps)]
    and extrapolate eps -> 0 (limit: int rho dE).  Negative windows use
    theta22-; its poles concentrate the measure, and the result is the sum of
    N_n^2 over the enclosed bound states.  Quadrature panels are graded toward
    the enclosed poles so the Lorentzian of width eps stays resolved.
    """
    if not e1 < e2:
        raise ValueError("need e1 < e2")
    if e1 < 0 < e2:
        raise ValueError("window must lie in one spectral half-line")
    if eps_sequence is None:
        eps_sequence = np.geomspace(1e-2, 1e-5, 7)
    eps_sequence = np.asarray(sorted(eps_sequence, reverse=True), dtype=float)

    negative = e2 <= 0
    if negative:
        poles = [s.energy for s in find_bound_states(spec) if e1 < s.energy < e2]
        theta = lambda z: theta_minus_matrix(spec, z)[1, 1]
    else:
        poles = []
        theta = lambda z: theta_plus_matrix(spec, z)[0, 0]

    def window_integral(eps: float) -> float:
        breaks = {e1, e2}
        if not negative and e1 < spec.v2 < e2:
            breaks.update([spec.v2 - 1e-6, spec.v2 + 1e-6])
        for p in poles:
            delta = min(p - e1, e2 - p)
            j = 0
            while delta / 2 ** j > eps / 8 and j < 60:
                breaks.update([p - delta / 2 ** j, p + delta / 2 ** j])
                j += 1
        bp = sorted(breaks)
        # at least 64 Gauss nodes per unit window on the coarse panels
        refined = [bp[0]]
        for lo, hi in zip(bp[:-1], bp[1:]):
            extra = int(np.ceil((hi - lo) * 2.0))
            refined.extend(np.linspace(lo, hi, extra + 1)[1:])
        x, w = quadrature.panel_nodes(refined, nodes_per_panel=32)
        jump = np.array([
            (theta(complex(e, -eps)) - theta(complex(e, eps))) / (2j * np.pi)
            for e in x
        ])
        total = quadrature.pairwise_sum(w * jump)
        return complex(total).real

    vals = np.array([window_integral(eps) for eps in eps_sequence])
    limit, residual = _extrapolate_to_zero(eps_sequence, vals)
    if residual > tol * max(1.0, abs(limit)):
        raise RuntimeError(
            f"eps extrapolation residual {residual:.2e} above tolerance {tol:.2e}"
        )
    return limit


# ----------------------------------------------------------------------------
# Jost function, S-matrix, resonances


def jost(spec: PotentialSpec, k: complex) -> complex:
    """Jost function -2i J4(k), continued to the whole k plane (both energy sheets).

    Free potential: identically 1.  Zeros on the positive imaginary axis are
    the bound states; zeros in the lower half plane are resonances.
    """
    k = complex(k)
    if abs(k) < 1e-12:
        raise coeffs.SingularEnergy("jost has a pole at k = 0")
    return complex(-2j * _j_at_k(spec, k)[3])


def _jost_analytic(spec: PotentialSpec, k):
    """jost / Q1: same zeros off Q1=0, single-valued across the Q1 branch line."""
    k = np.asarray(k, dtype=complex)
    q1 = branch_sqrt(k * k + spec.c * spec.v1)
    q2 = branch_sqrt(k * k - spec.c * spec.v2)
    j4 = coeffs._j(k, q1, q2, spec.a, spec.b)[3]
    return -2j * j4 / q1


def s_matrix(spec: PotentialSpec, k: float) -> complex:
    """S(k) = -J3(k)/J4(k) on the positive momentum axis; unimodular there."""
    k = float(k)
    if k <= 0:
        raise ValueError("s_matrix is defined for k > 0")
    q = coeffs.j(spec, k * k / spec.c)
    return complex(-q.c3 / q.c4)


def _winding(spec: PotentialSpec, corners, samples_per_edge: int = 192,
             max_refine: int = 40) -> float:
    """Winding number of jost/Q1 along the rectangle boundary.

    The boundary is sampled in one vectorized sweep; any segment whose phase
    step reaches pi/2 is bisected until every step is unambiguous.
    """
    pts = []
    for p0, p1 in zip(corners, corners[1:] + corners[:1]):
        ts = np.linspace(0.0, 1.0, samples_per_edge, endpoint=False)
        pts.extend(p0 + (p1 - p0) * ts)
    pts.append(pts[0])
    pts = np.asarray(pts, dtype=complex)
    vals = _jost_analytic(spec, pts)
    if np.any(vals == 0):
        raise RootCountMismatch("zero of the Jost function on the contour")

    total = 0.0
    stack = [(pts[i], pts[i + 1], vals[i], vals[i + 1], 0)
             for i in range(len(pts) - 1)]
    while stack:
        z0, z1, f0, f1, depth = stack.pop()
        d = float(np.angle(f1 / f0))
        if abs(d) < 0.5 * np.pi:
            total += d
            continue
        if depth >= max_refine:
            raise RootCountMismatch("phase step refinement exhausted on the contour")
        zm = 0.5 * (z0 + z1)
        fm = complex(_jost_analytic(spec, zm))
        if fm == 0:
            raise RootCountMismatch("zero of the Jost function on the contour")
        stack.append((z0, zm, f0, fm, depth + 1))
        stack.append((zm, z1, fm, f1, depth + 1))
    return total / (2.0 * np.pi)


def _newton_zero(spec: PotentialSpec, z0: complex, tol: float = 1e-13,
                 itmax: int = 80) -> complex:
    z = z0
    for _ in range(itmax):
        h = 1e-7 * max(1.0, abs(z))
        f = complex(_jost_analytic(spec, z))
        d = complex(_jost_analytic(spec, z + h) - _jost_analytic(spec, z - h)) / (2 * h)
        if d == 0:
            break
        step = f / d
        z = z - step
        if abs(step) < tol * max(1.0, abs(z)):
            break
    return z


def find_jost_zeros(spec: PotentialSpec, rectangle) -> list[complex]:
    """Zeros of the Jost function inside a rectangle of the lower half k-plane.

    rectangle = (re_min, re_max, im_min, im_max), with im_max < 0 so the
    contour keeps clear of the real axis.  The boundary winding fixes the
    count; recursive subdivision isolates the zeros and Newton polishes them.
    """
    re0, re1, im0, im1 = map(float, rectangle)
    if not (re0 < re1 and im0 < im1):
        raise ValueError("degenerate rectangle")
    if im1 > -1e-6:
        raise ValueError("rectangle must avoid the real axis by more than 1e-6")

    def corners(r0, r1, i0, i1):
        return [complex(r0, i0), complex(r1, i0), complex(r1, i1), complex(r0, i1)]

    target = _winding(spec, corners(re0, re1, im0, im1))
    n_target = int(round(target))
    if abs(target - n_target) > 1e-2:
        raise RootCountMismatch(f"non-integer boundary winding {target:.4f}")
    if n_target == 0:
        return []

    zeros: list[complex] = []
    small = 0.15 * max(re1 - re0, im1 - im0, 1e-3)

    def split(r0, r1, i0, i1, count, depth):
        # offset fractions keep zeros off the split line; retried if one lands there
        for frac in (0.501, 0.463, 0.547):
            if (r1 - r0) >= (i1 - i0):
                rm = r0 + (r1 - r0) * frac
                parts = [(r0, rm, i0, i1), (rm, r1, i0, i1)]
            else:
                im = i0 + (i1 - i0) * frac
                parts = [(r0, r1, i0, im), (r0, r1, im, i1)]
            windings = []
            for part in parts:
                w = _winding(spec, corners(*part))
                n = int(round(w))
                if abs(w - n) > 1e-2:
                    break
                windings.append(n)
            if len(windings) == 2 and sum(windings) == count:
                for part, n in zip(parts, windings):
                    subdivide(*part, n, depth + 1)
                return
        raise RootCountMismatch("could not split a cell cleanly")

    def subdivide(r0, r1, i0, i1, count, depth):
        if count == 0:
            return
        if depth >= 40:
            raise RootCountMismatch("max subdivision depth reached")
        diag = max(r1 - r0, i1 - i0)
        if count == 1 and diag <= small:
            z = _newton_zero(spec, complex(0.5 * (r0 + r1), 0.5 * (i0 + i1)))
            pad = 0.5 * diag
            inside = (r0 - pad <= z.real <= r1 + pad) and (i0 - pad <= z.imag <= i1 + pad)
            if inside and abs(_jost_analytic(spec, z)) < 1e-10:
                zeros.append(z)
                return
            # Newton wandered off; keep shrinking the bracket around the zero
        split(r0, r1, i0, i1, count, depth)

    subdivide(re0, re1, im0, im1, n_target, 0)

    # dedupe and validate
    unique: list[complex] = []
    for z in sorted(zeros, key=lambda z: (z.real, z.imag)):
        if not any(abs(z - u) < 1e-8 * max(1.0, abs(u)) for u in unique):
            unique.append(z)
    boundary_scale = max(1.0, abs(jost(spec, complex(re0, im0))),
                         abs(jost(spec, complex(re1, im1))))
    good = [z for z in unique
            if abs(jost(spec, z)) < 1e-10 * boundary_scale
            and re0 < z.real < re1 and im0 < z.imag < im1]
    if len(good) != n_target:
        raise RootCountMismatch(
            f"winding {n_target} but {len(good)} refined zeros"
        )
    return good
