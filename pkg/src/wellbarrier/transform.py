"""Diagonalizing transforms, eigenfunction expansions and test-function machinery.

The Hilbert space splits into a bound sector (N coefficients against the
unit-norm eigenfunctions phi_n) and a continuum sector carried by the
delta-normalized eigenfunction phi(r;E) = sqrt(rho(E)) chi(r;E):

    forward:   c_n = (phi_n, f),   fhat(E) = int f(r) phi(r;E) dr
    inverse:   f(r) = sum c_n phi_n(r) + int fhat(E) phi(r;E) dE.

Continuum integrals substitute E = k^2/c (dE = 2k/c dk), which removes the
integrable 1/sqrt(E) threshold factor of rho; the grid is Gauss-Legendre in k.

Test functions for the dense-subspace checks are C-infinity bumps

    q(t) = exp(-1/(1-t^2)) on |t| < 1,  0 outside,

rescaled to supports strictly inside (0,a) or (b, inf), so every derivative
vanishes identically at r = 0, a, b.  Their derivatives are closed-form:
q' = g' q with g = -1/(1-t^2) and

    g^(j)(t) = -(j!/2) [ (1-t)^-(j+1) + (-1)^j (1+t)^-(j+1) ],

so q^(n) follows from the Leibniz recurrence; the operator h and its powers
are applied analytically (the potential is constant on each bump's support).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

import numpy as np

from . import coeffs, eigenfunctions, quadrature, spectrum
from .domain import PotentialSpec, branch_sqrt

__all__ = [
    "ContinuumGrid",
    "DecomposedState",
    "SmoothBump",
    "MembershipReport",
    "default_grid",
    "energy_grid",
    "radial_nodes",
    "apply_h",
    "forward_bound",
    "forward_continuum",
    "inverse_continuum",
    "decompose",
    "reconstruct",
    "parseval",
    "matrix_element_h_power",
    "phi_membership",
    "norm_nm",
    "functional_bound_check",
    "momentum_forward",
]


# ----------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class ContinuumGrid:
    """Gauss-Legendre nodes in k on (0, k_max); dE weights include the 2k/c factor."""

    k: np.ndarray
    wk: np.ndarray
    e: np.ndarray
    we: np.ndarray
    k_max: float
    label: str = "k-gauss-legendre"


def energy_grid(spec: PotentialSpec, k_max: float | None = None,
                nodes: int = 2048) -> ContinuumGrid:
    if k_max is None:
        k_max = max(12.0, 6.0 * np.sqrt(spec.c * (spec.v1 + spec.v2))) / min(1.0, spec.a)
    x, w = quadrature.gauss_nodes(nodes)
    k = 0.5 * k_max * (x + 1.0)
    wk = 0.5 * k_max * w
    e = k * k / spec.c
    we = wk * 2.0 * k / spec.c
    return ContinuumGrid(k=k, wk=wk, e=e, we=we, k_max=float(k_max))


@lru_cache(maxsize=16)
def default_grid(spec: PotentialSpec) -> ContinuumGrid:
    return energy_grid(spec)


def radial_nodes(spec: PotentialSpec, support, k_max: float):
    """Quadrature nodes over a support interval, split at the potential steps
    and fine enough for oscillations up to k_max."""
    lo, hi = map(float, support)
    cuts = sorted({lo, hi} | {x for x in (spec.a, spec.b) if lo < x < hi})
    breaks: list[float] = [cuts[0]]
    for c0, c1 in zip(cuts[:-1], cuts[1:]):
        breaks.extend(quadrature.oscillation_panels(c0, c1, k_max)[1:])
    return quadrature.panel_nodes(breaks, nodes_per_panel=32)


# ----------------------------------------------------------------------------
# vectorized eigenfunction rows


def _chi_rows(spec: PotentialSpec, e: np.ndarray, r: np.ndarray):
    """chi(r;E) for a vector of positive energies on a vector of radii: (nE, nR)."""
    e = np.asarray(e, dtype=complex)
    k = branch_sqrt(spec.c * e)
    q1 = branch_sqrt(spec.c * (e + spec.v1))
    q2 = branch_sqrt(spec.c * (e - spec.v2))
    j1, j2, j3, j4 = coeffs._j(k, q1, q2, spec.a, spec.b)
    out = np.empty((len(e), len(r)), dtype=complex)
    m_in = r <= spec.a
    m_mid = (r > spec.a) & (r <= spec.b)
    m_out = r > spec.b
    if m_in.any():
        out[:, m_in] = np.sin(np.outer(q1, r[m_in]))
    if m_mid.any():
        ph = np.outer(q2, r[m_mid])
        out[:, m_mid] = j1[:, None] * np.exp(1j * ph) + j2[:, None] * np.exp(-1j * ph)
    if m_out.any():
        ph = np.outer(k, r[m_out])
        out[:, m_out] = j3[:, None] * np.exp(1j * ph) + j4[:, None] * np.exp(-1j * ph)
    return out, k, j3, j4


def _phi_rows(spec: PotentialSpec, e: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Delta-normalized phi(r;E) = sqrt(rho) chi; real for E > 0."""
    rows, k, j3, j4 = _chi_rows(spec, e, r)
    rho = (1.0 / (4.0 * np.pi)) * (spec.c / k.real) / np.abs(j4) ** 2
    return (np.sqrt(rho)[:, None] * rows).real


def _ket_rows(spec: PotentialSpec, k_nodes: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Momentum kets <r|k> = [2 pi J3 J4]^{-1/2} chi(r;k); real for k > 0."""
    e = np.asarray(k_nodes, dtype=complex) ** 2 / spec.c
    rows, k, j3, j4 = _chi_rows(spec, e, r)
    pref = 1.0 / np.sqrt(2.0 * np.pi * (j3 * j4).real)
    return (pref[:, None] * rows).real


# ----------------------------------------------------------------------------
# smooth compactly supported test functions


@dataclass(frozen=True)
class SmoothBump:
    """C-infinity bump on (lo, hi); all derivatives vanish outside the open interval."""

    lo: float
    hi: float
    amplitude: float = 1.0

    @property
    def support(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def __call__(self, r):
        return self.deriv(r, 0)

    def deriv(self, r, order: int = 1):
        r_arr = np.atleast_1d(np.asarray(r, dtype=float))
        half = 0.5 * (self.hi - self.lo)
        mid = 0.5 * (self.hi + self.lo)
        t = (r_arr - mid) / half
        inside = np.abs(t) < 1.0
        out = np.zeros(r_arr.shape, dtype=float)
        if inside.any():
            ti = t[inside]
            q = np.exp(-1.0 / (1.0 - ti * ti))
            derivs = [q]
            for n in range(order):
                # q^(n+1) = sum_j C(n,j) g^(j+1) q^(n-j)
                nxt = np.zeros_like(q)
                for jj in range(n + 1):
                    nxt += comb(n, jj) * _bump_g_deriv(ti, jj + 1) * derivs[n - jj]
                derivs.append(nxt)
            out[inside] = derivs[order] / half ** order
        out *= self.amplitude
        if np.isscalar(r) or np.asarray(r).ndim == 0:
            return float(out[0])
        return out


def _bump_g_deriv(t: np.ndarray, j: int) -> np.ndarray:
    """j-th derivative of g(t) = -1/(1-t^2) via partial fractions."""
    fact = float(factorial(j))
    return -(fact / 2.0) * ((1.0 - t) ** -(j + 1) + (-1.0) ** j * (1.0 + t) ** -(j + 1))


def apply_h(spec: PotentialSpec, f, r, m: int = 1):
    """h^m f pointwise, with analytic derivatives of f.

    Valid wherever the potential is constant on a neighborhood (everywhere off
    the steps a, b; test functions whose support avoids the steps are exact):
    h^m = sum_j C(m,j) V0^{m-j} (-1/c)^j d^{2j}.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    v0 = np.where(r_arr < spec.a, -spec.v1, np.where(r_arr < spec.b, spec.v2, 0.0))
    out = np.zeros(r_arr.shape, dtype=complex)
    for jj in range(m + 1):
        term = comb(m, jj) * (-1.0 / spec.c) ** jj * np.asarray(f.deriv(r_arr, 2 * jj))
        out += v0 ** (m - jj) * term
    if np.isscalar(r) or np.asarray(r).ndim == 0:
        return complex(out[0])
    return out


def _apply_h_plus_one(spec: PotentialSpec, f, r, m: int):
    out = np.zeros(np.atleast_1d(r).shape, dtype=complex)
    for i in range(m + 1):
        out += comb(m, i) * np.atleast_1d(apply_h(spec, f, r, i))
    return out


# ----------------------------------------------------------------------------
# the transforms


def forward_bound(spec: PotentialSpec, states, f) -> np.ndarray:
    """Coefficients c_n = int conj(phi_n) f dr for every located bound state."""
    lo, hi = f.support
    cuts = sorted({lo, hi} | {x for x in (spec.a, spec.b) if lo < x < hi})
    out = np.empty(len(states), dtype=complex)
    for i, state in enumerate(states):
        phi_n = eigenfunctions.bound_state_function(spec, state)
        out[i] = quadrature.integrate_adaptive(
            lambda r: np.conj(phi_n(r)) * np.asarray(f(r)), cuts, rtol=1e-12)
    return out


def forward_continuum(spec: PotentialSpec, f, grid: ContinuumGrid | None = None) -> np.ndarray:
    """fhat(E) on the grid nodes: int f(r) conj(phi(r;E)) dr."""
    grid = grid or default_grid(spec)
    r, w = radial_nodes(spec, f.support, grid.k_max)
    fw = np.asarray(f(r)) * w
    out = np.empty(len(grid.e), dtype=complex)
    for start in range(0, len(grid.e), 1024):
        rows = _phi_rows(spec, grid.e[start:start + 1024], r)
        out[start:start + 1024] = rows @ fw
    return out


def inverse_continuum(spec: PotentialSpec, fhat, grid: ContinuumGrid | None = None,
                      r=None) -> np.ndarray:
    """f_c(r) = int fhat(E) phi(r;E) dE on the output points r."""
    grid = grid or default_grid(spec)
    fhat = np.asarray(fhat, dtype=complex)
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    amp = grid.we * fhat
    out = np.empty(r_arr.shape, dtype=complex)
    for start in range(0, len(r_arr), 512):
        block = r_arr[start:start + 512]
        rows = _phi_rows(spec, grid.e, block)
        out[start:start + 512] = amp @ rows
    if np.isscalar(r) or np.asarray(r).ndim == 0:
        return complex(out[0])
    return out


@dataclass(frozen=True)
class DecomposedState:
    """Image of a state under the diagonalizing map: bound coefficients plus
    a sampled continuum amplitude on the energy grid."""

    bound: tuple[complex, ...]
    continuum: np.ndarray = field(repr=False)
    grid: ContinuumGrid = field(repr=False)

    def norm_squared(self) -> float:
        disc = sum(abs(c) ** 2 for c in self.bound)
        cont = quadrature.pairwise_sum(self.grid.we * np.abs(self.continuum) ** 2)
        return float(disc + cont)

    def to_json_dict(self) -> dict:
        return {
            "bound": [
                {"n": i + 1, "re": c.real, "im": c.imag}
                for i, c in enumerate(self.bound)
            ],
            "continuum": {
                "grid": self.grid.label,
                "k_max": self.grid.k_max,
                "nodes": [
                    {"e": float(e), "re": float(v.real), "im": float(v.imag)}
                    for e, v in zip(self.grid.e, self.continuum)
                ],
            },
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)


def decompose(spec: PotentialSpec, f, grid: ContinuumGrid | None = None) -> DecomposedState:
    grid = grid or default_grid(spec)
    states = spectrum.find_bound_states(spec)
    bound = forward_bound(spec, states, f)
    cont = forward_continuum(spec, f, grid)
    return DecomposedState(bound=tuple(complex(c) for c in bound), continuum=cont, grid=grid)


def reconstruct(spec: PotentialSpec, state: DecomposedState, r) -> np.ndarray:
    """sum c_n phi_n(r) + int fhat(E) phi(r;E) dE."""
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    out = np.asarray(inverse_continuum(spec, state.continuum, state.grid, r_arr),
                     dtype=complex)
    for c, bs in zip(state.bound, spectrum.find_bound_states(spec)):
        out += c * eigenfunctions.bound_state_function(spec, bs)(r_arr)
    if np.isscalar(r) or np.asarray(r).ndim == 0:
        return complex(out[0])
    return out


def _overlap(spec: PotentialSpec, f, g, k_max: float) -> complex:
    lo = min(f.support[0], g.support[0])
    hi = max(f.support[1], g.support[1])
    r, w = radial_nodes(spec, (lo, hi), k_max)
    return complex(quadrature.pairwise_sum(w * np.conj(f(r)) * np.asarray(g(r))))


def parseval(spec: PotentialSpec, f, g, grid: ContinuumGrid | None = None):
    """(f, g) against its eigenfunction-expansion form; returns (lhs, rhs, mismatch)."""
    grid = grid or default_grid(spec)
    lhs = _overlap(spec, f, g, grid.k_max)
    df = decompose(spec, f, grid)
    dg = df if g is f else decompose(spec, g, grid)
    rhs = sum(np.conj(cf) * cg for cf, cg in zip(df.bound, dg.bound))
    rhs += quadrature.pairwise_sum(grid.we * np.conj(df.continuum) * dg.continuum)
    rhs = complex(rhs)
    scale = max(abs(lhs), abs(rhs), 1e-30)
    return lhs, rhs, abs(lhs - rhs) / scale


def matrix_element_h_power(spec: PotentialSpec, f, g, m: int,
                           grid: ContinuumGrid | None = None):
    """(f, h^m g) against sum E_n^m (...) + int E^m (...); returns (lhs, rhs, mismatch)."""
    grid = grid or default_grid(spec)
    lhs_lo = min(f.support[0], g.support[0])
    lhs_hi = max(f.support[1], g.support[1])
    rf, wf = radial_nodes(spec, (lhs_lo, lhs_hi), grid.k_max)
    lhs = complex(quadrature.pairwise_sum(
        wf * np.conj(f(rf)) * _apply_h_times(spec, g, rf, m)))
    df = decompose(spec, f, grid)
    dg = df if g is f else decompose(spec, g, grid)
    states = spectrum.find_bound_states(spec)
    rhs = sum(
        (s.energy ** m) * np.conj(cf) * cg
        for s, cf, cg in zip(states, df.bound, dg.bound)
    )
    rhs += quadrature.pairwise_sum(
        grid.we * (grid.e ** m) * np.conj(df.continuum) * dg.continuum)
    rhs = complex(rhs)
    scale = max(abs(lhs), abs(rhs), 1e-30)
    return lhs, rhs, abs(lhs - rhs) / scale


def _apply_h_times(spec: PotentialSpec, f, r, m: int):
    return np.atleast_1d(apply_h(spec, f, r, m)) if m > 0 else np.asarray(f(r), dtype=complex)


# ----------------------------------------------------------------------------
# dense-subspace (test-function) checks


@dataclass(frozen=True)
class MembershipReport:
    """Per-condition verdicts for membership in the continuum test-function space."""

    origin_conditions: dict        # m -> bool:  h^m f vanishes at r = 0
    step_conditions: dict          # (point, n) -> bool:  f^(n)(a) = f^(n)(b) = 0
    norm_finiteness: dict          # (n, m) -> bool: ||f||_{n,m} finite
    norms: dict                    # (n, m) -> float

    @property
    def passes(self) -> bool:
        return (all(self.origin_conditions.values())
                and all(self.step_conditions.values())
                and all(self.norm_finiteness.values()))


def phi_membership(spec: PotentialSpec, f, n_max: int = 3, m_max: int = 2) -> MembershipReport:
    """Report-only check of the conditions carving the continuum test space:
    h^m f(0) = 0, flatness of f at the steps a and b, finite weighted norms."""
    lo, hi = f.support
    sample = np.linspace(lo, hi, 513)[1:-1]
    origin, steps, finite, norms = {}, {}, {}, {}
    for m in range(m_max + 1):
        scale = float(np.max(np.abs(_apply_h_times(spec, f, sample, m)))) or 1.0
        val = abs(complex(np.atleast_1d(_apply_h_times(spec, f, np.array([0.0]), m))[0]))
        origin[m] = bool(val <= 1e-9 * scale)
    for point, tag in ((spec.a, "a"), (spec.b, "b")):
        for n in range(n_max + 1):
            scale = float(np.max(np.abs(f.deriv(sample, n)))) or 1.0
            val = abs(float(np.atleast_1d(f.deriv(np.array([point]), n))[0]))
            steps[(tag, n)] = bool(val <= 1e-9 * scale)
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            try:
                v = norm_nm(spec, f, n, m)
            except ValueError:
                v = float("nan")
            norms[(n, m)] = v
            finite[(n, m)] = bool(np.isfinite(v))
    return MembershipReport(origin, steps, finite, norms)


def norm_nm(spec: PotentialSpec, f, n: int, m: int) -> float:
    """Weighted norm sqrt( int |(1+r)^n (h+1)^m f|^2 dr ), h applied analytically."""
    lo, hi = f.support
    cuts = sorted({lo, hi} | {x for x in (spec.a, spec.b) if lo < x < hi})

    def integrand(r):
        vals = _apply_h_plus_one(spec, f, r, m)
        return (1.0 + np.atleast_1d(r)) ** (2 * n) * np.abs(vals) ** 2

    val = quadrature.integrate_adaptive(integrand, cuts, rtol=1e-12)
    val = float(np.real(val))
    if not np.isfinite(val) or val < 0:
        raise ValueError(f"norm ({n},{m}) not finite at the requested resolution")
    return float(np.sqrt(val))


def functional_bound_check(spec: PotentialSpec, f, e: float):
    """|<f|E>| against M(E) ||f||_{1,0} with M(E) an upper bound for sup |phi(r;E)|."""
    e = float(e)
    grid_k = branch_sqrt(spec.c * e).real
    r, w = radial_nodes(spec, f.support, grid_k + 1.0)
    phi_vals = _phi_rows(spec, np.array([e]), r)[0]
    lhs = abs(complex(quadrature.pairwise_sum(w * np.conj(np.asarray(f(r))) * phi_vals)))
    # sup estimate: dense grid to b, plus the exact amplitude bound outside
    r_dense = np.linspace(0.0, spec.b, 4097)
    dense_max = float(np.max(np.abs(_phi_rows(spec, np.array([e]), r_dense)[0])))
    q = coeffs.j(spec, e)
    rho = (1.0 / (4.0 * np.pi)) * (spec.c / grid_k) / abs(q.c4) ** 2
    outer_max = float(np.sqrt(rho) * (abs(q.c3) + abs(q.c4)))
    m_of_e = max(dense_max, outer_max)
    rhs = m_of_e * norm_nm(spec, f, 1, 0)
    return lhs, rhs


def momentum_forward(spec: PotentialSpec, f, k_grid=None,
                     grid: ContinuumGrid | None = None) -> np.ndarray:
    """fhat(k) = int f(r) conj(<r|k>) dr on the momentum nodes."""
    grid = grid or default_grid(spec)
    k_nodes = np.asarray(k_grid, dtype=float) if k_grid is not None else grid.k
    r, w = radial_nodes(spec, f.support, float(np.max(k_nodes)))
    fw = np.asarray(f(r)) * w
    out = np.empty(len(k_nodes), dtype=complex)
    for start in range(0, len(k_nodes), 1024):
        rows = _ket_rows(spec, k_nodes[start:start + 1024], r)
        out[start:start + 1024] = rows @ fw
    return out
