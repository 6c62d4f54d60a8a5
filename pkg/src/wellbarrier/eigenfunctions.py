"""Evaluable piecewise solutions of h u = E u.

Every family is stored in the uniform shape

    u(r) = A e^{w r} + B e^{-w r}       per region,

with a region-specific complex exponent w (w = i*Q for oscillatory regions,
w = Q~ for evanescent ones).  Derivatives of any order are then analytic:

    u^(n)(r) = w^n (A e^{w r} + (-1)^n B e^{-w r}),

which keeps Wronskians exact up to rounding.  At the region boundaries
r = a, b the left-region formula is used (both sides agree by construction).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import coeffs
from .domain import PotentialSpec, branch_sqrt, wavenumbers

if TYPE_CHECKING:
    from .spectrum import BoundState

__all__ = [
    "PiecewiseWave",
    "BoundStateFunction",
    "chi",
    "chi_tilde",
    "theta_plus",
    "theta_minus",
    "theta_tilde",
    "sigma1_neg",
    "sigma2_pos",
    "chi_k",
    "f_of_k",
    "phi_delta",
    "momentum_ket",
    "bound_state_function",
    "wronskian",
    "tail_radius",
]


@dataclass(frozen=True)
class PiecewiseWave:
    """A three-region solution; immutable, evaluation is pure.

    regions holds ((A, B, w) inner, middle, outer) for u = A e^{wr} + B e^{-wr}.
    """

    spec: PotentialSpec
    param: complex          # energy, or momentum for the k-parameterized families
    family: str
    regions: tuple[tuple[complex, complex, complex], ...]

    def __call__(self, r):
        return self.derivative(r, 0)

    def derivative(self, r, order: int = 1):
        scalar = np.isscalar(r) or np.asarray(r).ndim == 0
        r_arr = np.atleast_1d(np.asarray(r, dtype=float))
        a, b = self.spec.a, self.spec.b
        out = np.empty(r_arr.shape, dtype=complex)
        masks = (r_arr <= a, (r_arr > a) & (r_arr <= b), r_arr > b)
        for mask, (ca, cb, w) in zip(masks, self.regions):
            if not mask.any():
                continue
            rm = r_arr[mask]
            out[mask] = (w ** order) * (
                ca * np.exp(w * rm) + (-1) ** order * cb * np.exp(-w * rm)
            )
        if scalar:
            return complex(out[0])
        return out


def _wave(spec, param, family, inner, middle, outer) -> PiecewiseWave:
    return PiecewiseWave(spec, complex(param), family, (inner, middle, outer))


def chi(spec: PotentialSpec, e) -> PiecewiseWave:
    """Regular solution: sin(Q1 r) inside, J3 e^{ikr} + J4 e^{-ikr} outside."""
    wn = wavenumbers(spec, e)
    q = coeffs.j(spec, e)
    return _wave(
        spec, e, "chi",
        (1 / 2j, -1 / 2j, 1j * wn.q1),
        (q.c1, q.c2, 1j * wn.q2),
        (q.c3, q.c4, 1j * wn.k),
    )


def chi_tilde(spec: PotentialSpec, e) -> PiecewiseWave:
    """Regular solution in tilde momenta (natural for Re E < 0)."""
    wn = wavenumbers(spec, e)
    q = coeffs.tilde_j(spec, e)
    return _wave(
        spec, e, "chi_tilde",
        (0.5j, -0.5j, wn.q1_tilde),
        (q.c1, q.c2, wn.q2_tilde),
        (q.c3, q.c4, wn.k_tilde),
    )


def theta_plus(spec: PotentialSpec, e) -> PiecewiseWave:
    """Outgoing solution, e^{+ikr} outside (square integrable at infinity for Im E > 0)."""
    wn = wavenumbers(spec, e)
    q = coeffs.a_plus(spec, e)
    return _wave(
        spec, e, "theta_plus",
        (q.c1, q.c2, 1j * wn.q1),
        (q.c3, q.c4, 1j * wn.q2),
        (1.0, 0.0, 1j * wn.k),
    )


def theta_minus(spec: PotentialSpec, e) -> PiecewiseWave:
    """Incoming solution, e^{-ikr} outside (square integrable at infinity for Im E < 0)."""
    wn = wavenumbers(spec, e)
    q = coeffs.a_minus(spec, e)
    return _wave(
        spec, e, "theta_minus",
        (q.c1, q.c2, 1j * wn.q1),
        (q.c3, q.c4, 1j * wn.q2),
        (0.0, 1.0, 1j * wn.k),
    )


def theta_tilde(spec: PotentialSpec, e) -> PiecewiseWave:
    """Decaying solution e^{-k~ r} outside in tilde momenta (natural for Re E < 0)."""
    wn = wavenumbers(spec, e)
    q = coeffs.tilde_a(spec, e)
    return _wave(
        spec, e, "theta_tilde",
        (q.c1, q.c2, wn.q1_tilde),
        (q.c3, q.c4, wn.q2_tilde),
        (0.0, 1.0, wn.k_tilde),
    )


def sigma1_neg(spec: PotentialSpec, e) -> PiecewiseWave:
    """Growing solution e^{+k~ r} outside; with Theta~ it spans solutions for E < 0."""
    wn = wavenumbers(spec, e)
    q = coeffs.tilde_b(spec, e)
    return _wave(
        spec, e, "sigma1_neg",
        (q.c1, q.c2, wn.q1_tilde),
        (q.c3, q.c4, wn.q2_tilde),
        (1.0, 0.0, wn.k_tilde),
    )


def sigma2_pos(spec: PotentialSpec, e) -> PiecewiseWave:
    """cos(Q1 r)-based solution; with chi it spans solutions for E > 0.  Does not vanish at 0."""
    wn = wavenumbers(spec, e)
    q = coeffs.c_coeffs(spec, e)
    return _wave(
        spec, e, "sigma2_pos",
        (0.5, 0.5, 1j * wn.q1),
        (q.c1, q.c2, 1j * wn.q2),
        (q.c3, q.c4, 1j * wn.k),
    )


# -- k-parameterized families -------------------------------------------------
#
# The momentum k itself labels the solution (both energy sheets at once);
# Q1, Q2 are branch_sqrt(k^2 + c V1), branch_sqrt(k^2 - c V2).


def _k_momenta(spec: PotentialSpec, k):
    k = complex(k)
    q1 = branch_sqrt(k * k + spec.c * spec.v1)
    q2 = branch_sqrt(k * k - spec.c * spec.v2)
    return k, q1, q2


def chi_k(spec: PotentialSpec, k) -> PiecewiseWave:
    """chi continued in the momentum variable k."""
    k, q1, q2 = _k_momenta(spec, k)
    j1, j2, j3, j4 = coeffs._j(k, q1, q2, spec.a, spec.b)
    return _wave(
        spec, k, "chi_k",
        (1 / 2j, -1 / 2j, 1j * q1),
        (j1, j2, 1j * q2),
        (j3, j4, 1j * k),
    )


def f_of_k(spec: PotentialSpec, k) -> PiecewiseWave:
    """Theta+ continued in the momentum variable k (outgoing e^{ikr} outside)."""
    k, q1, q2 = _k_momenta(spec, k)
    a1, a2, a3, a4 = coeffs._a_plus(k, q1, q2, spec.a, spec.b)
    return _wave(
        spec, k, "f_of_k",
        (a1, a2, 1j * q1),
        (a3, a4, 1j * q2),
        (1.0, 0.0, 1j * k),
    )


# -- normalized eigenfunctions -------------------------------------------------


def phi_delta(spec: PotentialSpec, e: float, r):
    """Delta-normalized continuum eigenfunction sqrt(rho(E)) * chi(r;E), E > 0.

    rho is the continuum spectral density (1/4pi)(c/sqrt(cE))/|J4|^2.
    """
    e = float(e)
    if e <= 0:
        raise ValueError("phi_delta is defined for E > 0")
    q = coeffs.j(spec, e)                       # raises SingularEnergy at thresholds
    k = branch_sqrt(spec.c * e).real
    rho = (1.0 / (4.0 * np.pi)) * (spec.c / k) / abs(q.c4) ** 2
    val = np.sqrt(rho) * chi(spec, e)(r)
    return val.real if isinstance(val, np.ndarray) else val.real


def momentum_ket(spec: PotentialSpec, k: float, r):
    """Delta-normalized eigensolution in momentum: [2 pi J3(k) J4(k)]^{-1/2} chi(r;k)."""
    k = float(k)
    if k <= 0:
        raise ValueError("momentum_ket is defined for k > 0")
    e = k * k / spec.c
    q = coeffs.j(spec, e)
    pref = 1.0 / branch_sqrt(2.0 * np.pi * q.c3 * q.c4)
    val = pref * chi(spec, e)(r)
    return val.real if isinstance(val, np.ndarray) else val.real


@dataclass(frozen=True)
class BoundStateFunction:
    """Unit-norm bound eigenfunction phi_n = N_n * Theta~(r; E_n)."""

    n: int
    energy: float
    norm_const: float
    wave: PiecewiseWave

    def __call__(self, r):
        val = self.norm_const * self.wave(r)
        return val.real if isinstance(val, np.ndarray) else val.real

    def deriv(self, r, order: int = 1):
        val = self.norm_const * self.wave.derivative(r, order)
        return val.real if isinstance(val, np.ndarray) else val.real


def bound_state_function(spec: PotentialSpec, state: "BoundState") -> BoundStateFunction:
    """Attach the normalization constant of a located bound state to its Theta~ wave."""
    return BoundStateFunction(
        n=state.n,
        energy=state.energy,
        norm_const=state.norm_const,
        wave=theta_tilde(spec, state.energy),
    )


def wronskian(w1: PiecewiseWave, w2: PiecewiseWave, r) -> complex:
    """w1 w2' - w1' w2 with analytic derivatives; r-independent for equal parameters."""
    return w1(r) * w2.derivative(r) - w1.derivative(r) * w2(r)


def tail_radius(spec: PotentialSpec, kappa_min: float) -> float:
    """Truncation radius for L2 integrals of waves decaying like e^{-kappa r}.

    R = b + max(30/kappa, 10 b): the tail beyond R contributes < e^{-60}
    relative to the norm, far below every tolerance in use.
    """
    return spec.b + max(30.0 / kappa_min, 10.0 * spec.b)
