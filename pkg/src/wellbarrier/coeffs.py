"""Matching coefficients of the piecewise solutions.

Each solution family of h u = E u is a two-term exponential in every region;
requiring the value and the first derivative to be continuous at r = a and
r = b fixes all coefficients once two of them are prescribed.  The closed
forms below follow a cascade: the two coefficients adjacent to the fixed
region are written first, then propagated across the next step.

Families (names follow their fixed region):

    tilde_j  : chi~,    inner region fixed to (i/2)(e^{Q1~ r} - e^{-Q1~ r})
    tilde_a  : Theta~,  outer region fixed to e^{-k~ r}
    tilde_b  : sigma1,  outer region fixed to e^{+k~ r}
    j        : chi,     inner region fixed to sin(Q1 r)
    a_plus   : Theta+,  outer region fixed to e^{+i k r}
    a_minus  : Theta-,  outer region fixed to e^{-i k r}
    c_coeffs : sigma2,  inner region fixed to cos(Q1 r)

All formulas divide by Q2-type and k-type momenta; close to the threshold
energies those divisions blow up, so the public entry points raise
SingularEnergy instead of returning garbage.  Callers that need a value at a
threshold nudge the energy by +1e-9i (see `nudge`).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .domain import PotentialSpec, wavenumbers

__all__ = [
    "CoefficientQuad",
    "SingularEnergy",
    "nudge",
    "tilde_j",
    "tilde_a",
    "tilde_b",
    "j",
    "a_plus",
    "a_minus",
    "c_coeffs",
]


class SingularEnergy(ValueError):
    """Energy too close to a threshold of the coefficient formulas (q2, k or q1 ~ 0)."""


class CoefficientQuad(NamedTuple):
    c1: complex
    c2: complex
    c3: complex
    c4: complex


def nudge(e) -> complex:
    """Displace an energy off the singular set along +i."""
    e = complex(e)
    return e + 1e-9j * (1.0 + abs(e))


def _check_off_singular_set(spec: PotentialSpec, wn) -> None:
    tol_q2 = 1e-9 * max(1.0, np.sqrt(spec.c * spec.v2))
    if abs(wn.q2) < tol_q2:
        raise SingularEnergy("q2 ~ 0 (energy at the barrier threshold E = V2)")
    if abs(wn.k) < 1e-9:
        raise SingularEnergy("k ~ 0 (energy at the branch point E = 0)")
    if abs(wn.q1) < 1e-9:
        raise SingularEnergy("q1 ~ 0 (energy at the well bottom E = -V1)")


# ----------------------------------------------------------------------------
# closed forms, parameterized by the wavenumbers themselves.
#
# These accept numpy arrays so whole energy grids evaluate in one sweep; the
# public wrappers below feed them scalars.


def _tilde_j(kt, q1t, q2t, a: float, b: float):
    j1 = 0.25j * np.exp(-q2t * a) * (
        (1 + q1t / q2t) * np.exp(q1t * a) - (1 - q1t / q2t) * np.exp(-q1t * a)
    )
    j2 = 0.25j * np.exp(q2t * a) * (
        (1 - q1t / q2t) * np.exp(q1t * a) - (1 + q1t / q2t) * np.exp(-q1t * a)
    )
    j3 = 0.5 * np.exp(-kt * b) * (
        (1 + q2t / kt) * np.exp(q2t * b) * j1 + (1 - q2t / kt) * np.exp(-q2t * b) * j2
    )
    j4 = 0.5 * np.exp(kt * b) * (
        (1 - q2t / kt) * np.exp(q2t * b) * j1 + (1 + q2t / kt) * np.exp(-q2t * b) * j2
    )
    return j1, j2, j3, j4


def _tilde_a(kt, q1t, q2t, a: float, b: float):
    a3 = 0.5 * np.exp(-q2t * b) * (1 - kt / q2t) * np.exp(-kt * b)
    a4 = 0.5 * np.exp(q2t * b) * (1 + kt / q2t) * np.exp(-kt * b)
    a1 = 0.5 * np.exp(-q1t * a) * (
        (1 + q2t / q1t) * np.exp(q2t * a) * a3 + (1 - q2t / q1t) * np.exp(-q2t * a) * a4
    )
    a2 = 0.5 * np.exp(q1t * a) * (
        (1 - q2t / q1t) * np.exp(q2t * a) * a3 + (1 + q2t / q1t) * np.exp(-q2t * a) * a4
    )
    return a1, a2, a3, a4


def _tilde_b(kt, q1t, q2t, a: float, b: float):
    b3 = 0.5 * np.exp(-q2t * b) * (1 + kt / q2t) * np.exp(kt * b)
    b4 = 0.5 * np.exp(q2t * b) * (1 - kt / q2t) * np.exp(kt * b)
    b1 = 0.5 * np.exp(-q1t * a) * (
        (1 + q2t / q1t) * np.exp(q2t * a) * b3 + (1 - q2t / q1t) * np.exp(-q2t * a) * b4
    )
    b2 = 0.5 * np.exp(q1t * a) * (
        (1 - q2t / q1t) * np.exp(q2t * a) * b3 + (1 + q2t / q1t) * np.exp(-q2t * a) * b4
    )
    return b1, b2, b3, b4


def _j(k, q1, q2, a: float, b: float):
    j1 = 0.5 * np.exp(-1j * q2 * a) * (np.sin(q1 * a) + (q1 / (1j * q2)) * np.cos(q1 * a))
    j2 = 0.5 * np.exp(1j * q2 * a) * (np.sin(q1 * a) - (q1 / (1j * q2)) * np.cos(q1 * a))
    j3 = 0.5 * np.exp(-1j * k * b) * (
        (1 + q2 / k) * np.exp(1j * q2 * b) * j1 + (1 - q2 / k) * np.exp(-1j * q2 * b) * j2
    )
    j4 = 0.5 * np.exp(1j * k * b) * (
        (1 - q2 / k) * np.exp(1j * q2 * b) * j1 + (1 + q2 / k) * np.exp(-1j * q2 * b) * j2
    )
    return j1, j2, j3, j4


def _a_plus(k, q1, q2, a: float, b: float):
    a3 = 0.5 * np.exp(-1j * q2 * b) * (1 + k / q2) * np.exp(1j * k * b)
    a4 = 0.5 * np.exp(1j * q2 * b) * (1 - k / q2) * np.exp(1j * k * b)
    a1 = 0.5 * np.exp(-1j * q1 * a) * (
        (1 + q2 / q1) * np.exp(1j * q2 * a) * a3 + (1 - q2 / q1) * np.exp(-1j * q2 * a) * a4
    )
    a2 = 0.5 * np.exp(1j * q1 * a) * (
        (1 - q2 / q1) * np.exp(1j * q2 * a) * a3 + (1 + q2 / q1) * np.exp(-1j * q2 * a) * a4
    )
    return a1, a2, a3, a4


def _a_minus(k, q1, q2, a: float, b: float):
    a3 = 0.5 * np.exp(-1j * q2 * b) * (1 - k / q2) * np.exp(-1j * k * b)
    a4 = 0.5 * np.exp(1j * q2 * b) * (1 + k / q2) * np.exp(-1j * k * b)
    a1 = 0.5 * np.exp(-1j * q1 * a) * (
        (1 + q2 / q1) * np.exp(1j * q2 * a) * a3 + (1 - q2 / q1) * np.exp(-1j * q2 * a) * a4
    )
    a2 = 0.5 * np.exp(1j * q1 * a) * (
        (1 - q2 / q1) * np.exp(1j * q2 * a) * a3 + (1 + q2 / q1) * np.exp(-1j * q2 * a) * a4
    )
    return a1, a2, a3, a4


def _c(k, q1, q2, a: float, b: float):
    # the two outer-step factors use Q2 throughout, consistent with every other family
    c1 = 0.5 * np.exp(-1j * q2 * a) * (np.cos(q1 * a) - (q1 / (1j * q2)) * np.sin(q1 * a))
    c2 = 0.5 * np.exp(1j * q2 * a) * (np.cos(q1 * a) + (q1 / (1j * q2)) * np.sin(q1 * a))
    c3 = 0.5 * np.exp(-1j * k * b) * (
        (1 + q2 / k) * np.exp(1j * q2 * b) * c1 + (1 - q2 / k) * np.exp(-1j * q2 * b) * c2
    )
    c4 = 0.5 * np.exp(1j * k * b) * (
        (1 - q2 / k) * np.exp(1j * q2 * b) * c1 + (1 + q2 / k) * np.exp(-1j * q2 * b) * c2
    )
    return c1, c2, c3, c4


# ----------------------------------------------------------------------------
# public entry points: spec + energy, with the singular-set guard


def _quad_at(spec: PotentialSpec, e, closed_form, tilde: bool) -> CoefficientQuad:
    wn = wavenumbers(spec, e)
    _check_off_singular_set(spec, wn)
    if tilde:
        vals = closed_form(wn.k_tilde, wn.q1_tilde, wn.q2_tilde, spec.a, spec.b)
    else:
        vals = closed_form(wn.k, wn.q1, wn.q2, spec.a, spec.b)
    return CoefficientQuad(*(complex(v) for v in vals))


def tilde_j(spec: PotentialSpec, e) -> CoefficientQuad:
    """Coefficients of chi~ (regular at 0, tilde momenta)."""
    return _quad_at(spec, e, _tilde_j, tilde=True)


def tilde_a(spec: PotentialSpec, e) -> CoefficientQuad:
    """Coefficients of Theta~ (outer region e^{-k~ r})."""
    return _quad_at(spec, e, _tilde_a, tilde=True)


def tilde_b(spec: PotentialSpec, e) -> CoefficientQuad:
    """Coefficients of sigma1 on the negative half-line (outer region e^{+k~ r})."""
    return _quad_at(spec, e, _tilde_b, tilde=True)


def j(spec: PotentialSpec, e) -> CoefficientQuad:
    """Coefficients of chi (regular at 0, oscillatory momenta)."""
    return _quad_at(spec, e, _j, tilde=False)


def a_plus(spec: PotentialSpec, e) -> CoefficientQuad:
    """Coefficients of Theta+ (outer region e^{+ikr})."""
    return _quad_at(spec, e, _a_plus, tilde=False)


def a_minus(spec: PotentialSpec, e) -> CoefficientQuad:
    """Coefficients of Theta- (outer region e^{-ikr})."""
    return _quad_at(spec, e, _a_minus, tilde=False)


def c_coeffs(spec: PotentialSpec, e) -> CoefficientQuad:
    """Coefficients of sigma2 (inner region cos(Q1 r))."""
    return _quad_at(spec, e, _c, tilde=False)
