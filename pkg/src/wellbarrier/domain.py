"""Potential parameters, units and the fixed square-root branch.

Everything downstream is written in terms of the single constant
c = 2m/hbar^2, so that the radial operator reads

    h = -(1/c) d^2/dr^2 + V(r),

with the piecewise-constant potential

    V(r) = -V1   on (0, a)      (well)
           +V2   on (a, b)      (barrier)
            0    on (b, inf).

Six momentum-like quantities appear throughout: for a complex energy E,

    k  = sqrt(c E)          k~  = sqrt(-c E)
    Q1 = sqrt(c (E + V1))   Q1~ = sqrt(-c (E + V1))
    Q2 = sqrt(c (E - V2))   Q2~ = sqrt(-c (E - V2)),

all taken with one fixed branch of the square root that maps
arg(z) in (-pi, pi] onto arg(w) in (-pi/2, pi/2].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PotentialSpec",
    "UnitSystem",
    "WaveNumbers",
    "branch_sqrt",
    "wavenumbers",
    "validate",
]


@dataclass(frozen=True)
class PotentialSpec:
    """Square well-barrier potential: depth v1 > 0 on (0,a), height v2 >= 0 on (a,b).

    c is the value of 2m/hbar^2 (default 1, so E = k^2).
    """

    v1: float
    v2: float
    a: float
    b: float
    c: float = 1.0


@dataclass(frozen=True)
class UnitSystem:
    """Unit bookkeeping: hbar and m enter only through c = 2m/hbar^2."""

    c: float = 1.0


@dataclass(frozen=True)
class WaveNumbers:
    """The six branch-sqrt momenta at one complex energy."""

    k: complex
    k_tilde: complex
    q1: complex
    q2: complex
    q1_tilde: complex
    q2_tilde: complex


def branch_sqrt(z):
    """Square root with arg(z) in (-pi, pi] mapped to arg(w) in (-pi/2, pi/2].

    Negative real arguments are assigned arg = pi (limit from above the cut),
    so branch_sqrt(-x) = i*sqrt(x) for x > 0.  Accepts scalars or arrays.
    """
    z = np.asarray(z, dtype=complex)
    # kill signed zeros: -0.0 imaginary parts would select the wrong side of the cut
    z = np.where(z.imag == 0.0, z.real + 0.0j, z)
    w = np.sqrt(z)
    if w.ndim == 0:
        return complex(w)
    return w


def wavenumbers(spec: PotentialSpec, e) -> WaveNumbers:
    """All six momenta of the given energy, via the fixed branch."""
    c = spec.c
    e = complex(e)
    return WaveNumbers(
        k=branch_sqrt(c * e),
        k_tilde=branch_sqrt(-c * e),
        q1=branch_sqrt(c * (e + spec.v1)),
        q2=branch_sqrt(c * (e - spec.v2)),
        q1_tilde=branch_sqrt(-c * (e + spec.v1)),
        q2_tilde=branch_sqrt(-c * (e - spec.v2)),
    )


def validate(spec: PotentialSpec) -> str | None:
    """Return the first violated invariant as a message, or None if the spec is valid."""
    if not np.isfinite([spec.v1, spec.v2, spec.a, spec.b, spec.c]).all():
        return "all parameters must be finite"
    if spec.v1 <= 0:
        return "v1 > 0"
    if spec.v2 < 0:
        return "v2 >= 0"
    if spec.a <= 0:
        return "a > 0"
    if spec.a >= spec.b:
        return "a < b"
    if spec.c <= 0:
        return "c > 0"
    return None
