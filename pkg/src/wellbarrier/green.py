"""Resolvent kernel of the Hamiltonian.

Three energy regions share one construction

    G(r,s;E) = c * chi(r_<) Theta(r_>) / W(chi, Theta),

with the regular solution on the small radius, the decaying solution on the
large one, and the Wronskian in the denominator:

    Re E < 0           : - (c / sqrt(-cE)) chi~ Theta~ / (2 J3~)
    Re E > 0, Im E > 0 : + (c / sqrt(cE))  chi  Theta+ / (2i J4)
    Re E > 0, Im E < 0 : - (c / sqrt(cE))  chi  Theta- / (2i J3)

In the momentum variable the three regions fuse into the single expression

    G(r,s;k) = -(c/k) chi(r_<;k) f(r_>;k) / J(k),

which reproduces the energy-plane kernel for k in the upper half plane
(the physical sheet) and continues it to the second sheet for Im k < 0.
"""

from __future__ import annotations

import numpy as np

from . import coeffs, eigenfunctions, quadrature, spectrum
from .domain import PotentialSpec, branch_sqrt

__all__ = ["SpectrumHit", "JostZero", "green_e", "green_k", "derivative_jump",
           "apply_resolvent"]


class SpectrumHit(ValueError):
    """Energy on (or too close to) the spectrum; the resolvent does not exist there."""


class JostZero(ValueError):
    """Momentum at a zero of the Jost function (pole of the k-plane kernel)."""


def _check_resolvent_set(spec: PotentialSpec, e: complex) -> None:
    if e.real >= 0 and abs(e.imag) < 1e-12:
        raise SpectrumHit(f"E = {e} sits on the continuous spectrum [0, inf)")
    if e.imag == 0.0:
        for state in spectrum.find_bound_states(spec):
            if abs(e.real - state.energy) < 1e-10:
                raise SpectrumHit(f"E = {e} hits the bound state E_{state.n}")


def green_e(spec: PotentialSpec, e, r: float, s: float) -> complex:
    """Green function G(r,s;E) for E in the resolvent set."""
    e = complex(e)
    _check_resolvent_set(spec, e)
    rl, rg = (r, s) if r <= s else (s, r)
    if e.real < 0:
        chi_t = eigenfunctions.chi_tilde(spec, e)
        theta_t = eigenfunctions.theta_tilde(spec, e)
        j3t = coeffs.tilde_j(spec, e).c3
        pref = -(spec.c / branch_sqrt(-spec.c * e)) / (2.0 * j3t)
        return complex(pref * chi_t(rl) * theta_t(rg))
    chi = eigenfunctions.chi(spec, e)
    q = coeffs.j(spec, e)
    if e.imag > 0:
        theta = eigenfunctions.theta_plus(spec, e)
        pref = (spec.c / branch_sqrt(spec.c * e)) / (2j * q.c4)
    else:
        theta = eigenfunctions.theta_minus(spec, e)
        pref = -(spec.c / branch_sqrt(spec.c * e)) / (2j * q.c3)
    return complex(pref * chi(rl) * theta(rg))


def green_k(spec: PotentialSpec, k, r: float, s: float) -> complex:
    """Unified kernel -(c/k) chi(r_<;k) f(r_>;k) / J(k) on the momentum plane.

    No region dispatch and no cut: k itself selects the sheet.  Raises
    JostZero at (numerical) zeros of the Jost function.
    """
    k = complex(k)
    jost_val = spectrum.jost(spec, k)
    if abs(jost_val) < 1e-12:
        raise JostZero(f"J({k}) ~ 0")
    rl, rg = (r, s) if r <= s else (s, r)
    chi = eigenfunctions.chi_k(spec, k)
    f = eigenfunctions.f_of_k(spec, k)
    return complex(-(spec.c / k) * chi(rl) * f(rg) / jost_val)


def _kernel_parts(spec: PotentialSpec, e: complex):
    """Regular wave, decaying wave and prefactor with G = pref * chi(r_<) theta(r_>)."""
    if e.real < 0:
        chi = eigenfunctions.chi_tilde(spec, e)
        theta = eigenfunctions.theta_tilde(spec, e)
        pref = -(spec.c / branch_sqrt(-spec.c * e)) / (2.0 * coeffs.tilde_j(spec, e).c3)
    elif e.imag > 0:
        chi = eigenfunctions.chi(spec, e)
        theta = eigenfunctions.theta_plus(spec, e)
        pref = (spec.c / branch_sqrt(spec.c * e)) / (2j * coeffs.j(spec, e).c4)
    else:
        chi = eigenfunctions.chi(spec, e)
        theta = eigenfunctions.theta_minus(spec, e)
        pref = -(spec.c / branch_sqrt(spec.c * e)) / (2j * coeffs.j(spec, e).c3)
    return chi, theta, pref


def derivative_jump(spec: PotentialSpec, e, s: float) -> complex:
    """Jump of dG/dr across the diagonal r = s, analytically: pref * W(chi, theta).

    Equals c = 2m/hbar^2 for every energy in the resolvent set.
    """
    e = complex(e)
    _check_resolvent_set(spec, e)
    chi, theta, pref = _kernel_parts(spec, e)
    return complex(pref * (chi(s) * theta.derivative(s) - chi.derivative(s) * theta(s)))


def apply_resolvent(spec: PotentialSpec, e, f, support, r):
    """(E - H)^{-1} f on the output points r, for f supported on [lo, hi].

    g(r) = int G(r,s;E) f(s) ds, with quadrature panels split at the kernel
    kink s = r and at the potential steps a, b, then panel-doubled to 1e-10.
    """
    e = complex(e)
    _check_resolvent_set(spec, e)
    chi, theta, pref = _kernel_parts(spec, e)
    lo, hi = map(float, support)
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    out = np.empty(r_arr.shape, dtype=complex)
    steps = [x for x in (spec.a, spec.b) if lo < x < hi]
    for i, ri in enumerate(r_arr):
        below = sorted({lo, min(ri, hi)} | {x for x in steps if x < ri})
        above = sorted({max(ri, lo), hi} | {x for x in steps if x > ri})
        left = quadrature.integrate_adaptive(
            lambda s: chi(s) * f(s), below, rtol=1e-10) if below[-1] > below[0] else 0.0
        right = quadrature.integrate_adaptive(
            lambda s: theta(s) * f(s), above, rtol=1e-10) if above[-1] > above[0] else 0.0
        out[i] = pref * (theta(ri) * left + chi(ri) * right)
    if np.isscalar(r) or np.asarray(r).ndim == 0:
        return complex(out[0])
    return out
