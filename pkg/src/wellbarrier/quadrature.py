"""Composite Gauss-Legendre quadrature helpers.

Plumbing shared by the Green-function resolvent, the normalization integrals
and the diagonalizing transforms.  Panels are always laid out deterministically
from the requested breakpoints, so results are independent of evaluation order.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "gauss_nodes",
    "panel_nodes",
    "integrate",
    "integrate_adaptive",
    "oscillation_panels",
    "pairwise_sum",
]


@lru_cache(maxsize=64)
def gauss_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def panel_nodes(breakpoints, nodes_per_panel: int = 32):
    """Gauss-Legendre nodes/weights on consecutive panels between breakpoints."""
    bp = np.asarray(breakpoints, dtype=float)
    x, w = gauss_nodes(nodes_per_panel)
    nodes, weights = [], []
    for lo, hi in zip(bp[:-1], bp[1:]):
        if hi <= lo:
            continue
        half = 0.5 * (hi - lo)
        nodes.append(half * x + 0.5 * (hi + lo))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def integrate(f, breakpoints, nodes_per_panel: int = 32):
    """Integral of a vectorized callable over the panel decomposition."""
    r, w = panel_nodes(breakpoints, nodes_per_panel)
    return pairwise_sum(w * np.asarray(f(r)))


def integrate_adaptive(f, breakpoints, rtol: float = 1e-10, nodes_per_panel: int = 32,
                       max_doublings: int = 8):
    """Panel-doubling until the relative change drops below rtol."""
    bp = list(map(float, breakpoints))
    prev = integrate(f, bp, nodes_per_panel)
    for _ in range(max_doublings):
        bp = _halve(bp)
        cur = integrate(f, bp, nodes_per_panel)
        if abs(cur - prev) <= rtol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    return prev


def _halve(breakpoints):
    out = [breakpoints[0]]
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        out.extend([0.5 * (lo + hi), hi])
    return out


def oscillation_panels(lo: float, hi: float, k_max: float, waves_per_panel: float = 3.0):
    """Breakpoints fine enough that a 32-node panel resolves e^{i k_max r}."""
    if hi <= lo:
        return [lo, hi]
    length = hi - lo
    panel = waves_per_panel * 2.0 * np.pi / max(k_max, 1e-12)
    n = max(1, int(np.ceil(length / panel)))
    return list(np.linspace(lo, hi, n + 1))


def pairwise_sum(values) -> complex:
    """Order-independent reduction (numpy's pairwise summation)."""
    arr = np.asarray(values)
    total = np.sum(arr)
    return complex(total) if np.iscomplexobj(arr) else float(total)
