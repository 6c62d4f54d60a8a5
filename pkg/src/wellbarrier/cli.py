"""Command-line surface.

Subcommands:

    spectrum   bound states + sampled continuum density and S-matrix phase
    eigen      dump one eigenfunction family on an r grid as CSV
    verify     run the invariant suites, emit a machine-readable JSON verdict
    expand     decompose a sampled function into bound + continuum amplitudes

Configuration is a flat key-value file with dotted sections, e.g.

    potential.v1 = 10.0
    potential.v2 = 4.0
    potential.a  = 1.0
    potential.b  = 2.0
    grid.nodes   = 2048

Exit codes: 0 success, 1 failed verification checks, 2 invalid configuration
or usage, 3 solver/quadrature failure.  Output files are written atomically
(temp file + rename); CSV numbers carry 17 significant digits so downstream
diffing is exact.  The RIGGED_THREADS environment variable caps worker
parallelism; all computations here are deterministic single-threaded numpy,
so results are bit-identical for any setting.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import coeffs, eigenfunctions, green, quadrature, spectrum, transform
from .domain import PotentialSpec, branch_sqrt, validate, wavenumbers

__all__ = ["RunConfig", "main"]

_FMT = "{:.17e}"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_SOLVER = 3

SUITES = ("matching", "wronskian", "green", "normalization",
          "parseval", "tk", "smatrix", "membership")

FAMILIES = ("chi", "theta_plus", "theta_minus", "chi_tilde", "theta_tilde",
            "phi_delta", "momentum_ket")


@dataclass
class RunConfig:
    potential: PotentialSpec = field(
        default_factory=lambda: PotentialSpec(v1=10.0, v2=4.0, a=1.0, b=2.0, c=1.0))
    # verification-grade grid: wide enough that bump transforms truncate below 1e-6
    k_max: float | None = 180.0
    nodes: int = 8192
    r_max: float = 12.0
    r_nodes: int = 400
    tol_root: float = 1e-12
    tol_quad: float = 1e-10
    tol_match: float = 1e-8
    out_format: str = "csv"
    out_path: str | None = None

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        cfg = cls()
        pot = {"v1": cfg.potential.v1, "v2": cfg.potential.v2,
               "a": cfg.potential.a, "b": cfg.potential.b, "c": cfg.potential.c}
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected 'key = value'")
                key, value = (part.strip() for part in line.split("=", 1))
                if key.startswith("potential."):
                    name = key.split(".", 1)[1]
                    if name not in pot:
                        raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
                    pot[name] = float(value)
                elif key == "grid.k_max":
                    cfg.k_max = float(value)
                elif key == "grid.nodes":
                    cfg.nodes = int(value)
                elif key == "grid.r_max":
                    cfg.r_max = float(value)
                elif key == "grid.r_nodes":
                    cfg.r_nodes = int(value)
                elif key == "tol.root":
                    cfg.tol_root = float(value)
                elif key == "tol.quad":
                    cfg.tol_quad = float(value)
                elif key == "tol.match":
                    cfg.tol_match = float(value)
                elif key == "output.format":
                    if value not in ("csv", "json"):
                        raise ValueError(f"{path}:{lineno}: format must be csv or json")
                    cfg.out_format = value
                elif key == "output.path":
                    cfg.out_path = value
                else:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        cfg.potential = PotentialSpec(**pot)
        return cfg

    def grid(self) -> transform.ContinuumGrid:
        return transform.energy_grid(self.potential, k_max=self.k_max, nodes=self.nodes)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".wb-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        _atomic_write(path, text)


# ----------------------------------------------------------------------------
# spectrum


def cmd_spectrum(cfg: RunConfig) -> int:
    spec = cfg.potential
    msg = validate(spec)
    if msg is not None:
        print(f"invalid potential: violated invariant {msg!r}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    try:
        states = spectrum.find_bound_states(spec)
        lines = [f"bound_states: {len(states)}"]
        for s in states:
            direct = spectrum.direct_normalization(spec, s)
            n_direct = 1.0 / np.sqrt(direct.integral)
            mismatch = abs(s.norm_const ** 2 - 1.0 / direct.integral) / s.norm_const ** 2
            lines.append(
                "  n={n} E={e} kappa={kap} N_residue={nr} N_direct={nd} mismatch={mm:.3e}".format(
                    n=s.n, e=_FMT.format(s.energy), kap=_FMT.format(s.kappa),
                    nr=_FMT.format(s.norm_const), nd=_FMT.format(n_direct), mm=mismatch,
                )
            )
        grid = cfg.grid()
        take = max(1, len(grid.e) // 16)
        e_samples = grid.e[::take]
        rho_rows = [(float(e), spectrum.rho(spec, e)) for e in e_samples]
        k_samples = grid.k[::take]
        s_rows = [(float(k), float(np.angle(spectrum.s_matrix(spec, k)))) for k in k_samples]
    except (spectrum.ScanTooCoarse, spectrum.DegenerateRoot, coeffs.SingularEnergy) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    print("\n".join(lines))
    if cfg.out_path is not None:
        if cfg.out_format == "json":
            payload = {
                "bound_states": [
                    {"n": s.n, "energy": s.energy, "kappa": s.kappa, "norm": s.norm_const}
                    for s in states
                ],
                "rho": [{"e": e, "rho": r} for e, r in rho_rows],
                "s_phase": [{"k": k, "phase": p} for k, p in s_rows],
            }
            _emit(cfg.out_path, json.dumps(payload, indent=1))
        else:
            rows = ["e,rho"]
            rows += [",".join(_FMT.format(v) for v in row) for row in rho_rows]
            rows.append("k,s_phase")
            rows += [",".join(_FMT.format(v) for v in row) for row in s_rows]
            _emit(cfg.out_path, "\n".join(rows) + "\n")
    return EXIT_OK


# ----------------------------------------------------------------------------
# eigen


def cmd_eigen(cfg: RunConfig, family: str, energy: float | None, momentum: float | None,
              r_min: float, r_max: float, r_nodes: int) -> int:
    spec = cfg.potential
    msg = validate(spec)
    if msg is not None:
        print(f"invalid potential: violated invariant {msg!r}", file=sys.stderr)
        return EXIT_BAD_CONFIG

    bound_index = None
    if family.startswith("bound:"):
        try:
            bound_index = int(family.split(":", 1)[1])
        except ValueError:
            print(f"bad bound-state index in {family!r}", file=sys.stderr)
            return EXIT_BAD_CONFIG
    elif family not in FAMILIES:
        print(f"unknown family {family!r}; choose from {FAMILIES} or bound:n",
              file=sys.stderr)
        return EXIT_BAD_CONFIG

    r = np.linspace(r_min, r_max, r_nodes)
    try:
        if bound_index is not None:
            states = spectrum.find_bound_states(spec)
            if not 1 <= bound_index <= len(states):
                print(f"no bound state with index {bound_index} "
                      f"(found {len(states)})", file=sys.stderr)
                return EXIT_BAD_CONFIG
            fn = eigenfunctions.bound_state_function(spec, states[bound_index - 1])
            vals = np.asarray(fn(r), dtype=complex)
        elif family == "phi_delta":
            if energy is None:
                print("phi_delta needs --energy", file=sys.stderr)
                return EXIT_BAD_CONFIG
            vals = np.asarray(eigenfunctions.phi_delta(spec, energy, r), dtype=complex)
        elif family == "momentum_ket":
            if momentum is None:
                print("momentum_ket needs --momentum", file=sys.stderr)
                return EXIT_BAD_CONFIG
            vals = np.asarray(eigenfunctions.momentum_ket(spec, momentum, r), dtype=complex)
        else:
            if energy is None:
                print(f"{family} needs --energy", file=sys.stderr)
                return EXIT_BAD_CONFIG
            wave = getattr(eigenfunctions, family)(spec, energy)
            vals = np.asarray(wave(r), dtype=complex)
    except coeffs.SingularEnergy as exc:
        print(f"singular energy: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    rows = ["r,re,im"]
    rows += [
        ",".join(_FMT.format(v) for v in (ri, vi.real, vi.imag))
        for ri, vi in zip(r, vals)
    ]
    _emit(cfg.out_path, "\n".join(rows) + "\n")
    return EXIT_OK


# ----------------------------------------------------------------------------
# verify suites


def _check(name: str, measured: float, tolerance: float) -> dict:
    measured = float(measured)
    return {"name": name, "measured": measured, "tolerance": tolerance,
            "pass": bool(measured <= tolerance)}


def _suite_matching(cfg: RunConfig) -> list[dict]:
    spec = cfg.potential
    tol = cfg.tol_match
    families = {
        "chi": eigenfunctions.chi, "chi_tilde": eigenfunctions.chi_tilde,
        "theta_plus": eigenfunctions.theta_plus, "theta_minus": eigenfunctions.theta_minus,
        "theta_tilde": eigenfunctions.theta_tilde, "sigma1_neg": eigenfunctions.sigma1_neg,
        "sigma2_pos": eigenfunctions.sigma2_pos,
    }
    energies = [3.0 + 0.7j, -2.0 + 0.4j, 1.1 - 0.9j, spec.v2 + 2.5]
    checks = []
    for fam, ctor in families.items():
        worst = 0.0
        for e in energies:
            wave = ctor(spec, e)
            for x in (spec.a, spec.b):
                for order in (0, 1):
                    left = wave.derivative(x - 1e-13, order)
                    right = wave.derivative(x + 1e-13, order)
                    scale = max(abs(left), abs(right), 1e-12)
                    worst = max(worst, abs(left - right) / scale)
        checks.append(_check(f"matching.c1.{fam}", worst, tol))
    return checks


def _suite_wronskian(cfg: RunConfig) -> list[dict]:
    spec = cfg.potential
    rng = np.random.default_rng(20011001)
    worst_const = 0.0
    worst_value = 0.0
    for _ in range(24):
        e = complex(rng.uniform(0.2, 9.0), rng.uniform(0.1, 3.0))
        k = branch_sqrt(spec.c * e)
        chi = eigenfunctions.chi(spec, e)
        theta = eigenfunctions.theta_plus(spec, e)
        j4 = coeffs.j(spec, e).c4
        expected = 2j * k * j4
        radii = np.array([0.1 * spec.a, 0.7 * spec.a, 1.5 * spec.a,
                          0.5 * (spec.a + spec.b), spec.b, 3.0 * spec.b])
        vals = [eigenfunctions.wronskian(chi, theta, r) for r in radii]
        spread = max(abs(v - vals[0]) for v in vals) / max(abs(vals[0]), 1e-12)
        worst_const = max(worst_const, spread)
        worst_value = max(worst_value, abs(vals[0] - expected) / abs(expected))
    return [
        _check("wronskian.r_independence", worst_const, 1e-10),
        _check("wronskian.value_2ik_j4", worst_value, 1e-10),
    ]


def _suite_green(cfg: RunConfig) -> list[dict]:
    spec = cfg.potential
    checks = []
    region_energies = {
        "neg": complex(-0.5 * spec.v1, 0.8),
        "upper": complex(1.5 + spec.v2, 2.0),
        "lower": complex(1.5 + spec.v2, -2.0),
    }
    bump = transform.SmoothBump(spec.b + 0.2, spec.b + 1.8)
    for tag, e in region_energies.items():
        sym = abs(green.green_e(spec, e, 1.0, 2.5) - green.green_e(spec, e, 2.5, 1.0))
        sym /= abs(green.green_e(spec, e, 1.0, 2.5))
        checks.append(_check(f"green.symmetry.{tag}", sym, 1e-10))
        s0 = 0.5 * (spec.a + spec.b)
        jump = green.derivative_jump(spec, e, s0) / spec.c
        checks.append(_check(f"green.jump.{tag}", abs(jump - 1.0), 1e-8))
        # resolvent identity (E - h) G f = f at the bump midpoint, 5-point stencil
        r0 = spec.b + 1.0
        hh = 1e-3 * spec.b
        pts = r0 + hh * np.arange(-2.0, 3.0)
        g = green.apply_resolvent(spec, e, bump, bump.support, pts)
        d2 = (-g[4] + 16 * g[3] - 30 * g[2] + 16 * g[1] - g[0]) / (12 * hh * hh)
        v_here = 0.0  # bump support sits beyond b
        lhs = e * g[2] + d2 / spec.c - v_here * g[2]
        resid = abs(lhs - bump(r0)) / max(abs(bump(r0)), 1e-12)
        checks.append(_check(f"green.resolvent_identity.{tag}", resid, 1e-6))
    return checks


def _suite_normalization(cfg: RunConfig) -> list[dict]:
    spec = cfg.potential
    checks = []
    states = spectrum.find_bound_states(spec)
    if not states:
        checks.append(_check("normalization.no_bound_states", 0.0, 1.0))
        return checks
    for s in states:
        direct = spectrum.direct_normalization(spec, s)
        n2_residue = s.norm_const ** 2
        n2_direct = 1.0 / direct.integral
        checks.append(_check(f"normalization.residue_vs_direct.n{s.n}",
                             abs(n2_residue - n2_direct) / n2_residue, 1e-6))
        checks.append(_check(f"normalization.integral_vs_res_s.n{s.n}",
                             direct.mismatch, 1e-6))
        res_c = spectrum.s_matrix_residue(spec, 1j * s.kappa, method="contour")
        res_d = spectrum.s_matrix_residue(spec, 1j * s.kappa, method="derivative")
        checks.append(_check(f"normalization.residue_methods.n{s.n}",
                             abs(res_c - res_d) / abs(res_d), 1e-6))
    return checks


def _suite_parseval(cfg: RunConfig) -> list[dict]:
    spec = cfg.potential
    grid = cfg.grid()
    checks = []
    b = spec.b
    bumps = [
        transform.SmoothBump(b + 0.1, b + 2.1),
        transform.SmoothBump(b + 0.5, b + 3.0),
        transform.SmoothBump(b + 1.0, b + 4.0),
    ]
    for i, f in enumerate(bumps, 1):
        state = transform.decompose(spec, f, grid)
        r, w = transform.radial_nodes(spec, f.support, grid.k_max)
        rec = transform.reconstruct(spec, state, r)
        num = quadrature.pairwise_sum(w * np.abs(rec - f(r)) ** 2)
        den = quadrature.pairwise_sum(w * np.abs(f(r)) ** 2)
        checks.append(_check(f"parseval.round_trip.bump{i}",
                             float(np.sqrt(num / den)), 1e-6))
        _, _, mm = transform.parseval(spec, f, f, grid)
        checks.append(_check(f"parseval.identity.bump{i}", mm, 1e-6))
    return checks


def _suite_tk(cfg: RunConfig) -> list[dict]:
    spec = cfg.potential
    checks = []
    rho_int = quadrature.integrate_adaptive(
        lambda e: np.array([spectrum.rho(spec, x) for x in np.atleast_1d(e)]),
        [1.0, 1.5, 2.0], rtol=1e-12)
    tk_pos = spectrum.tk_measure(spec, 1.0, 2.0)
    checks.append(_check("tk.positive_window",
                         abs(tk_pos - rho_int) / abs(rho_int), 1e-4))
    states = spectrum.find_bound_states(spec)
    if states:
        s = states[0]
        lo = max(s.energy - 0.2, -spec.v1 + 1e-3)
        hi = min(s.energy + 0.2, -1e-3)
        if len(states) > 1:
            hi = min(hi, 0.5 * (s.energy + states[1].energy))
        tk_neg = spectrum.tk_measure(spec, lo, hi)
        checks.append(_check("tk.negative_window",
                             abs(tk_neg - s.norm_const ** 2) / s.norm_const ** 2, 1e-4))
        empty_hi = min(-1e-3, s.energy - 0.5) if s.energy - 0.5 > -spec.v1 else -1e-3
        empty_lo = empty_hi - 0.1
        if empty_lo > -spec.v1 and all(not (empty_lo < x.energy < empty_hi) for x in states):
            tk_empty = spectrum.tk_measure(spec, empty_lo, empty_hi)
            checks.append(_check("tk.empty_window", abs(tk_empty), 1e-6))
    return checks


def _suite_smatrix(cfg: RunConfig) -> list[dict]:
    spec = cfg.potential
    rng = np.random.default_rng(42)
    ks = rng.uniform(0.05, 12.0, size=200)
    worst = max(abs(abs(spectrum.s_matrix(spec, k)) - 1.0) for k in ks)
    checks = [_check("smatrix.unitarity", worst, 1e-10)]
    k_hi = 1e3 * np.sqrt(spec.c * max(spec.v1, spec.v2))
    checks.append(_check("smatrix.high_energy_limit",
                         abs(spectrum.s_matrix(spec, k_hi) - 1.0), 1e-2))
    free = PotentialSpec(v1=1e-12, v2=0.0, a=spec.a, b=spec.b, c=spec.c)
    worst_free = max(abs(spectrum.jost(free, complex(k, 0.3)) - 1.0) for k in (0.5, 2.0, 7.0))
    checks.append(_check("smatrix.free_jost_is_one", worst_free, 1e-9))
    return checks


def _suite_membership(cfg: RunConfig) -> list[dict]:
    spec = cfg.potential
    checks = []
    good = transform.SmoothBump(spec.b + 0.1, spec.b + 2.0)
    report = transform.phi_membership(spec, good)
    checks.append(_check("membership.bump_passes", 0.0 if report.passes else 1.0, 0.5))

    class _GenericTail:
        support = (0.0, 40.0)

        def __call__(self, r):
            return self.deriv(r, 0)

        def deriv(self, r, order=1):
            r = np.asarray(r, dtype=float)
            # (r e^{-r})^{(n)} = (-1)^n (r - n) e^{-r}
            return (-1.0) ** order * (r - order) * np.exp(-r)

    report = transform.phi_membership(spec, _GenericTail())
    flat_at_steps = all(report.step_conditions.values())
    checks.append(_check("membership.generic_function_fails",
                         1.0 if flat_at_steps else 0.0, 0.5))
    states = spectrum.find_bound_states(spec)
    if states:
        phi1 = eigenfunctions.bound_state_function(spec, states[0])
        phi1_t = _BoundAsTest(phi1, eigenfunctions.tail_radius(spec, states[0].kappa))
        report = transform.phi_membership(spec, phi1_t)
        flat_at_steps = all(report.step_conditions.values())
        checks.append(_check("membership.bound_state_fails",
                             1.0 if flat_at_steps else 0.0, 0.5))
    return checks


class _BoundAsTest:
    """Adapter: a bound-state function presented as a test function."""

    def __init__(self, fn, r_max):
        self._fn = fn
        self.support = (0.0, float(r_max))

    def __call__(self, r):
        return self._fn(r)

    def deriv(self, r, order=1):
        return self._fn.deriv(r, order)


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    spec = cfg.potential
    msg = validate(spec)
    if msg is not None:
        print(f"invalid potential: violated invariant {msg!r}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    runners = {
        "matching": _suite_matching,
        "wronskian": _suite_wronskian,
        "green": _suite_green,
        "normalization": _suite_normalization,
        "parseval": _suite_parseval,
        "tk": _suite_tk,
        "smatrix": _suite_smatrix,
        "membership": _suite_membership,
    }
    if suite != "all" and suite not in runners:
        print(f"unknown suite {suite!r}; choose from {SUITES} or 'all'", file=sys.stderr)
        return EXIT_BAD_CONFIG
    names = list(SUITES) if suite == "all" else [suite]
    try:
        report = {"potential": {"v1": spec.v1, "v2": spec.v2, "a": spec.a,
                                "b": spec.b, "c": spec.c},
                  "suites": {}}
        all_pass = True
        for name in names:
            checks = runners[name](cfg)
            ok = all(c["pass"] for c in checks)
            all_pass &= ok
            report["suites"][name] = {"pass": ok, "checks": checks}
        report["pass"] = all_pass
    except (spectrum.ScanTooCoarse, spectrum.DegenerateRoot, coeffs.SingularEnergy,
            green.SpectrumHit, RuntimeError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    text = json.dumps(report, indent=1)
    _emit(cfg.out_path, text)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


# ----------------------------------------------------------------------------
# expand


class _SampledFunction:
    """Cubic-spline interpolant of CSV samples, clamped to zero off its support."""

    def __init__(self, r, values):
        from scipy.interpolate import CubicSpline

        self._spline = CubicSpline(r, values)
        self.support = (float(r[0]), float(r[-1]))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        lo, hi = self.support
        out = np.where((r >= lo) & (r <= hi), self._spline(r), 0.0)
        return out

    def deriv(self, r, order=1):
        r = np.asarray(r, dtype=float)
        lo, hi = self.support
        return np.where((r >= lo) & (r <= hi), self._spline(r, order), 0.0)


def cmd_expand(cfg: RunConfig, input_path: str) -> int:
    spec = cfg.potential
    msg = validate(spec)
    if msg is not None:
        print(f"invalid potential: violated invariant {msg!r}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    try:
        raw = np.genfromtxt(input_path, delimiter=",", names=True)
    except OSError as exc:
        print(f"cannot read {input_path}: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    r = np.atleast_1d(raw["r"])
    vals = np.atleast_1d(raw["re"]) + 1j * np.atleast_1d(raw["im"])
    if len(r) < 4:
        print("need at least 4 samples", file=sys.stderr)
        return EXIT_BAD_CONFIG
    nonzero = np.nonzero(np.abs(vals) > 0)[0]
    if len(nonzero) == 0:
        f = _SampledFunction(r, vals)
    else:
        i0, i1 = max(nonzero[0] - 1, 0), min(nonzero[-1] + 1, len(r) - 1)
        f = _SampledFunction(r[i0:i1 + 1], vals[i0:i1 + 1])
    if f.support[1] > cfg.r_max:
        print(f"samples extend beyond grid.r_max = {cfg.r_max}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    try:
        grid = cfg.grid()
        state = transform.decompose(spec, f, grid)
        rq, wq = transform.radial_nodes(spec, f.support, grid.k_max)
        rec = transform.reconstruct(spec, state, rq)
        num = quadrature.pairwise_sum(wq * np.abs(rec - f(rq)) ** 2)
        den = quadrature.pairwise_sum(wq * np.abs(f(rq)) ** 2)
        err = float(np.sqrt(num / max(den, 1e-300)))
        # smooth-membership warning: spline derivatives at the steps, orders <= 2
        warn = False
        sample = np.linspace(f.support[0], f.support[1], 257)
        for point in (spec.a, spec.b):
            if not f.support[0] < point < f.support[1]:
                continue
            for order in range(3):
                scale = float(np.max(np.abs(f.deriv(sample, order)))) or 1.0
                if abs(float(np.real(f.deriv(np.array([point]), order)[0]))) > 1e-6 * scale:
                    warn = True
    except (coeffs.SingularEnergy, RuntimeError) as exc:
        print(f"expansion failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    payload = state.to_json_dict()
    payload["round_trip_l2_error"] = err
    payload["phi_c_warning"] = bool(warn)
    _emit(cfg.out_path, json.dumps(payload, indent=1))
    return EXIT_OK


# ----------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wellbarrier",
        description="Spectral decomposition of the square well-barrier Hamiltonian",
    )
    parser.add_argument("--config", help="key-value configuration file")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), help="output format")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", help="bound states, density and S-matrix samples")

    p_eigen = sub.add_parser("eigen", help="dump an eigenfunction family as CSV")
    p_eigen.add_argument("--family", required=True,
                         help=f"one of {FAMILIES} or bound:n")
    p_eigen.add_argument("--energy", type=float, default=None)
    p_eigen.add_argument("--momentum", type=float, default=None)
    p_eigen.add_argument("--r-min", type=float, default=0.0)
    p_eigen.add_argument("--r-max", type=float, default=None)
    p_eigen.add_argument("--r-nodes", type=int, default=None)

    p_verify = sub.add_parser("verify", help="run invariant suites")
    p_verify.add_argument("--suite", default="all",
                          help=f"one of {SUITES} or 'all'")

    p_expand = sub.add_parser("expand", help="decompose a sampled function")
    p_expand.add_argument("input", help="CSV file with header r,re,im")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    threads = os.environ.get("RIGGED_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                print("RIGGED_THREADS must be >= 1", file=sys.stderr)
                return EXIT_BAD_CONFIG
        except ValueError:
            print("RIGGED_THREADS must be an integer", file=sys.stderr)
            return EXIT_BAD_CONFIG

    try:
        cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    except (OSError, ValueError) as exc:
        print(f"bad configuration: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    if args.out is not None:
        cfg.out_path = args.out
    if args.format is not None:
        cfg.out_format = args.format

    if args.command == "spectrum":
        return cmd_spectrum(cfg)
    if args.command == "eigen":
        r_max = args.r_max if args.r_max is not None else cfg.r_max
        r_nodes = args.r_nodes if args.r_nodes is not None else cfg.r_nodes
        return cmd_eigen(cfg, args.family, args.energy, args.momentum,
                         args.r_min, r_max, r_nodes)
    if args.command == "verify":
        return cmd_verify(cfg, args.suite)
    if args.command == "expand":
        return cmd_expand(cfg, args.input)
    return EXIT_BAD_CONFIG


if __name__ == "__main__":
    sys.exit(main())
