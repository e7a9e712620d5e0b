"""Numerov shooting eigensolver for the radial equation.

This is the independent check on the closed-form spectrum: it integrates

    u''(r) = kappa [V_eff(r) - E] u(r)

directly, with either the true 1/r**2 barrier or its short-range
replacement, and never touches the hypergeometric machinery.

Numerics
--------
The equation is solved in x = r / b (so only A, alpha and l matter) and then
on the logarithmic variable t = ln x with u = sqrt(x) phi, which turns it into
phi''(t) = g(t) phi with

    g(t) = x**2 [W(x) - e] + 1/4,   W = kappa b**2 V_eff,  e = kappa b**2 E.

The log grid resolves the Coulomb-like core and the exponential tail with
one uniform step.  Near the origin phi ~ x**(Lambda + 1/2), far out
u ~ exp(-sqrt(-e) x).  A level is bracketed by counting nodes of the outward
solution, then refined by Brent's method on the normalised discrete
Wronskian of the outward and inward solutions at the outer turning point.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .core import ATOMIC, PotentialParams, QuantumState, UnitSystem
from .errors import ConvergenceError, DomainError
from .spectrum import energy_nl, lambda_param

__all__ = [
    "SolverConfig",
    "NumerovResult",
    "SpectrumEntry",
    "reduced_potential",
    "numerov_solve",
    "numerov_eigenvalue",
    "approximation_error_report",
]

log = logging.getLogger(__name__)

Centrifugal = Literal["exact", "approximate"]

_TAIL_DECAY = 40.0
_PHASE_STEP = 0.02


@dataclass(frozen=True)
class SolverConfig:
    """Grid and search settings, all in the length/energy units of the run.

    ``energy_bracket`` is ``(E_lo, E_hi)``; ``tol_energy`` is the absolute
    energy tolerance of the final refinement.
    """

    r_min: float
    r_max: float
    n_points: int
    energy_bracket: tuple[float, float]
    tol_energy: float = 1e-13
    max_bisections: int = 200

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise DomainError(f"need 0 < r_min < r_max, got {self.r_min!r}, {self.r_max!r}")
        if self.n_points < 10:
            raise DomainError(f"n_points too small: {self.n_points}")
        if not self.tol_energy > 0:
            raise DomainError("tol_energy must be positive")
        lo, hi = self.energy_bracket
        if not lo < hi:
            raise DomainError(f"energy bracket must be ordered, got {self.energy_bracket!r}")

    @classmethod
    def for_state(
        cls,
        s: QuantumState,
        p: PotentialParams,
        centrifugal: Centrifugal = "exact",
        u: UnitSystem = ATOMIC,
        *,
        refine: float = 1.0,
        min_points: int = 10_000,
    ) -> "SolverConfig":
        """Defaults seeded from the closed-form level.

        The bracket is [1.5 E, 0.5 E] around the closed-form energy E.  The
        step is chosen so the largest local phase advance per step is
        about 0.02 (divided by ``refine``).
        """
        e_closed = energy_nl(s, p, u)
        scale = u.energy_scale(p.b)
        e_lo, e_hi = 1.5 * e_closed / scale, 0.5 * e_closed / scale
        x_min = 1e-6
        x_turn = _outer_turning_point(p, s.l, centrifugal, e_hi)
        x_max = x_turn + _TAIL_DECAY / math.sqrt(-e_hi)
        x_probe = np.geomspace(x_min, x_max, 4000)
        g = x_probe**2 * (reduced_potential(x_probe, p, s.l, centrifugal) - e_lo) + 0.25
        k_max = math.sqrt(float(np.max(np.abs(g))))
        span = math.log(x_max / x_min)
        n_points = max(min_points, int(math.ceil(span * k_max / _PHASE_STEP * refine)) + 1)
        return cls(
            r_min=x_min * p.b,
            r_max=x_max * p.b,
            n_points=n_points,
            energy_bracket=(e_lo * scale, e_hi * scale),
        )


@dataclass(frozen=True)
class NumerovResult:
    energy: float
    r: np.ndarray
    u: np.ndarray
    nodes: int
    bracket: tuple[float, float]
    evaluations: int


@dataclass(frozen=True)
class SpectrumEntry:
    """Closed-form level next to the two oracle levels for one state."""

    state: QuantumState
    e_closed: float
    e_oracle_exact: float
    e_oracle_approx: float

    @property
    def err_approx(self) -> float:
        """Error of the closed form against the true (exact-barrier) operator."""
        return self.e_closed - self.e_oracle_exact

    def as_dict(self) -> dict:
        return {
            "state": self.state.label,
            "n": self.state.n,
            "l": self.state.l,
            "e_closed": self.e_closed,
            "e_oracle_exact": self.e_oracle_exact,
            "e_oracle_approx": self.e_oracle_approx,
            "err_approx": self.err_approx,
        }


def reduced_potential(x, p: PotentialParams, l: int, centrifugal: Centrifugal):
    """kappa b**2 V_eff as a function of x = r / b."""
    if centrifugal not in ("exact", "approximate"):
        raise DomainError(f"centrifugal must be 'exact' or 'approximate', got {centrifugal!r}")
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        y = 1.0 / np.expm1(x)
        w = -p.A * y + p.shape_product * y * y
        if l and centrifugal == "exact":
            w = w + l * (l + 1) / (x * x)
        elif l:
            w = w + l * (l + 1) / (4.0 * np.sinh(0.5 * x) ** 2)
    return w


def _outer_turning_point(p, l, centrifugal, e) -> float:
    x = np.geomspace(1e-6, 1e5, 20_000)
    w = reduced_potential(x, p, l, centrifugal)
    allowed = np.nonzero(w < e)[0]
    if allowed.size == 0:
        return float(x[np.argmin(w)])
    return float(x[allowed[-1]])


class _Shooter:
    """Numerov integration on a fixed log grid for one (p, l, mode)."""

    def __init__(self, p, l, centrifugal, cfg: SolverConfig):
        self.x = np.geomspace(cfg.r_min / p.b, cfg.r_max / p.b, cfg.n_points)
        t = np.log(self.x)
        self.dt = (t[-1] - t[0]) / (cfg.n_points - 1)
        self.h2 = self.dt * self.dt
        self.x2 = self.x * self.x
        self.base = self.x2 * reduced_potential(self.x, p, l, centrifugal) + 0.25
        s = lambda_param(p.alpha, l) + 1.0
        c1 = -(p.A + p.shape_product) / (2.0 * s)
        x0, x1 = self.x[0], self.x[1]
        self.start = (
            x0 ** (s - 0.5) * (1.0 + c1 * x0),
            x1 ** (s - 0.5) * (1.0 + c1 * x1),
        )
        self.out = np.empty(cfg.n_points)
        self.inw = np.empty(cfg.n_points)
        self.evaluations = 0

    def g(self, e):
        return self.base - e * self.x2

    def nodes(self, e) -> int:
        self.evaluations += 1
        n = self.x.size
        return kernels.integrate_outward(self.g(e), self.h2, *self.start, n - 1, self.out)

    def matching_index(self, e) -> int:
        allowed = np.nonzero(self.g(e) < 0)[0]
        m = int(allowed[-1]) if allowed.size else int(np.argmin(self.g(e)))
        return min(max(m, 2), self.x.size - 3)

    def _tail_start(self, e):
        k = math.sqrt(-e) if e < 0 else 0.0
        xl, xn = self.x[-1], self.x[-2]
        return 1.0 / math.sqrt(xl), math.exp(-k * (xn - xl)) / math.sqrt(xn)

    def mismatch(self, e, m) -> float:
        self.evaluations += 1
        g = self.g(e)
        kernels.integrate_outward(g, self.h2, *self.start, m + 1, self.out)
        kernels.integrate_inward(g, self.h2, *self._tail_start(e), m, self.inw)
        o0, o1 = self.out[m], self.out[m + 1]
        i0, i1 = self.inw[m], self.inw[m + 1]
        return (o1 * i0 - i1 * o0) / (abs(o0 * i0) + abs(o1 * i1))

    def eigenfunction(self, e, m) -> np.ndarray:
        g = self.g(e)
        kernels.integrate_outward(g, self.h2, *self.start, m + 1, self.out)
        kernels.integrate_inward(g, self.h2, *self._tail_start(e), m, self.inw)
        phi = np.empty_like(self.x)
        phi[: m + 1] = self.out[: m + 1]
        phi[m + 1 :] = self.inw[m + 1 :] * (self.out[m] / self.inw[m])
        return phi * np.sqrt(self.x)


def _isolate(sh: _Shooter, n: int, lo: float, hi: float, max_steps: int):
    """Shrink/grow [lo, hi] until exactly level n lies inside it."""
    steps = 0
    n_lo = sh.nodes(lo)
    while n_lo > n:
        width = hi - lo
        hi, lo = lo, lo - 2.0 * width
        n_lo = sh.nodes(lo)
        steps += 1
        if steps > max_steps:
            raise ConvergenceError("could not push lower bracket below the level", (lo, hi))
    n_hi = sh.nodes(hi)
    while n_hi <= n:
        lo, n_lo = hi, n_hi
        hi = 0.5 * hi
        n_hi = sh.nodes(hi)
        steps += 1
        if steps > max_steps or hi > -1e-300:
            raise ConvergenceError(
                f"node count {n_hi} never exceeds n={n}; level may be unbound on this grid",
                (lo, hi),
            )
    if steps:
        log.info("energy bracket widened %d time(s) to (%g, %g)", steps, lo, hi)
    while not (n_lo == n and n_hi == n + 1):
        mid = 0.5 * (lo + hi)
        k = sh.nodes(mid)
        if k <= n:
            lo, n_lo = mid, k
        else:
            hi, n_hi = mid, k
        steps += 1
        if steps > max_steps:
            raise ConvergenceError("node bisection did not isolate the level", (lo, hi))
    return lo, hi, steps


def numerov_solve(
    p: PotentialParams,
    l: int,
    n: int,
    centrifugal: Centrifugal = "exact",
    cfg: SolverConfig | None = None,
    u: UnitSystem = ATOMIC,
) -> NumerovResult:
    """Locate level ``n`` of angular momentum ``l`` and return it with its eigenfunction.

    Raises
    ------
    ConvergenceError
        If the bracket cannot be made to contain exactly the requested
        level, or the refined eigenfunction has the wrong node count.
    """
    if n < 0 or l < 0:
        raise DomainError(f"need n, l >= 0, got n={n}, l={l}")
    if cfg is None:
        cfg = SolverConfig.for_state(QuantumState(n, l), p, centrifugal, u)
    scale = u.energy_scale(p.b)
    sh = _Shooter(p, l, centrifugal, cfg)
    lo, hi = (v / scale for v in cfg.energy_bracket)
    if hi >= 0:
        hi = min(-1e-12 * abs(lo), lo / 2) if lo < 0 else -1e-12
    lo, hi, steps = _isolate(sh, n, lo, hi, cfg.max_bisections)
    xtol = cfg.tol_energy / scale

    m = sh.matching_index(0.5 * (lo + hi))
    f_lo, f_hi = sh.mismatch(lo, m), sh.mismatch(hi, m)
    while f_lo * f_hi > 0 and hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if sh.nodes(mid) <= n:
            lo = mid
            f_lo = sh.mismatch(lo, m)
        else:
            hi = mid
            f_hi = sh.mismatch(hi, m)
        steps += 1
        if steps > cfg.max_bisections:
            raise ConvergenceError("mismatch never changed sign in the bracket", (lo * scale, hi * scale))
    if f_lo * f_hi <= 0:
        e = brentq(sh.mismatch, lo, hi, args=(m,), xtol=xtol, rtol=4 * np.finfo(float).eps)
    else:
        e = 0.5 * (lo + hi)

    uvals = sh.eigenfunction(e, m)
    nodes = _interior_nodes(uvals)
    if nodes != n:
        raise ConvergenceError(
            f"converged eigenfunction has {nodes} nodes, expected {n}",
            (lo * scale, hi * scale),
            e * scale,
        )
    return NumerovResult(
        energy=e * scale,
        r=sh.x * p.b,
        u=uvals,
        nodes=nodes,
        bracket=(lo * scale, hi * scale),
        evaluations=sh.evaluations,
    )


def _interior_nodes(u: np.ndarray) -> int:
    floor = 1e-8 * np.max(np.abs(u))
    s = np.sign(u[np.abs(u) > floor])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def numerov_eigenvalue(
    p: PotentialParams,
    l: int,
    n: int,
    centrifugal: Centrifugal = "exact",
    cfg: SolverConfig | None = None,
    u: UnitSystem = ATOMIC,
) -> float:
    """Energy of level (n, l) of the radial operator with the chosen barrier."""
    return numerov_solve(p, l, n, centrifugal, cfg, u).energy


def approximation_error_report(
    p: PotentialParams,
    states: Sequence[QuantumState],
    u: UnitSystem = ATOMIC,
    *,
    refine: float = 1.0,
) -> list[SpectrumEntry]:
    """Closed-form level vs. exact- and approximate-barrier oracle levels."""
    entries = []
    for s in states:
        e_closed = energy_nl(s, p, u)
        levels = {}
        for mode in ("exact", "approximate"):
            cfg = SolverConfig.for_state(s, p, mode, u, refine=refine)
            levels[mode] = numerov_eigenvalue(p, s.l, s.n, mode, cfg, u)
        entries.append(SpectrumEntry(s, e_closed, levels["exact"], levels["approximate"]))
    return entries
