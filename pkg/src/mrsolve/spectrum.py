"""Closed-form bound-state spectrum under the short-range centrifugal approximation.

With z = exp(-r/b) the radial equation becomes hypergeometric and the levels
follow from the polynomial quantisation condition.  Everything here is
dimensionless except the final energies, which are scaled by
hbar**2 / (2 mu b**2) from the :class:`~mrsolve.core.UnitSystem`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ATOMIC, PotentialParams, QuantumState, UnitSystem
from .errors import DomainError, NoBoundState

__all__ = [
    "ShapeParams",
    "shape_param_a",
    "lambda_param",
    "shape_params",
    "critical_coupling",
    "is_bound",
    "epsilon_nl",
    "energy_nl",
    "count_bound_states",
    "quantization_residual",
    "hulthen_energy",
    "coulomb_limit",
]


@dataclass(frozen=True)
class ShapeParams:
    a: float
    Lambda: float
    epsilon: float


def shape_param_a(alpha: float, l: int) -> float:
    """a = sqrt((1 - 2 alpha)**2 + 4 l (l + 1)); below 1 only for l = 0, 0 < alpha < 1."""
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    return math.sqrt((1.0 - 2.0 * alpha) ** 2 + 4.0 * l * (l + 1))


def lambda_param(alpha: float, l: int) -> float:
    """Effective angular parameter (a - 1) / 2; equals ``l`` for alpha in {0, 1}."""
    return 0.5 * (shape_param_a(alpha, l) - 1.0)


def critical_coupling(n: int, l: int, alpha: float) -> float:
    """Coupling A at which level (n, l) reaches zero binding."""
    lam = lambda_param(alpha, l)
    return (n + 1) ** 2 + l * (l + 1) + (2 * n + 1) * lam


def _signed_epsilon(n: int, l: int, alpha: float, A: float) -> float:
    lam = lambda_param(alpha, l)
    return (A - critical_coupling(n, l, alpha)) / (2.0 * (n + 1 + lam))


def is_bound(s: QuantumState, p: PotentialParams) -> bool:
    return p.A > critical_coupling(s.n, s.l, p.alpha)


def epsilon_nl(s: QuantumState, p: PotentialParams) -> float:
    """Dimensionless decay constant eps = sqrt(-2 mu b**2 E / hbar**2) > 0.

    Raises
    ------
    NoBoundState
        If ``A`` does not exceed the critical coupling.
    """
    ac = critical_coupling(s.n, s.l, p.alpha)
    if not p.A > ac:
        raise NoBoundState(
            f"no bound {s.label} state: A = {p.A:.10g} <= A_c = {ac:.10g}", ac
        )
    return _signed_epsilon(s.n, s.l, p.alpha, p.A)


def shape_params(s: QuantumState, p: PotentialParams) -> ShapeParams:
    a = shape_param_a(p.alpha, s.l)
    return ShapeParams(a, 0.5 * (a - 1.0), epsilon_nl(s, p))


def energy_nl(
    s: QuantumState,
    p: PotentialParams,
    u: UnitSystem = ATOMIC,
    *,
    allow_threshold: bool = False,
) -> float:
    """Bound-state energy -hbar**2 eps**2 / (2 mu b**2).

    ``allow_threshold=True`` additionally accepts A == A_c (returning the
    zero-energy threshold) instead of raising; it never accepts A < A_c.
    """
    if allow_threshold:
        ac = critical_coupling(s.n, s.l, p.alpha)
        if p.A < ac:
            raise NoBoundState(
                f"no bound {s.label} state: A = {p.A:.10g} < A_c = {ac:.10g}", ac
            )
        eps = _signed_epsilon(s.n, s.l, p.alpha, p.A)
    else:
        eps = epsilon_nl(s, p)
    return -u.energy_scale(p.b) * eps * eps


def count_bound_states(p: PotentialParams, l: int, n_max: int) -> int:
    """Number of n in [0, n_max] whose level (n, l) is bound."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    return sum(p.A > critical_coupling(n, l, p.alpha) for n in range(n_max + 1))


def quantization_residual(
    s: QuantumState, p: PotentialParams, epsilon: float | None = None
) -> float:
    """lambda - lambda_n of the hypergeometric reduction, at ``epsilon``.

    By default ``epsilon`` is the closed-form value, for which the residual
    vanishes up to round-off.
    """
    a = shape_param_a(p.alpha, s.l)
    if epsilon is None:
        epsilon = epsilon_nl(s, p)
    lam = p.A - s.l * (s.l + 1) - (1.0 + a) * (0.5 + epsilon)
    lam_n = s.n * (1.0 + s.n + a + 2.0 * epsilon)
    return lam - lam_n


def hulthen_energy(
    s: QuantumState, strength: float, delta: float, u: UnitSystem = ATOMIC
) -> float:
    """Level of the Hulthen potential -Ze**2 delta exp(-delta r) / (1 - exp(-delta r)).

    ``strength`` is Z e**2 (energy * length) and ``delta`` the inverse
    screening length.  The equivalent Manning-Rosen coupling is
    A = kappa Z e**2 / delta with b = 1 / delta.
    """
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    b = 1.0 / delta
    A = u.kappa * strength * b
    big_n = s.principal
    if not A > big_n**2:
        raise NoBoundState(
            f"no bound Hulthen {s.label} state: A = {A:.10g} <= {big_n**2}", float(big_n**2)
        )
    return -((A - big_n**2) ** 2) / (4.0 * u.kappa * b * b * big_n**2)


def coulomb_limit(s: QuantumState, Z: float, u: UnitSystem = ATOMIC) -> float:
    """Hydrogen-like level -eps0 / (n + l + 1)**2, eps0 = Z**2 mu e**4 / (2 hbar**2)."""
    strength = Z * u.e2
    return -u.kappa * strength * strength / (4.0 * s.principal**2)
