"""Normalised radial wavefunctions R_nl(r) = N z**eps (1 - z)**(1 + Lambda) P_n(1 - 2z).

Here z = exp(-r/b) and P_n is the Jacobi polynomial with superscripts
(2 eps, 2 Lambda + 1).  The constant N is obtained either from the
closed-form double sum over Beta integrals or from direct quadrature of the
norm integral in z.
"""

from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy import integrate

from .core import ATOMIC, PotentialParams, QuantumState, UnitSystem
from .errors import ConvergenceError, DomainError, NormalizationError
from .special import JacobiParams, jacobi_gamma_form, log_beta_integral_I, log_gamma
from .spectrum import shape_params

__all__ = [
    "RadialFunction",
    "radial_unnormalized",
    "norm_integral_closed",
    "norm_integral_quadrature",
    "normalization_closed",
    "normalization_quadrature",
    "radial_wavefunction",
    "default_grid",
    "count_nodes",
]

log = logging.getLogger(__name__)

NormMethod = Literal["closed_form", "quadrature"]

_MAX_CANCELLATION = 1e6


def _jacobi(s: QuantumState, eps: float, lam: float) -> JacobiParams:
    return JacobiParams(s.n, 2.0 * eps, 2.0 * lam + 1.0)


def radial_unnormalized(s: QuantumState, p: PotentialParams, r):
    """z**eps (1 - z)**(1 + Lambda) P_n^(2eps, 2Lambda+1)(1 - 2z) at radius ``r``."""
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError("r must be strictly positive")
    sp = shape_params(s, p)
    x = r / p.b
    z = np.exp(-x)
    one_minus_z = -np.expm1(-x)
    poly = jacobi_gamma_form(_jacobi(s, sp.epsilon, sp.Lambda), z)
    out = np.exp(-sp.epsilon * x) * one_minus_z ** (1.0 + sp.Lambda) * poly
    return float(out) if out.ndim == 0 else out


def _rising(x: float, k: int) -> float:
    """Pochhammer (x)_k for k >= -1, as a plain product."""
    if k == -1:
        return 1.0 / (x - 1.0)
    out = 1.0
    for i in range(k):
        out *= x + i
    return out


def _norm_terms(s: QuantumState, p: PotentialParams, shifted_gamma: bool) -> tuple[float, list[float]]:
    """Common log prefactor and the signed terms of the double sum.

    Each term is a product of Gamma ratios times the Beta integral of
    :func:`mrsolve.special.beta_integral_I`.  All ratios except one shared
    prefactor differ by integer shifts, so they are formed as finite products
    rather than lgamma differences.  The sum alternates and can cancel by
    several orders of magnitude, which would magnify lgamma round-off.
    """
    sp = shape_params(s, p)
    n, lam = s.n, sp.Lambda
    c = 2.0 * sp.epsilon
    lam2 = 2.0 * lam
    big = n + c + lam2 + 2.0
    # shared: Gamma(n+2L+2) Gamma(n+c+1)^2 / (Gamma(n+c+2L+2) Gamma(c+1))
    log_head = (
        log_gamma(n + lam2 + 2.0)
        + 2.0 * log_gamma(n + c + 1.0)
        - log_gamma(big)
        - log_gamma(c + 1.0)
    )
    # the Beta integral exists only where its exponents are admissible
    log_beta_integral_I(n, n, 0, sp.epsilon, lam)
    fact = [math.factorial(k) for k in range(n + 1)]
    terms = []
    for p_ in range(n + 1):
        for r in range(n + 1):
            # Gamma(big+r) Gamma(p+2L+3) Gamma(a0) / (Gamma(p+2L+2) Gamma(a0+p+2L+3)), a0+p+2L+3 = big+r+1
            t = (p_ + lam2 + 2.0) / (big + r)
            # Gamma(n+c+r-p) / Gamma(n+c-p+1) and Gamma(c+1) / Gamma(c+r+1)
            t *= _rising(n + c - p_ + 1.0, r - 1) / _rising(c + 1.0, r)
            t /= fact[p_] * fact[r] * fact[n - p_] * fact[n - r]
            if shifted_gamma:
                t *= n + c + r - p_
            terms.append(-t if (n + p_ + r) % 2 else t)
    return log_head, terms


def norm_integral_closed(
    s: QuantumState, p: PotentialParams, *, shifted_gamma: bool = False
) -> float:
    """b times the squared-norm integral, from the double sum over Beta integrals.

    ``shifted_gamma=True`` evaluates the variant of the sum in which each Beta
    integral carries Gamma(a0 + 1) in place of Gamma(a0) (a0 = n + 2 eps + r - p).
    That variant is wrong by a factor 2 eps at n = 0 and is kept only so the
    discrepancy can be demonstrated.
    """
    log_head, terms = _norm_terms(s, p, shifted_gamma)
    return p.b * math.exp(log_head) * math.fsum(terms)


def norm_integral_quadrature(s: QuantumState, p: PotentialParams) -> float:
    """b * int_0^1 z**(2eps-1) (1-z)**(2Lambda+2) P_n(1-2z)**2 dz by adaptive quadrature.

    The algebraic end-point weights are handled exactly by QUADPACK's QAWS
    rule, so only the squared polynomial is sampled.
    """
    sp = shape_params(s, p)
    jp = _jacobi(s, sp.epsilon, sp.Lambda)
    val, abserr, info = integrate.quad(
        lambda z: jacobi_gamma_form(jp, z) ** 2,
        0.0,
        1.0,
        weight="alg",
        wvar=(2.0 * sp.epsilon - 1.0, 2.0 * sp.Lambda + 2.0),
        epsabs=0.0,
        epsrel=1e-13,
        limit=200,
        full_output=1,
    )[:3]
    if not np.isfinite(val) or abserr > 1e-10 * abs(val):
        raise ConvergenceError(
            f"norm quadrature for {s.label} did not converge "
            f"(estimate {val!r}, error {abserr!r})",
            estimate=val,
        )
    return p.b * val


def normalization_closed(
    s: QuantumState, p: PotentialParams, u: UnitSystem = ATOMIC
) -> float:
    """N_nl = 1 / sqrt(norm_integral_closed).

    Raises
    ------
    NormalizationError
        If the double sum is non-positive, or cancels so strongly
        (sum |t| / |sum t| > 1e6) that fewer than ~10 digits survive.
    """
    log_head, terms = _norm_terms(s, p, False)
    total = math.fsum(terms)
    if not total > 0:
        raise NormalizationError(f"closed-form norm integral for {s.label} is {total!r}")
    cond = math.fsum(abs(t) for t in terms) / total
    if cond > _MAX_CANCELLATION:
        raise NormalizationError(
            f"closed-form norm sum for {s.label} cancels by {cond:.2g}; too few digits left"
        )
    return 1.0 / math.sqrt(p.b * math.exp(log_head) * total)


def normalization_quadrature(
    s: QuantumState, p: PotentialParams, u: UnitSystem = ATOMIC
) -> float:
    return 1.0 / math.sqrt(norm_integral_quadrature(s, p))


def count_nodes(values, rel_floor: float = 1e-10) -> int:
    """Sign changes between consecutive samples, ignoring near-zero samples."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return 0
    floor = rel_floor * np.max(np.abs(v))
    signs = np.sign(v[np.abs(v) > floor])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def default_grid(s: QuantumState, p: PotentialParams, n_points: int = 2000) -> np.ndarray:
    """Log-spaced radii from 1e-4 b out to where the tail has decayed ~exp(-40)."""
    eps = shape_params(s, p).epsilon
    x_max = max(40.0, 40.0 / eps)
    return p.b * np.geomspace(1e-4, x_max, n_points)


@dataclass(frozen=True)
class RadialFunction:
    """Sampled normalised radial function with its provenance."""

    state: QuantumState
    params: PotentialParams
    norm_const: float
    norm_method: NormMethod
    r: np.ndarray = field(repr=False)
    R: np.ndarray = field(repr=False)

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.r.tolist(), self.R.tolist()))

    def node_count(self) -> int:
        return count_nodes(self.R)

    def norm_on_grid(self) -> float:
        """Trapezoid estimate of int |R|**2 dr over the sampled grid."""
        return float(integrate.trapezoid(self.R**2, self.r))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("r,R\n")
        for r, val in zip(self.r, self.R):
            buf.write(f"{r!r},{val!r}\n")
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "state": self.state.label,
            "n": self.state.n,
            "l": self.state.l,
            "params": {"A": self.params.A, "alpha": self.params.alpha, "b": self.params.b},
            "norm_const": self.norm_const,
            "norm_method": self.norm_method,
            "samples": [{"r": r, "R": v} for r, v in self.samples],
        }


def radial_wavefunction(
    s: QuantumState,
    p: PotentialParams,
    u: UnitSystem = ATOMIC,
    grid=None,
    method: NormMethod = "closed_form",
) -> RadialFunction:
    """Sample the normalised R_nl on ``grid`` (default: :func:`default_grid`).

    A non-positive closed-form norm falls back to quadrature with a warning.
    """
    grid = default_grid(s, p) if grid is None else np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("grid must be a non-empty 1-d sequence")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be strictly positive and ascending")
    if method == "closed_form":
        try:
            norm = normalization_closed(s, p, u)
        except NormalizationError as exc:
            log.warning("%s; falling back to quadrature", exc)
            norm, method = normalization_quadrature(s, p, u), "quadrature"
    elif method == "quadrature":
        norm = normalization_quadrature(s, p, u)
    else:
        raise DomainError(f"unknown normalisation method {method!r}")
    values = norm * np.asarray(radial_unnormalized(s, p, grid))
    return RadialFunction(s, p, norm, method, grid, values)
