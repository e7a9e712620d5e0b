"""Log-gamma, Jacobi polynomials in two explicit forms, and the Beta-type integral.

Gamma ratios are always combined in log space: for the wells of interest the
Jacobi superscript 2*eps is of order 40 and plain Gamma products overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "JacobiParams",
    "log_gamma",
    "log_binomial",
    "jacobi_sum_form",
    "jacobi_gamma_form",
    "jacobi_gamma_coefficients",
    "beta_integral_I",
    "log_beta_integral_I",
]


@dataclass(frozen=True)
class JacobiParams:
    """Degree ``n`` and superscripts ``rho``, ``nu`` (both > -1)."""

    n: int
    rho: float
    nu: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"degree must be a non-negative integer, got {self.n!r}")
        if not (self.rho > -1 and self.nu > -1):
            raise DomainError(
                f"Jacobi superscripts must exceed -1, got ({self.rho!r}, {self.nu!r})"
            )


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


def log_binomial(x: float, k: int) -> float:
    """ln C(x, k) for real x with x - k + 1 > 0."""
    return log_gamma(x + 1.0) - log_gamma(k + 1.0) - log_gamma(x - k + 1.0)


def jacobi_sum_form(j: JacobiParams, xi):
    """P_n^(rho, nu)(xi) from the product-of-binomials sum in (1 - xi), (1 + xi).

    P = 2**-n sum_p (-1)**(n-p) C(n+rho, p) C(n+nu, n-p) (1-xi)**(n-p) (1+xi)**p
    """
    xi = np.asarray(xi, dtype=float)
    n = j.n
    one_m = 1.0 - xi
    one_p = 1.0 + xi
    total = np.zeros_like(xi)
    for p in range(n + 1):
        c = math.exp(
            log_binomial(n + j.rho, p) + log_binomial(n + j.nu, n - p) - n * math.log(2.0)
        )
        if (n - p) % 2:
            c = -c
        total = total + c * one_m ** (n - p) * one_p**p
    return float(total) if total.ndim == 0 else total


def jacobi_gamma_coefficients(j: JacobiParams) -> np.ndarray:
    """Power-series coefficients c_r with P_n^(rho, nu)(1 - 2z) = sum_r c_r z**r."""
    n = j.n
    if n == 0:
        return np.ones(1)
    s = n + j.rho + j.nu + 1.0
    head = log_gamma(n + j.rho + 1.0) - log_gamma(s)
    coeffs = np.empty(n + 1)
    for r in range(n + 1):
        logc = (
            head
            + log_binomial(n, r)
            - log_gamma(n + 1.0)
            + log_gamma(s + r)
            - log_gamma(r + j.rho + 1.0)
        )
        coeffs[r] = (-1.0) ** r * math.exp(logc)
    return coeffs


def jacobi_gamma_form(j: JacobiParams, z):
    """P_n^(rho, nu)(1 - 2z) from the ascending Gamma-ratio series in z."""
    z = np.asarray(z, dtype=float)
    out = np.polynomial.polynomial.polyval(z, jacobi_gamma_coefficients(j))
    return float(out) if np.ndim(out) == 0 else out


def _beta_exponents(n: int, p: int, r: int, eps: float, Lambda: float) -> tuple[float, float]:
    if not (0 <= p <= n and 0 <= r <= n):
        raise DomainError(f"need 0 <= p, r <= n, got n={n}, p={p}, r={r}")
    a0 = n + 2.0 * eps + r - p
    if not a0 > 0:
        raise DomainError(f"z exponent n + 2 eps + r - p = {a0!r} must be positive")
    c = p + 2.0 * Lambda + 3.0
    if not c > 0:
        raise DomainError(f"(1 - z) exponent p + 2 Lambda + 2 = {c - 1!r} must exceed -1")
    return a0, c


def log_beta_integral_I(n: int, p: int, r: int, eps: float, Lambda: float) -> float:
    """ln of :func:`beta_integral_I`."""
    a0, c = _beta_exponents(n, p, r, eps, Lambda)
    return log_gamma(a0 + 1.0) - math.log(a0) + log_gamma(c) - log_gamma(a0 + c)


def beta_integral_I(n: int, p: int, r: int, eps: float, Lambda: float) -> float:
    """int_0^1 z**(n+2eps+r-p-1) (1-z)**(p+2Lambda+2) dz in closed form.

    Equals Gamma(a0 + 1) Gamma(p + 2 Lambda + 3) / (a0 Gamma(a0 + p + 2 Lambda + 3))
    with a0 = n + 2 eps + r - p.
    """
    return math.exp(log_beta_integral_I(n, p, r, eps, Lambda))
