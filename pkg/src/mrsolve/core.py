"""Manning-Rosen potential: parameters, unit systems and pointwise evaluation.

The potential is

    V(r) = [-A y + alpha (alpha - 1) y**2] / (kappa b**2),   y = 1 / (exp(r/b) - 1)

with ``kappa = 2 mu / hbar**2``.  ``A`` and ``alpha`` are dimensionless and
``b`` carries the length unit of the active :class:`UnitSystem` (bohr in
atomic mode, angstrom in molecular mode).

All functions accept scalars or numpy arrays for ``r``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, NoInteriorMinimum

__all__ = [
    "PotentialParams",
    "UnitSystem",
    "QuantumState",
    "ATOMIC",
    "HBAR_C_EV_ANGSTROM",
    "AMU_EV",
    "potential_v",
    "potential_v_cd",
    "potential_minimum",
    "force_constant",
    "effective_potential",
    "centrifugal_factor",
]

Centrifugal = Literal["exact", "approximate"]

HBAR_C_EV_ANGSTROM = 1973.29
AMU_EV = 931.494e6
FINE_STRUCTURE = 1.0 / 137.035999084

_L_LETTERS = "spdfghiklmnoqrtuvwxyz"


@dataclass(frozen=True)
class PotentialParams:
    """Strength ``A``, shape ``alpha`` and range ``b`` of the potential."""

    A: float
    alpha: float
    b: float

    def __post_init__(self):
        for name in ("A", "alpha", "b"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite, got {getattr(self, name)!r}")
        if self.b <= 0:
            raise DomainError(f"range b must be positive, got {self.b!r}")

    @property
    def shape_product(self) -> float:
        """alpha (alpha - 1); invariant under alpha -> 1 - alpha."""
        return self.alpha * (self.alpha - 1.0)

    def mirrored(self) -> "PotentialParams":
        """Same potential with ``alpha`` replaced by ``1 - alpha``."""
        return PotentialParams(self.A, 1.0 - self.alpha, self.b)


@dataclass(frozen=True)
class UnitSystem:
    """Constants bundle fixing what "energy" and "length" mean.

    In ``atomic`` mode hbar = mu = e = 1 and lengths are in bohr, energies in
    hartree.  In ``molecular`` mode lengths are in angstrom and energies in eV;
    ``mu_amu`` is the reduced mass in atomic mass units and is converted with
    ``amu_to_energy`` (eV per amu).

    ``e2`` is the Coulomb coupling e**2 in energy * length, used only by the
    Hulthen/Coulomb special cases.
    """

    mode: Literal["atomic", "molecular"] = "atomic"
    hbar_c: float = HBAR_C_EV_ANGSTROM
    amu_to_energy: float = AMU_EV
    mu_amu: float = 1.0

    def __post_init__(self):
        if self.mode not in ("atomic", "molecular"):
            raise DomainError(f"unknown unit mode {self.mode!r}")
        if self.mode == "molecular":
            if not self.mu_amu > 0:
                raise DomainError(f"reduced mass must be positive, got {self.mu_amu!r}")
            if not (self.hbar_c > 0 and self.amu_to_energy > 0):
                raise DomainError("hbar_c and amu_to_energy must be positive")

    @classmethod
    def atomic(cls) -> "UnitSystem":
        return cls()

    @classmethod
    def molecular(
        cls,
        mu_amu: float,
        hbar_c: float = HBAR_C_EV_ANGSTROM,
        amu_to_energy: float = AMU_EV,
    ) -> "UnitSystem":
        return cls("molecular", hbar_c, amu_to_energy, mu_amu)

    @property
    def kappa(self) -> float:
        """2 mu / hbar**2 in 1 / (energy * length**2)."""
        if self.mode == "atomic":
            return 2.0
        return 2.0 * self.mu_amu * self.amu_to_energy / self.hbar_c**2

    @property
    def e2(self) -> float:
        if self.mode == "atomic":
            return 1.0
        return self.hbar_c * FINE_STRUCTURE

    @property
    def energy_unit(self) -> str:
        return "hartree" if self.mode == "atomic" else "eV"

    @property
    def length_unit(self) -> str:
        return "bohr" if self.mode == "atomic" else "angstrom"

    def energy_scale(self, b: float) -> float:
        """hbar**2 / (2 mu b**2): converts dimensionless energies to energy."""
        return 1.0 / (self.kappa * b * b)


ATOMIC = UnitSystem.atomic()


@dataclass(frozen=True, order=True)
class QuantumState:
    """Radial quantum number ``n`` (node count) and orbital number ``l``."""

    n: int
    l: int

    def __post_init__(self):
        for name in ("n", "l"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise DomainError(f"{name} must be a non-negative integer, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def principal(self) -> int:
        return self.n + self.l + 1

    @property
    def label(self) -> str:
        """Spectroscopic label, e.g. ``2p`` for n=0, l=1."""
        if self.l >= len(_L_LETTERS):
            return f"{self.principal}[l={self.l}]"
        return f"{self.principal}{_L_LETTERS[self.l]}"

    @classmethod
    def from_label(cls, label: str) -> "QuantumState":
        """Parse ``"2p"``, ``"6g"`` ... using n = N - l - 1."""
        m = re.fullmatch(r"\s*(\d+)\s*([a-zA-Z])\s*", label)
        if m is None:
            raise DomainError(f"cannot parse state label {label!r}")
        big_n = int(m.group(1))
        letter = m.group(2).lower()
        l = _L_LETTERS.find(letter)
        if l < 0:
            raise DomainError(f"unknown orbital letter {letter!r} in {label!r}")
        n = big_n - l - 1
        if n < 0:
            raise DomainError(f"state {label!r} needs N > l")
        return cls(n, l)

    def __str__(self) -> str:
        return self.label


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError("r must be strictly positive")
    return r


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def _y(x):
    # e^{-x} / (1 - e^{-x}) without cancellation at small x
    return 1.0 / np.expm1(x)


def potential_v(r, p: PotentialParams, u: UnitSystem = ATOMIC):
    """Evaluate V(r) in the energy unit of ``u``.

    Raises
    ------
    DomainError
        If any ``r`` is not strictly positive.
    """
    r = _check_r(r)
    y = _y(r / p.b)
    v = (-p.A * y + p.shape_product * y * y) * u.energy_scale(p.b)
    return _scalar_or_array(v)


def potential_v_cd(r, p: PotentialParams, u: UnitSystem = ATOMIC):
    """Same potential written as -(C z + D z**2) / (1 - z)**2 with z = exp(-r/b).

    ``C = A`` and ``D = -A - alpha (alpha - 1)``.  Kept separate from
    :func:`potential_v` so the two algebraic forms can check each other.
    """
    r = _check_r(r)
    z = np.exp(-r / p.b)
    c = p.A
    d = -p.A - p.shape_product
    one_minus_z = -np.expm1(-r / p.b)
    v = -(c * z + d * z * z) / one_minus_z**2 * u.energy_scale(p.b)
    return _scalar_or_array(v)


def _require_minimum(p: PotentialParams) -> float:
    c = p.shape_product
    if not c > 0:
        raise NoInteriorMinimum(
            f"alpha(alpha-1) = {c:.6g} must be positive for a minimum at r > 0"
        )
    if not p.A > 0:
        raise NoInteriorMinimum(f"A = {p.A:.6g} must be positive for a minimum at r > 0")
    return c


def potential_minimum(p: PotentialParams, u: UnitSystem = ATOMIC) -> tuple[float, float]:
    """Location ``r0`` and depth ``V(r0)`` of the interior minimum.

    The minimum sits where y = A / (2 alpha (alpha - 1)), i.e.
    r0 = b ln(1 + 2 alpha (alpha - 1) / A).
    """
    c = _require_minimum(p)
    r0 = p.b * math.log1p(2.0 * c / p.A)
    vmin = -p.A**2 / (4.0 * c) * u.energy_scale(p.b)
    return r0, vmin


def force_constant(p: PotentialParams, u: UnitSystem = ATOMIC) -> float:
    """Curvature d2V/dr2 at the minimum, in energy / length**2."""
    c = _require_minimum(p)
    num = p.A**2 * (p.A + 2.0 * c) ** 2
    return num / (8.0 * c**3 * u.kappa * p.b**4)


def centrifugal_factor(r, b: float, centrifugal: Centrifugal = "exact"):
    """1/r**2, or its short-range replacement exp(-r/b) / (b (1 - exp(-r/b)))**2."""
    r = _check_r(r)
    if centrifugal == "exact":
        out = 1.0 / (r * r)
    elif centrifugal == "approximate":
        x = r / b
        out = 1.0 / (4.0 * b * b * np.sinh(0.5 * x) ** 2)
    else:
        raise DomainError(f"centrifugal must be 'exact' or 'approximate', got {centrifugal!r}")
    return _scalar_or_array(out)


def effective_potential(
    r,
    p: PotentialParams,
    l: int,
    centrifugal: Centrifugal = "exact",
    u: UnitSystem = ATOMIC,
):
    """V(r) plus the centrifugal barrier hbar**2 l(l+1) / (2 mu) * factor(r)."""
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    cf = centrifugal_factor(r, p.b, centrifugal)
    return _scalar_or_array(potential_v(r, p, u) + l * (l + 1) * np.asarray(cf) / u.kappa)
