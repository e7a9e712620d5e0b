"""Bound states of the Manning-Rosen potential.

Closed-form levels and wavefunctions under the short-range centrifugal
approximation, a Numerov eigensolver for the exact radial operator, and
reproduction of the published level tables.
"""

from .core import (
    ATOMIC,
    PotentialParams,
    QuantumState,
    UnitSystem,
    effective_potential,
    force_constant,
    potential_minimum,
    potential_v,
    potential_v_cd,
)
from .errors import (
    ConvergenceError,
    DomainError,
    MRSolveError,
    NoBoundState,
    NoInteriorMinimum,
    NormalizationError,
)
from .kernels import BACKEND
from .oracle import SolverConfig, SpectrumEntry, approximation_error_report, numerov_eigenvalue
from .spectrum import (
    coulomb_limit,
    count_bound_states,
    critical_coupling,
    energy_nl,
    epsilon_nl,
    hulthen_energy,
    quantization_residual,
    shape_param_a,
)
from .wavefunctions import (
    RadialFunction,
    normalization_closed,
    normalization_quadrature,
    radial_wavefunction,
)

__version__ = "0.1.0"
