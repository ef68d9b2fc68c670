"""
The classical (kinetic-free) mean-field problem over nonnegative measures.
"""

from gpsolid.classical.checks import (
    EclEstimate,
    EulerLagrangeReport,
    HighDensityRow,
    e_cl_estimate,
    euler_lagrange_check,
    high_density_consistency,
)
from gpsolid.classical.measure import ClassicalMeasure, classical_energy, objective, potential_of
from gpsolid.classical.minimize import (
    ClassicalOptions,
    ClassicalResult,
    classical_canonical_energy,
    minimize_classical,
)

__all__ = [
    "ClassicalMeasure",
    "ClassicalOptions",
    "ClassicalResult",
    "EclEstimate",
    "EulerLagrangeReport",
    "HighDensityRow",
    "classical_canonical_energy",
    "classical_energy",
    "e_cl_estimate",
    "euler_lagrange_check",
    "high_density_consistency",
    "minimize_classical",
    "objective",
    "potential_of",
]
