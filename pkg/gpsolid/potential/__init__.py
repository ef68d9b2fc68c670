"""
Interaction potentials: families, transforms, moments and stability data.
"""

from gpsolid.potential.families import (
    BasePotentialFamily,
    get_family,
    list_families,
    load_tabulated,
    register_family,
)
from gpsolid.potential.potential import Potential, make_potential
from gpsolid.potential.transforms import (
    FourierProfile,
    Moments,
    Stability,
    convention_factor,
    default_kmax,
    fourier_profile,
    fourier_transform,
    integration_cutoff,
    moments,
    radial_kgrid,
    second_moment,
    smear_transform,
    stability_check,
)

__all__ = [
    # Construction
    "Potential",
    "make_potential",
    "BasePotentialFamily",
    "get_family",
    "register_family",
    "list_families",
    "load_tabulated",
    # Transforms and moments
    "FourierProfile",
    "Moments",
    "Stability",
    "convention_factor",
    "default_kmax",
    "fourier_profile",
    "fourier_transform",
    "integration_cutoff",
    "moments",
    "radial_kgrid",
    "second_moment",
    "smear_transform",
    "stability_check",
]
