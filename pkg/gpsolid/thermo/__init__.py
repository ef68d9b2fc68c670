"""
Thermodynamic functions from finite-box sweeps.
"""

from gpsolid.thermo.bracket import refine_bracket
from gpsolid.thermo.ensembles import CanonicalPoint, RoundTrip, canonical_energy_curve, ensemble_round_trip
from gpsolid.thermo.extrapolate import bracketing_ok, curve_violations, extrapolate, fit_limit
from gpsolid.thermo.legendre import (
    CriticalBracket,
    LegendreTable,
    biconjugate,
    branch_crossing,
    critical_density,
    fluid_free_energy,
    is_convex,
    legendre_energy,
    legendre_transform,
    phi_and_mu_c,
    phi_values,
)
from gpsolid.thermo.samples import Branch, CurvePoint, ThermoCurve, ThermoSample, best_per_cell
from gpsolid.thermo.sweep import SweepOptions, run_cell, sweep

__all__ = [
    # Samples
    "Branch",
    "CurvePoint",
    "ThermoCurve",
    "ThermoSample",
    "best_per_cell",
    # Sweeps and limits
    "SweepOptions",
    "run_cell",
    "sweep",
    "curve_violations",
    "bracketing_ok",
    "extrapolate",
    "fit_limit",
    # Legendre and criticality
    "CriticalBracket",
    "LegendreTable",
    "biconjugate",
    "branch_crossing",
    "critical_density",
    "fluid_free_energy",
    "is_convex",
    "legendre_energy",
    "legendre_transform",
    "phi_and_mu_c",
    "phi_values",
    "refine_bracket",
    # Ensembles
    "CanonicalPoint",
    "RoundTrip",
    "canonical_energy_curve",
    "ensemble_round_trip",
]
