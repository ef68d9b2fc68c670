"""
Order parameters of computed fields.
"""

from gpsolid.diagnostics.momentum import kinetic_density, momentum_density
from gpsolid.diagnostics.oscillation import OscillationReport, fluid_variance, oscillation
from gpsolid.diagnostics.peaks import PeakReport, peak_period
from gpsolid.diagnostics.windows import boundary_margin, default_window, interior_slices, window_mask
from gpsolid.diagnostics.winding import sample_circle, winding_degree

__all__ = [
    "OscillationReport",
    "PeakReport",
    "boundary_margin",
    "default_window",
    "fluid_variance",
    "interior_slices",
    "kinetic_density",
    "momentum_density",
    "oscillation",
    "peak_period",
    "sample_circle",
    "window_mask",
    "winding_degree",
]
