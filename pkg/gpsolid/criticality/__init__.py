"""
Critical chemical potential: linear-instability threshold and lower bounds.
"""

from gpsolid.criticality.bounds import (
    instability_threshold,
    lower_bound_general,
    lower_bound_nonneg,
    lower_bound_radial,
    mu_one,
    pohozaev_margin,
)
from gpsolid.criticality.report import CriticalityReport, criticality_report
from gpsolid.criticality.scan import KScan, ScanOptions, safe_ratio

__all__ = [
    "CriticalityReport",
    "KScan",
    "ScanOptions",
    "criticality_report",
    "instability_threshold",
    "lower_bound_general",
    "lower_bound_nonneg",
    "lower_bound_radial",
    "mu_one",
    "pohozaev_margin",
    "safe_ratio",
]
