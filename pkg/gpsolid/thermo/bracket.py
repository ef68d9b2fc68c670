"""
Bisection refinement of the mu_c bracket.
"""

import logging
from typing import Sequence

from gpsolid.config.constants import BRACKET_REFINE_STEPS
from gpsolid.potential import Potential
from gpsolid.thermo.extrapolate import extrapolate
from gpsolid.thermo.legendre import CriticalBracket, departs_from_fluid
from gpsolid.thermo.sweep import SweepOptions, sweep

logger = logging.getLogger(__name__)


def refine_bracket(
    p: Potential,
    bracket: CriticalBracket,
    L_list: Sequence[float],
    bc_list: Sequence[str],
    opts: SweepOptions,
    steps: int = BRACKET_REFINE_STEPS,
) -> CriticalBracket:
    """
    Halve [mu_lo, mu_hi] up to `steps` times, each step one extrapolated
    solve at the midpoint. Unfound brackets are returned unchanged.
    """
    if not bracket.found:
        return bracket
    lo, hi = bracket.mu_lo, bracket.mu_hi
    for step in range(min(steps, BRACKET_REFINE_STEPS)):
        mid = 0.5 * (lo + hi)
        point = extrapolate(sweep(p, [mid], L_list, bc_list, opts)).points[0]
        if departs_from_fluid(point.f, mid, point.uncertainty, bracket.integral):
            hi = mid
        else:
            lo = mid
        logger.info(f"THERMO | refine step {step + 1}: mu_c in [{lo:g}, {hi:g}]")
    return bracket.model_copy(update={"mu_lo": lo, "mu_hi": hi})
