"""
High-density constant e_cl, Euler-Lagrange conditions and the comparison
of GP minimizers with the classical ones at large mu.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from gpsolid.classical.measure import ClassicalMeasure, potential_of
from gpsolid.classical.minimize import ClassicalOptions, minimize_classical
from gpsolid.config.constants import MIN_BOX_SIZES, SUPPORT_THRESHOLD
from gpsolid.diagnostics import boundary_margin, interior_slices
from gpsolid.errors import InsufficientDataError
from gpsolid.lattice import Grid, box_grid
from gpsolid.potential import Potential, moments
from gpsolid.solver import MinimizeOptions, minimize_grand_canonical
from gpsolid.thermo import fit_limit

logger = logging.getLogger(__name__)


class EclEstimate(BaseModel):
    e_cl: float
    uncertainty: float
    f_limit: float
    sizes: List[float]
    f_values: List[float]
    upper_bound: float
    within_bound: bool


class EulerLagrangeReport(BaseModel):
    global_min: float
    support_max: float
    worst_node: List[float]
    support_nodes: int
    tolerance: float
    global_ok: bool
    support_ok: bool

    @property
    def passed(self) -> bool:
        return self.global_ok and self.support_ok


class HighDensityRow(BaseModel):
    mu: float
    f_over_mu2: float
    target: float
    relative_deviation: float
    density_distance: float
    converged: bool


def e_cl_estimate(
    p: Potential,
    L_list: Sequence[float],
    spacing: float,
    bc: str = "dirichlet",
    opts: Optional[ClassicalOptions] = None,
    tolerance: float = 1e-6,
) -> EclEstimate:
    """
    e_cl = -1/(4 f_cl) with f_cl the 1/L-extrapolated F_cl(1, Omega)/|Omega|.

    Raises:
        InsufficientDataError: fewer than three box sizes
    """
    sizes = sorted(set(float(L) for L in L_list))
    if len(sizes) < MIN_BOX_SIZES:
        raise InsufficientDataError(f"e_cl needs at least {MIN_BOX_SIZES} box sizes, got {len(sizes)}")

    values = []
    for L in sizes:
        grid = box_grid([L] * p.dimension, spacing, bc)
        result = minimize_classical(p, 1.0, grid, opts)
        values.append(result.free_energy / grid.volume)

    f_limit, spread = fit_limit(sizes, values)
    if f_limit >= 0:
        raise ValueError(f"Extrapolated f_cl = {f_limit:g} is not negative")
    e_cl = -1.0 / (4.0 * f_limit)
    uncertainty = spread / (4.0 * f_limit ** 2)
    upper = 0.5 * moments(p).integral
    within = 0.0 < e_cl <= upper + max(uncertainty, tolerance * upper)
    if not within:
        logger.warning(f"CLASSICAL | e_cl={e_cl:.8g} outside (0, ∫w/2 = {upper:.8g}]")
    logger.info(f"CLASSICAL | {p.name}: e_cl={e_cl:.8g} ± {uncertainty:.2g} (∫w/2 = {upper:.8g})")
    return EclEstimate(
        e_cl=e_cl,
        uncertainty=uncertainty,
        f_limit=f_limit,
        sizes=sizes,
        f_values=values,
        upper_bound=upper,
        within_bound=within,
    )


def euler_lagrange_check(
    measure: ClassicalMeasure,
    p: Potential,
    mu: float,
    tolerance: float = 1e-6,
    margin: Optional[float] = None,
) -> EulerLagrangeReport:
    """
    w*nu >= mu on the interior nodes, and w*nu = mu on the interior support
    (nu_i > 1e-8 max nu). Tolerances are relative to mu. The boundary layer
    of width min(5, L/8) is left out of both checks.
    """
    grid = measure.grid
    region = interior_slices(grid, boundary_margin(grid) if margin is None else margin)
    excess = (potential_of(measure.weights, grid, p) - mu)[region]
    weights = measure.weights[region]
    coords = [c[region] for c in grid.mesh()]
    scale = tolerance * max(1.0, abs(mu))

    i_min = np.unravel_index(np.argmin(excess), excess.shape)
    global_min = float(excess[i_min])
    worst = i_min

    top = float(np.max(measure.weights)) if measure.weights.size else 0.0
    support = weights > SUPPORT_THRESHOLD * top if top > 0 else np.zeros_like(weights, dtype=bool)
    support_max = 0.0
    if np.any(support):
        deviation = np.where(support, np.abs(excess), -np.inf)
        i_sup = np.unravel_index(np.argmax(deviation), deviation.shape)
        support_max = float(deviation[i_sup])
        if support_max > scale and support_max > -global_min:
            worst = i_sup

    report = EulerLagrangeReport(
        global_min=global_min,
        support_max=support_max,
        worst_node=[float(c[worst]) for c in coords],
        support_nodes=int(np.sum(support)),
        tolerance=scale,
        global_ok=global_min >= -scale,
        support_ok=support_max <= scale,
    )
    if not report.passed:
        logger.info(
            f"CLASSICAL | Euler-Lagrange violated: min(w*nu - mu)={global_min:.3e}, "
            f"max support deviation={support_max:.3e} at {report.worst_node}"
        )
    return report


def high_density_consistency(
    p: Potential,
    mu_list: Sequence[float],
    grid: Grid,
    e_cl: Optional[float] = None,
    opts: Optional[MinimizeOptions] = None,
    classical_opts: Optional[ClassicalOptions] = None,
) -> List[HighDensityRow]:
    """
    f(mu)/mu^2 against -1/(4 e_cl), and the L1 distance h^d Σ | |u|^2/mu - nu/(h^d mu) |
    between the GP and classical minimizers on the same grid.

    Without e_cl the single-box value -|Omega|/(4 F_cl(1, Omega)) is used.
    """
    classical = minimize_classical(p, 1.0, grid, classical_opts)
    if e_cl is None:
        e_cl = -grid.volume / (4.0 * classical.free_energy)
    target = -1.0 / (4.0 * e_cl)
    unit_density = classical.measure.density

    rows = []
    for mu in mu_list:
        result = minimize_grand_canonical(p, mu, grid, opts)
        ratio = result.free_energy / grid.volume / mu ** 2
        distance = grid.cell_volume * float(np.sum(np.abs(result.field.density / mu - unit_density)))
        rows.append(
            HighDensityRow(
                mu=mu,
                f_over_mu2=ratio,
                target=target,
                relative_deviation=abs(ratio - target) / abs(target),
                density_distance=distance,
                converged=result.converged,
            )
        )
        logger.info(f"CLASSICAL | mu={mu:g}: f/mu^2={ratio:.8g} vs {target:.8g}, L1 distance {distance:.4g}")
    return rows
