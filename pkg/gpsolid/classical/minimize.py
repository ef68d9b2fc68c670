"""
Projected gradient for the classical problem min Q(nu) over nu >= 0.

The objective is quadratic, so the minimum at mu is exactly mu^2 times the
minimum at mu = 1 with weights scaled by mu; runs are made at mu = 1.
Steps use the accelerated projected gradient with a function-value
restart, step 1/L with L = Σ|tail| + eps0/h^d bounding the Hessian.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from gpsolid.classical.measure import ClassicalMeasure, objective
from gpsolid.lattice import Grid, get_kernel
from gpsolid.potential import Potential, moments
from gpsolid.solver import MinimizeOptions
from gpsolid.solver.seeds import cosine_seed, resolve_k0

logger = logging.getLogger(__name__)


class ClassicalOptions(BaseModel):
    max_iters: int = Field(50000, gt=0)
    tol: float = Field(1e-8, gt=0, description="Projected-gradient residual, relative to mu")
    k0: Optional[float] = Field(None, gt=0, description="Modulation wavenumber of the second start")


class ClassicalResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    measure: ClassicalMeasure
    free_energy: float
    mu: float
    residual: float
    iterations: int
    converged: bool
    start: str = ""

    @property
    def volume(self) -> float:
        return self.measure.grid.volume


def lipschitz_bound(p: Potential, grid: Grid) -> float:
    return get_kernel(p, grid).abs_row_sum + p.contact / grid.cell_volume


def projected_residual(weights: np.ndarray, gradient: np.ndarray) -> float:
    """max |nu - max(nu - g, 0)|: zero exactly at KKT points of nu >= 0."""
    return float(np.max(np.abs(weights - np.maximum(weights - gradient, 0.0))))


def projected_descent(
    weights: np.ndarray, grid: Grid, p: Potential, mu: float, opts: ClassicalOptions
) -> Tuple[np.ndarray, float, float, int, bool]:
    """Returns (weights, Q, residual, iterations, converged)."""
    step = 1.0 / lipschitz_bound(p, grid)
    x = np.maximum(weights, 0.0)
    value, gradient = objective(x, grid, p, mu)
    y, momentum = x.copy(), 1.0
    tolerance = opts.tol * max(1.0, mu)

    for iteration in range(1, opts.max_iters + 1):
        _, grad_y = objective(y, grid, p, mu)
        candidate = np.maximum(y - step * grad_y, 0.0)
        cand_value, cand_gradient = objective(candidate, grid, p, mu)

        if cand_value > value:
            # restart from the last iterate with a plain projected step
            candidate = np.maximum(x - step * gradient, 0.0)
            cand_value, cand_gradient = objective(candidate, grid, p, mu)
            y, momentum = candidate.copy(), 1.0
        else:
            next_momentum = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * momentum ** 2))
            y = candidate + ((momentum - 1.0) / next_momentum) * (candidate - x)
            momentum = next_momentum

        x, value, gradient = candidate, cand_value, cand_gradient
        residual = projected_residual(x, gradient)
        if residual <= tolerance:
            return x, value, residual, iteration, True

    residual = projected_residual(x, gradient)
    logger.warning(f"CLASSICAL | not converged after {opts.max_iters} iterations (residual {residual:.3e})")
    return x, value, residual, opts.max_iters, False


def _starts(p: Potential, grid: Grid, opts: ClassicalOptions) -> List[Tuple[str, np.ndarray]]:
    density = 1.0 / moments(p).integral
    uniform = np.full(grid.shape, density * grid.cell_volume)
    starts = [("uniform", uniform)]
    k0 = resolve_k0(p, MinimizeOptions(k0=opts.k0))
    if k0 is not None:
        modulated = cosine_seed(grid, density, k0) ** 2 * grid.cell_volume
        starts.append((f"cosine(k0={k0:.6g})", modulated))
    return starts


def minimize_classical(
    p: Potential, mu: float, grid: Grid, opts: Optional[ClassicalOptions] = None
) -> ClassicalResult:
    """
    Minimizing weights and F_cl(mu, Omega) = min Q.

    Solved at mu = 1 from a uniform start and a cosine-modulated one, the
    lower kept, then scaled: nu(mu) = mu nu(1), F_cl(mu) = mu^2 F_cl(1).
    """
    if mu <= 0:
        raise ValueError(f"Classical minimization needs mu > 0, got {mu}")
    opts = opts or ClassicalOptions()

    best = None
    for label, start in _starts(p, grid, opts):
        weights, value, residual, iterations, converged = projected_descent(start, grid, p, 1.0, opts)
        logger.info(f"CLASSICAL | {p.name} start={label}: F_cl(1)={value:.12g} iterations={iterations}")
        if best is None or value < best[1] - 1e-12 * max(1.0, abs(best[1])):
            best = (weights, value, residual, iterations, converged, label)

    weights, value, residual, iterations, converged, label = best
    scaled_value = mu ** 2 * value
    scaled_measure = ClassicalMeasure(grid, mu * weights)
    check, _ = objective(scaled_measure.weights, grid, p, mu)
    if abs(check - scaled_value) > 1e-8 * max(1.0, abs(scaled_value)):
        logger.warning(f"CLASSICAL | scaling check off: Q(mu nu)={check:.12g} vs mu^2 F_cl(1)={scaled_value:.12g}")

    return ClassicalResult(
        measure=scaled_measure,
        free_energy=scaled_value,
        mu=mu,
        residual=mu * residual,
        iterations=iterations,
        converged=converged,
        start=label,
    )


def classical_canonical_energy(f_cl_unit: float, lam: float) -> float:
    """E_cl(lambda) = -lambda^2/(4 F_cl(1)), the Legendre dual of mu^2 F_cl(1)."""
    if f_cl_unit >= 0:
        raise ValueError(f"F_cl(1) must be negative, got {f_cl_unit}")
    return -(lam ** 2) / (4.0 * f_cl_unit)
