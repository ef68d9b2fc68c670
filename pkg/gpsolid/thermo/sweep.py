"""
Parameter sweeps: one grand-canonical solve per (mu, L, bc, branch).

Cells are independent and run on a process pool. The fluid branch starts
from the constant seed, the solid branch from the cosine seed at the
instability wavenumber (a random seed when w_hat >= 0 leaves no such
wavenumber).
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from gpsolid.lattice import Boundary, box_grid, check_energy_floor
from gpsolid.potential import Potential, moments
from gpsolid.solver import MinimizeOptions, minimize_grand_canonical
from gpsolid.solver.grand_canonical import descend_from, require_stability
from gpsolid.solver.seeds import check_resolution, constant_seed, cosine_seed, random_seed, resolve_k0
from gpsolid.thermo.samples import Branch, ThermoSample

logger = logging.getLogger(__name__)


class SweepOptions(BaseModel):
    spacing: float = Field(..., gt=0, description="Grid spacing h")
    jobs: int = Field(1, ge=1, description="Worker processes")
    branches: List[Branch] = Field(default_factory=lambda: [Branch.FLUID, Branch.SOLID])
    minimize: MinimizeOptions = Field(default_factory=MinimizeOptions)


def branch_seed(p: Potential, grid, density: float, branch: Branch, opts: MinimizeOptions, k0: Optional[float]):
    if branch is Branch.FLUID:
        return "constant", constant_seed(grid, density)
    if k0 is not None:
        return f"cosine(k0={k0:.6g})", cosine_seed(grid, density, k0)
    return "random-0", random_seed(grid, density, np.random.default_rng(opts.random_seed))


def run_cell(
    p: Potential, mu: float, L: float, bc: Boundary, branch: Branch, opts: SweepOptions, k0: Optional[float]
) -> ThermoSample:
    """One branch of one (mu, L, bc) cell."""
    grid = box_grid([L] * p.dimension, opts.spacing, bc)
    if mu <= 0:
        result = minimize_grand_canonical(p, mu, grid, opts.minimize)
    else:
        density = mu / moments(p).integral
        label, values = branch_seed(p, grid, density, branch, opts.minimize, k0)
        result = descend_from(p, mu, grid, opts.minimize, label, values)
        check_energy_floor(result.free_energy, grid, p, mu)
    sample = ThermoSample.from_result(result, mu, L, bc, branch)
    logger.info(
        f"SWEEP | mu={mu:g} L={L:g} bc={bc.value} {branch.value}: f={sample.f:.10g} "
        f"rho={sample.rho:.6g} converged={sample.converged}"
    )
    return sample


def sweep(
    p: Potential,
    mu_list: Sequence[float],
    L_list: Sequence[float],
    bc_list: Sequence[str],
    opts: SweepOptions,
) -> List[ThermoSample]:
    """
    Samples for every (mu, L, bc, branch), in that nesting order.

    Raises ValueError when h does not resolve the instability wavelength.
    Non-converged cells are returned flagged, never dropped.
    """
    require_stability(p, opts.minimize)
    k0 = resolve_k0(p, opts.minimize)
    if not check_resolution(box_grid([max(L_list)] * p.dimension, opts.spacing), k0):
        raise ValueError(
            f"h={opts.spacing:g} does not resolve the instability wavelength "
            f"2pi/k0={2 * math.pi / k0:.4g} (need h <= wavelength/12)"
        )

    cells = list(product(mu_list, L_list, [Boundary(bc) for bc in bc_list], opts.branches))
    logger.info(f"SWEEP | {p.name}: {len(cells)} cells on {opts.jobs} worker(s)")

    if opts.jobs <= 1:
        samples = [run_cell(p, mu, L, bc, branch, opts, k0) for mu, L, bc, branch in cells]
    else:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            futures = [pool.submit(run_cell, p, mu, L, bc, branch, opts, k0) for mu, L, bc, branch in cells]
            samples = [f.result() for f in futures]

    failed = [s for s in samples if not s.converged]
    if failed:
        logger.warning(f"SWEEP | {len(failed)} of {len(samples)} cells did not converge")
    return samples
