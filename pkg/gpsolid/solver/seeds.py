"""
Initial fields for multistart descent.

Seeds are returned in a fixed order (constant, cosine, random draws, file);
that order breaks free-energy ties between them.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from gpsolid.config.constants import (
    COSINE_SEED_AMPLITUDE,
    RANDOM_SEED_AMPLITUDE,
    WAVELENGTH_NODES,
)
from gpsolid.criticality import instability_threshold
from gpsolid.errors import ScanIncompleteError
from gpsolid.lattice import Grid, read_snapshot
from gpsolid.potential import Potential
from gpsolid.solver.options import MinimizeOptions, SeedStrategy

logger = logging.getLogger(__name__)

Seed = Tuple[str, np.ndarray]


def resolve_k0(p: Potential, opts: MinimizeOptions) -> Optional[float]:
    """Cosine wavenumber: the option if set, else the instability wavenumber (None if stable)."""
    if opts.k0 is not None:
        return opts.k0
    try:
        _, k0 = instability_threshold(p)
    except ScanIncompleteError as e:
        logger.warning(f"SEED | no cosine wavenumber for {p.name}: {e}")
        return None
    return k0


def check_resolution(grid: Grid, k0: Optional[float]) -> bool:
    """True when h resolves the wavelength 2 pi/k0 with WAVELENGTH_NODES nodes."""
    if k0 is None or not math.isfinite(k0):
        return True
    return grid.spacing <= (2.0 * math.pi / k0) / WAVELENGTH_NODES


def constant_seed(grid: Grid, density: float) -> np.ndarray:
    return np.full(grid.shape, math.sqrt(max(density, 0.0)))


def cosine_seed(grid: Grid, density: float, k0: float) -> np.ndarray:
    mesh = grid.mesh()
    modulation = sum(np.cos(k0 * x) for x in mesh) / grid.dimension
    return math.sqrt(density) * (1.0 + COSINE_SEED_AMPLITUDE * modulation)


def random_seed(grid: Grid, density: float, rng: np.random.Generator) -> np.ndarray:
    noise = rng.uniform(-1.0, 1.0, size=grid.shape)
    return math.sqrt(density) * (1.0 + RANDOM_SEED_AMPLITUDE * noise)


def file_seed(grid: Grid, path: str) -> np.ndarray:
    field, kind = read_snapshot(path)
    if kind != "field":
        raise ValueError(f"Seed file {path} holds a {kind}, not a field")
    if field.grid.shape != grid.shape:
        raise ValueError(f"Seed file grid {field.grid.shape} does not match {grid.shape}")
    return np.real(field.values) if not field.is_complex else np.abs(field.values)


def build_seeds(
    p: Potential,
    grid: Grid,
    density: float,
    opts: MinimizeOptions,
    include_constant: bool = True,
) -> List[Seed]:
    """
    Seeds at a target density, labelled by strategy.

    The constant seed is always first when include_constant is set,
    whatever the options list.
    """
    seeds: List[Seed] = []
    if include_constant or SeedStrategy.CONSTANT in opts.seeds:
        seeds.append(("constant", constant_seed(grid, density)))

    if SeedStrategy.COSINE in opts.seeds:
        k0 = resolve_k0(p, opts)
        if k0 is None:
            logger.info(f"SEED | {p.name}: w_hat >= 0 on the scan, cosine seed skipped")
        else:
            if not check_resolution(grid, k0):
                logger.warning(
                    f"SEED | h={grid.spacing:g} under-resolves wavelength {2 * math.pi / k0:.4g} "
                    f"(want {WAVELENGTH_NODES} nodes)"
                )
            seeds.append((f"cosine(k0={k0:.6g})", cosine_seed(grid, density, k0)))

    draws = opts.multistart + (1 if SeedStrategy.RANDOM in opts.seeds else 0)
    if draws:
        rng = np.random.default_rng(opts.random_seed)
        for i in range(draws):
            seeds.append((f"random-{i}", random_seed(grid, density, rng)))

    if SeedStrategy.FILE in opts.seeds:
        if not opts.seed_file:
            raise ValueError("Seed strategy 'file' needs seed_file")
        seeds.append((f"file({opts.seed_file})", file_seed(grid, opts.seed_file)))

    return seeds
