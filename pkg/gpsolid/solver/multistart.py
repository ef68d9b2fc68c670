"""
Running one minimization from several seeds and picking the winner.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence

import numpy as np

from gpsolid.config.constants import MULTISTART_TIE
from gpsolid.solver.options import MinimizationResult
from gpsolid.solver.seeds import Seed

logger = logging.getLogger(__name__)


def has_sign_change(values: np.ndarray) -> bool:
    """Real field taking both signs."""
    if np.iscomplexobj(values):
        return False
    return bool(np.min(values) * np.max(values) < 0.0)


def run_seeds(worker: Callable[..., MinimizationResult], seeds: Sequence[Seed], jobs: int = 1) -> List[MinimizationResult]:
    """
    worker(label, values) for every seed, in seed order.

    worker must be picklable (a module-level function or a partial of one)
    when jobs > 1.
    """
    if jobs <= 1 or len(seeds) <= 1:
        return [worker(label, values) for label, values in seeds]
    with ProcessPoolExecutor(max_workers=min(jobs, len(seeds))) as pool:
        futures = [pool.submit(worker, label, values) for label, values in seeds]
        return [f.result() for f in futures]


def select_best(results: Sequence[MinimizationResult]) -> MinimizationResult:
    """
    Lowest free energy; within MULTISTART_TIE the earlier seed wins.

    The returned result carries every seed's free energy.
    """
    best = results[0]
    for candidate in results[1:]:
        scale = max(1.0, abs(best.free_energy))
        if candidate.free_energy < best.free_energy - MULTISTART_TIE * scale:
            best = candidate
    energies = {r.seed: r.free_energy for r in results}
    logger.info(
        "SOLVE | seeds: " + ", ".join(f"{k}={v:.12g}" for k, v in energies.items()) + f" -> {best.seed}"
    )
    return best.model_copy(update={"seed_free_energies": energies})

