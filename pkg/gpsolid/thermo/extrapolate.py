"""
Infinite-volume limits from finite boxes.

Per mu and boundary condition, f_L is fitted in powers of 1/L (linear, or
quadratic with four or more sizes) and the intercept is the limit. The
Dirichlet and Neumann limits are averaged; their gap is the uncertainty.
"""

import logging
from collections import defaultdict
from typing import Dict, List, Sequence, Tuple

import numpy as np

from gpsolid.config.constants import LOW_CONFIDENCE_GAP, MIN_BOX_SIZES
from gpsolid.errors import InsufficientDataError
from gpsolid.thermo.samples import CurvePoint, ThermoCurve, ThermoSample, best_per_cell

logger = logging.getLogger(__name__)


def fit_limit(sizes: Sequence[float], values: Sequence[float]) -> Tuple[float, float]:
    """
    Intercept of values against 1/L, and the distance from that intercept
    to the value at the largest L.
    """
    sizes = np.asarray(sizes, dtype=float)
    values = np.asarray(values, dtype=float)
    degree = 2 if len(sizes) >= 4 else 1
    coefficients = np.polyfit(1.0 / sizes, values, degree)
    limit = float(coefficients[-1])
    return limit, abs(limit - float(values[np.argmax(sizes)]))


def bracketing_ok(bc: str, values: Sequence[float], tolerance: float = 1e-10) -> bool:
    """
    Finite boxes bracket the limit: f_L non-increasing in L under Dirichlet
    (walls only raise the energy), non-decreasing under Neumann. Values are
    ordered by increasing L.
    """
    steps = np.diff(np.asarray(values, dtype=float))
    scale = tolerance * max(1.0, float(np.max(np.abs(values))))
    if bc == "dirichlet":
        return bool(np.all(steps <= scale))
    return bool(np.all(steps >= -scale))


def _group(samples: List[ThermoSample]) -> Dict[float, Dict[str, List[ThermoSample]]]:
    grouped: Dict[float, Dict[str, List[ThermoSample]]] = defaultdict(lambda: defaultdict(list))
    for s in best_per_cell(samples).values():
        grouped[s.mu][s.bc.value].append(s)
    return grouped


def extrapolate(samples: List[ThermoSample]) -> ThermoCurve:
    """
    f(mu), rho(mu), e(mu) in the infinite-volume limit.

    Uses the lower branch in every cell. With a single boundary condition
    the uncertainty is the distance between the limit and the largest box.

    Raises:
        InsufficientDataError: fewer than three box sizes for some (mu, bc)
    """
    grouped = _group(samples)
    points: List[CurvePoint] = []

    for mu in sorted(grouped):
        f_limits, rho_limits, e_limits, spreads = {}, {}, {}, []
        for bc, cells in sorted(grouped[mu].items()):
            cells = sorted(cells, key=lambda s: s.L)
            sizes = [s.L for s in cells]
            if len(set(sizes)) < MIN_BOX_SIZES:
                raise InsufficientDataError(
                    f"mu={mu:g}, bc={bc}: {len(set(sizes))} box size(s), need at least {MIN_BOX_SIZES}"
                )
            if not bracketing_ok(bc, [s.f for s in cells]):
                logger.warning(f"THERMO | mu={mu:g}, bc={bc}: f_L is not monotone in L; check h or the seeds")
            f_limits[bc], spread = fit_limit(sizes, [s.f for s in cells])
            rho_limits[bc], _ = fit_limit(sizes, [s.rho for s in cells])
            e_limits[bc], _ = fit_limit(sizes, [s.e for s in cells])
            spreads.append(spread)

        f_values = list(f_limits.values())
        f_mid = 0.5 * (max(f_values) + min(f_values))
        gap = max(f_values) - min(f_values) if len(f_values) > 1 else spreads[0]
        low_confidence = gap > LOW_CONFIDENCE_GAP * abs(f_mid)
        if low_confidence:
            logger.warning(f"THERMO | mu={mu:g}: boundary gap {gap:.3g} exceeds {LOW_CONFIDENCE_GAP:.0%} of |f|")

        points.append(
            CurvePoint(
                mu=mu,
                f=f_mid,
                rho=max(0.0, float(np.mean(list(rho_limits.values())))),
                e=float(np.mean(list(e_limits.values()))),
                uncertainty=gap,
                low_confidence=low_confidence,
                f_by_bc=f_limits,
            )
        )

    return ThermoCurve(points=_with_derivative(points))


def _with_derivative(points: List[CurvePoint]) -> List[CurvePoint]:
    """Attach -df/dmu (central inside, one-sided at the ends) as a cross-check on rho."""
    if len(points) < 2:
        return points
    mu = np.array([pt.mu for pt in points])
    f = np.array([pt.f for pt in points])
    slope = -np.gradient(f, mu)
    out = []
    for pt, value in zip(points, slope):
        if pt.rho > 0 and abs(value - pt.rho) > 0.1 * pt.rho:
            logger.info(f"THERMO | mu={pt.mu:g}: rho={pt.rho:.6g} but -df/dmu={value:.6g}")
        out.append(pt.model_copy(update={"rho_from_f": float(value)}))
    return out


def curve_violations(curve: ThermoCurve, integral: float, tolerance: float = 1e-8) -> List[str]:
    """
    Shape checks on an extrapolated curve: f non-increasing and concave in
    mu, and never above the fluid value -mu^2/(2∫w).
    """
    errors: List[str] = []
    mu, f, unc = curve.mu, curve.f, curve.uncertainty
    slack = tolerance + unc

    for i in range(1, len(mu)):
        if f[i] > f[i - 1] + slack[i] + slack[i - 1]:
            errors.append(f"f increases between mu={mu[i - 1]:g} and mu={mu[i]:g}")
    for i in range(1, len(mu) - 1):
        left = (f[i] - f[i - 1]) / (mu[i] - mu[i - 1])
        right = (f[i + 1] - f[i]) / (mu[i + 1] - mu[i])
        if right - left > (slack[i - 1] + 2 * slack[i] + slack[i + 1]) / min(mu[i] - mu[i - 1], mu[i + 1] - mu[i]):
            errors.append(f"f not concave at mu={mu[i]:g}")
    fluid = -np.maximum(mu, 0.0) ** 2 / (2.0 * integral)
    for m, value, bound, s in zip(mu, f, fluid, slack):
        if value > bound + s:
            errors.append(f"f({m:g}) = {value:.8g} lies above the fluid value")
    return errors
