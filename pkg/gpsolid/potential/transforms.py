"""
Radial Fourier transforms and moments of potentials.

Convention: w_hat(k) = (2 pi)^{-d/2} ∫ w(x) e^{-ik·x} dx. For radial tails
this reduces to a cosine integral in 1D and a J0 Hankel integral in 2D, so
the result is real by construction.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional

import numpy as np
from scipy.special import j0, j1

from gpsolid.config.constants import (
    FOURIER_SIGN_TOL,
    KGRID_FALLBACK_KMAX,
    KGRID_POINTS,
    KGRID_RANGE_FACTOR,
    TRUNCATION_TOL,
)
from gpsolid.errors import DivergentMomentError
from gpsolid.potential.potential import Potential
from gpsolid.potential.quadrature import integrate_panels

logger = logging.getLogger(__name__)

# Wavenumbers evaluated together in one quadrature sweep
_K_CHUNK = 256


class Moments(NamedTuple):
    integral: float
    absolute: float
    second: float
    error: float


class Stability(str, Enum):
    STABLE_SUFFICIENT = "stable-sufficient"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class FourierProfile:
    """Sampled w_hat on a radial k-grid."""

    k: np.ndarray
    values: np.ndarray
    convention_factor: float

    @property
    def at_zero(self) -> float:
        return float(self.values[0]) if self.k[0] == 0.0 else float("nan")


def convention_factor(dimension: int) -> float:
    return (2.0 * math.pi) ** (-dimension / 2.0)


def _surface(dimension: int) -> float:
    return 2.0 if dimension == 1 else 2.0 * math.pi


def _radial_measure(x: np.ndarray, dimension: int) -> np.ndarray:
    """Radial Jacobian including the sphere surface."""
    if dimension == 1:
        return np.full_like(x, 2.0)
    return 2.0 * math.pi * x


def integration_cutoff(p: Potential, power: int = 0) -> float:
    """
    Radius beyond which the |x|^power-weighted tail is negligible.

    Compact tails stop at their support. Power-law tails stop where the
    envelope kappa/|x|^s leaves less than TRUNCATION_TOL outside.
    """
    if p.support is not None:
        return float(p.support)
    exponent = p.s - p.dimension - power
    if exponent <= 0:
        raise DivergentMomentError(
            f"Moment of order {power} diverges for s={p.s:g} in d={p.dimension}"
        )
    reach = (_surface(p.dimension) * p.kappa / (exponent * TRUNCATION_TOL)) ** (1.0 / exponent)
    return max(p.kappa, reach)


def _edges(p: Potential, power: int) -> List[float]:
    cutoff = integration_cutoff(p, power)
    inner = sorted(b for b in p.breakpoints if 0.0 < b < cutoff)
    return [0.0] + inner + [cutoff]


def moments(p: Potential) -> Moments:
    """
    (∫w, ∫|w|, ∫|x|^2|w|) with the quadrature error estimate, computed once
    per potential.

    The second moment is reported as +inf when s <= d+2 and the tail is not
    compactly supported; use second_moment() to get an error instead.
    """
    return p.moments


def compute_moments(p: Potential) -> Moments:
    """The quadratures behind moments(), without the per-potential cache."""
    d = p.dimension
    edges = _edges(p, 0)
    integral, err_first = integrate_panels(lambda x: _radial_measure(x, d) * p.tail(x), edges)
    absolute, err_abs = integrate_panels(lambda x: _radial_measure(x, d) * np.abs(p.tail(x)), edges)

    second, err_second = math.inf, 0.0
    if p.support is not None or p.s > d + 2:
        second, err_second = integrate_panels(
            lambda x: _radial_measure(x, d) * x ** 2 * np.abs(p.tail(x)), _edges(p, 2)
        )

    return Moments(
        integral=float(integral) + p.contact,
        absolute=float(absolute) + abs(p.contact),
        second=float(second),
        error=err_first + err_abs + err_second,
    )


def second_moment(p: Potential) -> float:
    """∫|x|^2|w|; raises DivergentMomentError when it is infinite."""
    value = moments(p).second
    if math.isinf(value):
        raise DivergentMomentError(
            f"Second moment of {p.name} diverges (s={p.s:g} <= d+2={p.dimension + 2})"
        )
    return value


def fourier_transform(p: Potential, k):
    """
    w_hat(k) for radial wavenumbers k >= 0.

    Accepts a scalar or an array; returns the same shape. Raises
    QuadratureError if the transform does not settle within the node budget.
    """
    scalar = np.ndim(k) == 0
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    if np.any(k_arr < 0):
        raise ValueError("fourier_transform expects radial wavenumbers k >= 0")

    d = p.dimension
    edges = _edges(p, 0)
    out = np.empty_like(k_arr)
    for start in range(0, len(k_arr), _K_CHUNK):
        block = k_arr[start:start + _K_CHUNK]

        def integrand(x, block=block):
            phase = np.outer(block, x)
            if d == 1:
                kernel = 2.0 * np.cos(phase)
            else:
                kernel = 2.0 * math.pi * j0(phase) * x
            return kernel * p.tail(x)

        values, _ = integrate_panels(integrand, edges)
        out[start:start + len(block)] = values

    out = convention_factor(d) * (p.contact + out)
    return float(out[0]) if scalar else out


def smear_transform(p: Potential, k) -> np.ndarray:
    """Transform of eps·delta_r*delta_r: eps (2 pi)^{-d/2} m(kr)^2."""
    t = np.asarray(k, dtype=float) * p.r
    if p.dimension == 1:
        m = np.sinc(t / math.pi)
    else:
        safe = np.where(t > 0, t, 1.0)
        m = np.where(t > 0, 2.0 * j1(safe) / safe, 1.0)
    return p.epsilon * convention_factor(p.dimension) * m ** 2


def default_kmax(p: Potential) -> float:
    """KGRID_RANGE_FACTOR over the rms range of |w|; a fixed fallback for contact or heavy tails."""
    m = moments(p)
    if math.isinf(m.second) or m.second <= 0.0:
        return KGRID_FALLBACK_KMAX
    return KGRID_RANGE_FACTOR / math.sqrt(m.second / m.absolute)


def radial_kgrid(k_max: float, n: int = KGRID_POINTS) -> np.ndarray:
    """n points on (0, k_max]."""
    if k_max <= 0 or n < 3:
        raise ValueError(f"k-grid needs k_max > 0 and n >= 3, got {k_max}, {n}")
    return np.linspace(k_max / n, k_max, n)


def fourier_profile(p: Potential, k_max: Optional[float] = None, n: int = KGRID_POINTS) -> FourierProfile:
    """w_hat sampled on [0, k_max] with n points."""
    k_max = default_kmax(p) if k_max is None else k_max
    k = np.linspace(0.0, k_max, n)
    return FourierProfile(k=k, values=fourier_transform(p, k), convention_factor=convention_factor(p.dimension))


def stability_check(p: Potential, kgrid: Optional[np.ndarray] = None) -> Stability:
    """
    Sufficient test for stability of w2 = w - eps·delta_r*delta_r.

    Stable-sufficient iff w2_hat >= -tol on the k-grid (k = 0 included).
    """
    if kgrid is None:
        kgrid = radial_kgrid(default_kmax(p))
    k = np.concatenate([[0.0], np.asarray(kgrid, dtype=float)])
    w_hat = fourier_transform(p, k)
    remainder = w_hat - smear_transform(p, k)
    tolerance = FOURIER_SIGN_TOL * abs(w_hat[0])
    worst = float(np.min(remainder))
    if worst >= -tolerance:
        return Stability.STABLE_SUFFICIENT
    logger.info(f"STABILITY | {p.name}: min w2_hat={worst:.3e} on the k-grid, indeterminate")
    return Stability.INDETERMINATE
