"""Tabulated potential from two-column (x, w(x)) samples"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from gpsolid.config.constants import EVENNESS_RTOL
from gpsolid.potential.families.base import BasePotentialFamily

# Mirror samples that are not on the table are compared through the spline
_INTERPOLATED_EVENNESS_RTOL = 1e-6


def load_tabulated(path: str) -> Tuple[np.ndarray, np.ndarray]:
    """Read a two-column text table; '#' starts a comment."""
    data = np.loadtxt(Path(path), comments="#", ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"Tabulated potential {path}: expected 2 columns, got {data.shape[1]}")
    return data[:, 0].astype(float), data[:, 1].astype(float)


def _fold_even(x: np.ndarray, w: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Fold samples onto x >= 0, rejecting data that is not even."""
    order = np.argsort(x)
    x, w = x[order], w[order]
    scale = max(float(np.max(np.abs(w))), 1e-300)

    positive = x >= 0
    x_pos, w_pos = x[positive], w[positive]
    if len(x_pos) < 4:
        raise ValueError("Tabulated potential needs at least 4 samples with x >= 0")
    if np.any(np.diff(x_pos) <= 0):
        raise ValueError("Tabulated potential has repeated x values")

    spline = CubicSpline(x_pos, w_pos)
    for xi, wi in zip(x[~positive], w[~positive]):
        match = np.isclose(x_pos, -xi, rtol=0.0, atol=1e-12)
        if match.any():
            mirror, tol = float(w_pos[match][0]), EVENNESS_RTOL
        elif -xi <= x_pos[-1]:
            mirror, tol = float(spline(-xi)), _INTERPOLATED_EVENNESS_RTOL
        else:
            raise ValueError(f"non-even tabulated data: no mirror sample for x={xi}")
        if abs(wi - mirror) > tol * scale:
            raise ValueError(f"non-even tabulated data: w({xi})={wi} but w({-xi})={mirror}")
    return x_pos, w_pos


class TabulatedFamily(BasePotentialFamily):
    """
    Cubic interpolation of tabulated samples.

    Beyond the last sample the tail continues linearly, clipped to the
    envelope kappa/|x|^s.
    """

    name = "tabulated"
    default_params = {"path": None, "x": None, "w": None, "s": None, "kappa": None}

    def prepare(self, params: Dict[str, Any], dimension: int) -> Dict[str, Any]:
        merged = super().prepare(params, dimension)
        if merged.get("path"):
            x, w = load_tabulated(merged["path"])
        elif merged.get("x") is not None and merged.get("w") is not None:
            x, w = np.asarray(merged["x"], dtype=float), np.asarray(merged["w"], dtype=float)
        else:
            raise ValueError("tabulated: provide params.path or params.x and params.w")

        x_pos, w_pos = _fold_even(x, w)
        if x_pos[0] == 0.0:
            spline = CubicSpline(x_pos, w_pos, bc_type=((1, 0.0), "not-a-knot"))
        else:
            spline = CubicSpline(x_pos, w_pos)

        if merged.get("s") is None:
            merged["s"] = float(dimension + 4)
        if merged.get("kappa") is None:
            merged["kappa"] = max(1.0, float(x_pos[-1]))
        merged["_spline"] = spline
        merged["_x_last"] = float(x_pos[-1])
        merged["_w_last"] = float(w_pos[-1])
        merged["_slope_last"] = float(spline(x_pos[-1], 1))
        return merged

    def tail(self, radius: np.ndarray, params: Dict[str, Any]) -> np.ndarray:
        radius = np.asarray(radius, dtype=float)
        x_last = params["_x_last"]
        inside = params["_spline"](np.minimum(radius, x_last))
        linear = params["_w_last"] + params["_slope_last"] * (radius - x_last)
        with np.errstate(divide="ignore"):
            envelope = params["kappa"] / np.maximum(radius, 1e-300) ** params["s"]
        outside = np.clip(linear, -envelope, envelope)
        return np.where(radius <= x_last, inside, outside)

    def declared(self, params: Dict[str, Any], dimension: int) -> Dict[str, Optional[float]]:
        return {
            "epsilon": None,
            "r": 0.0,
            "s": float(params["s"]),
            "kappa": float(params["kappa"]),
            "contact": 0.0,
        }

    def breakpoints(self, params: Dict[str, Any]) -> List[float]:
        return [params["_x_last"]]
