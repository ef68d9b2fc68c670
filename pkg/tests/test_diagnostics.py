"""Tests for oscillation windows, peaks, winding degrees and momentum."""

import sys
import math
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from gpsolid.diagnostics import (
    boundary_margin,
    fluid_variance,
    kinetic_density,
    momentum_density,
    oscillation,
    peak_period,
    winding_degree,
    window_mask,
)
from gpsolid.errors import DegreeUndefinedError
from gpsolid.lattice import Field, Grid, box_grid


def _centred_grid(half=2.0, spacing=0.05):
    return Grid(extents=(2 * half, 2 * half), spacing=spacing, boundary="neumann", origin=(-half, -half))


class TestWindows:
    def test_margin(self):
        assert boundary_margin(box_grid(40.0, 0.1)) == 5.0
        assert boundary_margin(box_grid(16.0, 0.1)) == 2.0

    def test_window_outside_box(self):
        with pytest.raises(ValueError):
            window_mask(box_grid(4.0, 0.5), [(-1.0, 2.0)])

    def test_window_counts_nodes(self):
        grid = box_grid(4.0, 0.5, "neumann")
        assert window_mask(grid, [(0.0, 2.0)]).sum() == 4


class TestOscillation:
    def setup_method(self):
        self.grid = box_grid(40.0, 0.01, "neumann")
        self.x = self.grid.coordinates()

    def test_constant_density(self, gaussian_1d):
        f = Field(self.grid, np.ones(self.grid.shape))
        report = oscillation(f, 2.0, gaussian_1d, 1.0)
        assert report.worst_range == 0.0
        assert report.worst_variance == pytest.approx(0.0, abs=1e-12)
        assert not report.flag
        assert report.margin == 5.0

    def test_sinusoid(self):
        a, b = 2.0, 0.5
        f = Field(self.grid, np.sqrt(a + b * np.cos(2 * math.pi * self.x)))
        report = oscillation(f, 5.0)
        assert report.worst_range_squared == pytest.approx(4 * b ** 2, rel=1e-2)
        assert report.worst_variance == pytest.approx(b ** 2 / 2, rel=5e-2)
        assert report.rhs is None

    def test_rows(self):
        f = Field(self.grid, np.ones(self.grid.shape))
        rows = oscillation(f, 2.0).rows()
        assert set(rows[0]) == {"x", "max", "min", "variance"}

    def test_small_window_rejected(self):
        f = Field(self.grid, np.ones(self.grid.shape))
        with pytest.raises(ValueError):
            oscillation(f, 0.02)

    def test_fluid_variance(self):
        f = Field(self.grid, np.full(self.grid.shape, math.sqrt(3.0)))
        assert fluid_variance(f, 3.0, 2.0) == pytest.approx(0.0, abs=1e-20)
        assert fluid_variance(f, 2.0, 2.0) == pytest.approx(1.0)


class TestPeaks:
    def test_period(self):
        grid = box_grid(40.0, 0.01, "neumann")
        x = grid.coordinates()
        f = Field(grid, np.sqrt(1.0 + 0.5 * np.cos(2 * math.pi * x / 1.6)))
        report = peak_period(f)
        assert report.count == 24
        assert report.period == pytest.approx(1.6, abs=0.01)
        assert report.span == pytest.approx(24 * report.period)

    def test_threshold_is_measured_from_the_mean(self):
        grid = box_grid(10.0, 0.1, "neumann")
        x = grid.coordinates()
        density = 1.0 + np.exp(-(x - 3.0) ** 2 / 0.1) + 0.05 * np.exp(-(x - 7.0) ** 2 / 0.1)
        report = peak_period(Field(grid, np.sqrt(density)))
        # the small bump clears 0.1·max but not mean + 0.1·(max - mean)
        assert report.count == 1
        assert report.positions[0] == pytest.approx(3.0, abs=0.1)

    def test_flat_profile_has_no_period(self):
        grid = box_grid(10.0, 0.1, "neumann")
        report = peak_period(Field(grid, np.ones(grid.shape)))
        assert report.count == 0
        assert report.period is None

    def test_needs_1d(self):
        grid = _centred_grid()
        with pytest.raises(ValueError):
            peak_period(Field(grid, np.ones(grid.shape)))


class TestWinding:
    def setup_method(self):
        self.grid = _centred_grid()
        x, y = self.grid.mesh()
        self.z = x + 1j * y

    def test_degree_one(self):
        assert winding_degree(Field(self.grid, self.z), 1.0) == 1

    def test_degree_minus_one(self):
        assert winding_degree(Field(self.grid, np.conj(self.z)), 1.0) == -1

    def test_constant_has_degree_zero(self):
        assert winding_degree(Field(self.grid, np.ones(self.grid.shape, dtype=complex)), 1.0) == 0

    def test_off_centre_circle_misses_vortex(self):
        assert winding_degree(Field(self.grid, self.z), 0.5, center=(1.0, 1.0)) == 0

    def test_vanishing_field(self):
        with pytest.raises(DegreeUndefinedError):
            winding_degree(Field(self.grid, np.zeros(self.grid.shape, dtype=complex)), 1.0)

    def test_circle_leaving_grid(self):
        with pytest.raises(ValueError):
            winding_degree(Field(self.grid, self.z), 2.5)


class TestMomentum:
    def test_plane_wave(self):
        grid = box_grid(10.0, 0.01, "neumann")
        k, c = 3.0, 0.7
        f = Field(grid, c * np.exp(1j * k * grid.coordinates()))
        assert momentum_density(f)[0] == pytest.approx(k * c ** 2, rel=1e-3)
        assert kinetic_density(f) == pytest.approx(k ** 2 * c ** 2, rel=1e-3)

    def test_real_field_carries_no_current(self):
        grid = _centred_grid()
        x, _ = grid.mesh()
        f = Field(grid, np.cos(x))
        assert np.allclose(momentum_density(f), 0.0)
