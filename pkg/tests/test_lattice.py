"""Tests for grids, operators, the discrete functional and snapshots."""

import sys
import math
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from gpsolid.errors import EnergyBoundViolation, SnapshotFormatError
from gpsolid.lattice import (
    Boundary,
    Field,
    box_grid,
    check_energy_floor,
    decode_snapshot,
    encode_snapshot,
    evaluate,
    export_text,
    free_energy,
    get_kernel,
    gp_residual,
    interaction_field,
    kinetic_energy_array,
    laplacian_array,
    read_snapshot,
    superstability_floor,
    write_snapshot,
)


class TestGrid:
    def test_dirichlet_excludes_walls(self):
        grid = box_grid(4.0, 0.5, "dirichlet")
        assert grid.shape == (7,)
        assert grid.coordinates()[0] == pytest.approx(0.5)
        assert grid.coordinates()[-1] == pytest.approx(3.5)

    def test_neumann_is_cell_centred(self):
        grid = box_grid(4.0, 0.5, "neumann")
        assert grid.shape == (8,)
        assert grid.coordinates()[0] == pytest.approx(0.25)

    def test_two_dimensional(self):
        grid = box_grid([2.0, 3.0], 0.5, "neumann")
        assert grid.dimension == 2
        assert grid.shape == (4, 6)
        assert grid.volume == pytest.approx(6.0)

    def test_extent_must_be_multiple_of_spacing(self):
        with pytest.raises(ValueError):
            box_grid(1.0, 0.3)

    def test_spacing_must_be_positive(self):
        with pytest.raises(ValueError):
            box_grid(1.0, 0.0)


class TestField:
    def setup_method(self):
        self.grid = box_grid(2.0, 0.25, "neumann")

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            Field(self.grid, np.ones(5))

    def test_nonfinite_rejected(self):
        values = np.ones(self.grid.shape)
        values[2] = np.nan
        with pytest.raises(ValueError):
            Field(self.grid, values)

    def test_real_field_rejects_imaginary_part(self):
        with pytest.raises(ValueError):
            Field(self.grid, np.full(self.grid.shape, 1j), "real")

    def test_mass_and_mean_density(self):
        f = Field(self.grid, np.full(self.grid.shape, 2.0))
        assert f.mass == pytest.approx(8.0)
        assert f.mean_density == pytest.approx(4.0)
        assert f.values.dtype == np.float64

    def test_values_are_read_only(self):
        f = Field(self.grid, np.ones(self.grid.shape))
        with pytest.raises(ValueError):
            f.values[0] = 3.0


class TestLaplacian:
    def test_dirichlet_eigenfunction(self):
        L = 10.0
        for h in (0.1, 0.05):
            grid = box_grid(L, h, "dirichlet")
            x = grid.coordinates()
            f = np.sin(math.pi * x / L)
            lap = laplacian_array(f, grid)
            expected = -(math.pi / L) ** 2 * f
            error = np.max(np.abs(lap - expected)) / np.max(np.abs(expected))
            assert error < (math.pi * h / L) ** 2

    def test_neumann_constant_is_harmonic(self):
        grid = box_grid([2.0, 2.0], 0.25, "neumann")
        assert np.allclose(laplacian_array(np.ones(grid.shape), grid), 0.0)

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    def test_kinetic_energy_is_adjoint(self, bc):
        grid = box_grid([2.0, 1.5], 0.25, bc)
        rng = np.random.default_rng(3)
        u = rng.normal(size=grid.shape)
        kinetic = kinetic_energy_array(u, grid)
        by_parts = -grid.cell_volume * float(np.sum(u * laplacian_array(u, grid)))
        assert kinetic == pytest.approx(by_parts, rel=1e-10)


class TestInteraction:
    @pytest.mark.parametrize("extent", [[6.0], [2.0, 1.5]])
    def test_fft_matches_direct_sum(self, vdw_1d, gaussian_2d, extent):
        p = vdw_1d if len(extent) == 1 else gaussian_2d
        grid = box_grid(extent, 0.125, "neumann")
        rng = np.random.default_rng(7)
        rho = rng.uniform(0.0, 1.0, size=grid.shape)
        kernel = get_kernel(p, grid)
        fast = kernel.apply(rho)
        slow = kernel.direct(rho)
        assert np.max(np.abs(fast - slow)) < 1e-10 * np.max(np.abs(slow))

    def test_constant_density_recovers_integral(self, vdw_1d):
        grid = box_grid(40.0, 0.05, "neumann")
        density = Field(grid, np.ones(grid.shape))
        values = interaction_field(vdw_1d, density).values
        assert values[grid.shape[0] // 2] == pytest.approx(2 * math.pi / 3, abs=1e-6)

    def test_negative_density_rejected(self, gaussian_1d):
        grid = box_grid(2.0, 0.25, "neumann")
        values = np.ones(grid.shape)
        values[0] = -1e-3
        with pytest.raises(ValueError):
            interaction_field(gaussian_1d, Field(grid, values))


class TestFunctional:
    def setup_method(self):
        from gpsolid.potential import make_potential
        self.p = make_potential("gaussian", contact=0.5)
        self.grid = box_grid(4.0, 0.25, "dirichlet")
        self.mu = 1.5

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    @pytest.mark.parametrize("is_complex", [False, True])
    def test_gradient_matches_finite_differences(self, bc, is_complex):
        grid = box_grid(4.0, 0.25, bc)
        rng = np.random.default_rng(11)

        def draw():
            values = rng.normal(size=grid.shape)
            return values + 1j * rng.normal(size=grid.shape) if is_complex else values

        u = draw()
        _, _, gradient = evaluate(u, grid, self.p, self.mu)
        t = 1e-5
        for _ in range(20):
            v = draw()
            _, f_plus, _ = evaluate(u + t * v, grid, self.p, self.mu)
            _, f_minus, _ = evaluate(u - t * v, grid, self.p, self.mu)
            numeric = (f_plus - f_minus) / (2 * t)
            analytic = grid.cell_volume * float(np.real(np.vdot(gradient, v)))
            assert analytic == pytest.approx(numeric, rel=1e-6, abs=1e-9)

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    def test_global_phase_leaves_energy_unchanged(self, bc):
        grid = box_grid(4.0, 0.25, bc)
        rng = np.random.default_rng(13)
        u = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
        e_value, f_value, _ = evaluate(u, grid, self.p, self.mu)
        e_rotated, f_rotated, _ = evaluate(np.exp(1j * math.pi / 3) * u, grid, self.p, self.mu)
        assert e_rotated == pytest.approx(e_value, rel=1e-12)
        assert f_rotated == pytest.approx(f_value, rel=1e-12)

    def test_evaluate_agrees_with_free_energy(self):
        u = np.linspace(0.1, 1.0, self.grid.shape[0])
        _, f_value, _ = evaluate(u, self.grid, self.p, self.mu)
        assert f_value == pytest.approx(free_energy(Field(self.grid, u), self.p, self.mu), rel=1e-12)

    def test_zero_field_has_zero_residual(self):
        assert gp_residual(Field(self.grid, np.zeros(self.grid.shape)), self.p, self.mu) == 0.0

    def test_energy_floor(self):
        floor = superstability_floor(self.grid, self.p, self.mu)
        assert floor < 0
        check_energy_floor(floor, self.grid, self.p, self.mu)
        with pytest.raises(EnergyBoundViolation):
            check_energy_floor(2 * floor, self.grid, self.p, self.mu)


class TestSnapshot:
    def test_complex_2d_round_trip(self, tmp_path):
        grid = box_grid([1.0, 2.0], 0.25, "dirichlet")
        rng = np.random.default_rng(5)
        values = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
        path = write_snapshot(Field(grid, values), tmp_path / "u.gpsf")
        field, kind = read_snapshot(path)
        assert kind == "field"
        assert field.is_complex
        assert field.grid == grid
        assert np.array_equal(field.values, values)

    def test_measure_kind(self):
        grid = box_grid(2.0, 0.5, "neumann")
        _, kind = decode_snapshot(encode_snapshot(Field(grid, np.ones(4)), kind="measure"))
        assert kind == "measure"
        assert grid.boundary is Boundary.NEUMANN

    def test_bad_magic(self):
        grid = box_grid(2.0, 0.5, "neumann")
        blob = encode_snapshot(Field(grid, np.ones(4)))
        with pytest.raises(SnapshotFormatError):
            decode_snapshot(b"XXXX" + blob[4:])

    def test_truncated_payload(self):
        grid = box_grid(2.0, 0.5, "neumann")
        blob = encode_snapshot(Field(grid, np.ones(4)))
        with pytest.raises(SnapshotFormatError):
            decode_snapshot(blob[:-3])

    def test_export_text(self, tmp_path):
        grid = box_grid(2.0, 0.5, "neumann")
        path = export_text(Field(grid, np.full(4, 2.0)), tmp_path / "u.txt")
        data = np.loadtxt(path)
        assert data.shape == (4, 2)
        assert np.allclose(data[:, 1], 4.0)
