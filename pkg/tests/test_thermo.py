"""Tests for sweeps, extrapolation and the Legendre pipeline."""

import sys
import math
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from gpsolid.errors import InsufficientDataError
from gpsolid.criticality import criticality_report
from gpsolid.lattice import Boundary
from gpsolid.potential import moments
from gpsolid.thermo import (
    Branch,
    CriticalBracket,
    CurvePoint,
    SweepOptions,
    ThermoCurve,
    ThermoSample,
    best_per_cell,
    bracketing_ok,
    biconjugate,
    branch_crossing,
    critical_density,
    curve_violations,
    ensemble_round_trip,
    extrapolate,
    fit_limit,
    fluid_free_energy,
    is_convex,
    legendre_energy,
    phi_and_mu_c,
    sweep,
)


def _sample(mu, L, bc, f, branch=Branch.FLUID, rho=1.0):
    return ThermoSample(mu=mu, L=L, bc=Boundary(bc), branch=branch, f=f, rho=rho, e=f + mu * rho)


def _curve(mu, f, uncertainty=0.0):
    return ThermoCurve(points=[
        CurvePoint(mu=m, f=v, rho=0.0, e=0.0, uncertainty=uncertainty) for m, v in zip(mu, f)
    ])


class TestFitLimit:
    def test_linear_in_inverse_size(self):
        limit, spread = fit_limit([10.0, 20.0, 40.0], [-1.0 + 2.0 / L for L in (10.0, 20.0, 40.0)])
        assert limit == pytest.approx(-1.0, abs=1e-12)
        assert spread == pytest.approx(0.05, abs=1e-12)

    def test_quadratic_with_four_sizes(self):
        sizes = [5.0, 10.0, 20.0, 40.0]
        values = [3.0 + 1.0 / L + 4.0 / L ** 2 for L in sizes]
        limit, _ = fit_limit(sizes, values)
        assert limit == pytest.approx(3.0, abs=1e-10)

    def test_boundary_bracketing(self):
        assert bracketing_ok("dirichlet", [-1.0, -1.5, -1.75])
        assert not bracketing_ok("dirichlet", [-1.75, -1.5, -1.0])
        assert bracketing_ok("neumann", [-3.0, -2.5, -2.25])
        assert not bracketing_ok("neumann", [-1.0, -1.5, -1.4])


class TestExtrapolate:
    def setup_method(self):
        self.sizes = [10.0, 20.0, 40.0]

    def test_boundary_limits_are_averaged(self):
        samples = [_sample(1.0, L, "dirichlet", -2.0 + 1.0 / L) for L in self.sizes]
        samples += [_sample(1.0, L, "neumann", -2.0 - 1.0 / L) for L in self.sizes]
        curve = extrapolate(samples)
        point = curve.points[0]
        assert point.f == pytest.approx(-2.0, abs=1e-12)
        assert point.uncertainty == pytest.approx(0.0, abs=1e-12)
        assert not point.low_confidence
        assert set(point.f_by_bc) == {"dirichlet", "neumann"}

    def test_lower_branch_is_used(self):
        samples = [_sample(1.0, L, "neumann", -1.0) for L in self.sizes]
        samples += [_sample(1.0, L, "neumann", -1.5, branch=Branch.SOLID) for L in self.sizes]
        assert extrapolate(samples).points[0].f == pytest.approx(-1.5)

    def test_too_few_sizes(self):
        samples = [_sample(1.0, L, "neumann", -1.0) for L in (10.0, 20.0)]
        with pytest.raises(InsufficientDataError):
            extrapolate(samples)

    def test_density_from_slope(self):
        mu = [1.0, 2.0, 3.0]
        samples = [_sample(m, L, "neumann", -m ** 2 / 2, rho=m) for m in mu for L in self.sizes]
        curve = extrapolate(samples)
        assert curve.points[1].rho_from_f == pytest.approx(2.0)

    def test_best_per_cell(self):
        low = _sample(1.0, 10.0, "neumann", -3.0, branch=Branch.SOLID)
        high = _sample(1.0, 10.0, "neumann", -1.0)
        best = best_per_cell([high, low])
        assert list(best.values()) == [low]


class TestCurveChecks:
    def test_fluid_curve_passes(self):
        mu = np.linspace(0.5, 5.0, 10)
        curve = _curve(mu, fluid_free_energy(mu, 2.0))
        assert curve_violations(curve, 2.0) == []

    def test_increasing_curve_flagged(self):
        curve = _curve([1.0, 2.0, 3.0], [-1.0, -0.5, -0.1])
        errors = curve_violations(curve, 1.0)
        assert any("increases" in e for e in errors)
        assert any("fluid value" in e for e in errors)


class TestLegendre:
    def setup_method(self):
        self.integral = 2.0
        self.mu = np.linspace(0.0, 10.0, 101)
        self.curve = _curve(self.mu, fluid_free_energy(self.mu, self.integral))

    def test_fluid_energy_and_phi(self):
        table = legendre_energy(self.curve, [0.0, 1.0, 2.0, 3.0], self.integral)
        assert np.allclose(table.e, [0.0, 1.0, 4.0, 9.0])
        assert np.allclose(table.mu_of_rho, [0.0, 2.0, 4.0, 6.0])
        assert np.allclose(table.phi, 0.0, atol=1e-12)
        assert is_convex(table.e, table.rho)

    def test_zero_mu_joins_the_table(self):
        mu = np.linspace(1.0, 10.0, 10)
        table = legendre_energy(_curve(mu, fluid_free_energy(mu, self.integral)), [0.0, 0.5], self.integral)
        assert table.mu_of_rho == [0.0, 1.0]
        assert table.e == [0.0, 0.25]
        assert np.allclose(table.phi, 0.0, atol=1e-12)

    def test_biconjugate_recovers_f(self):
        table = legendre_energy(self.curve, [0.0, 1.0, 2.0, 3.0], self.integral)
        assert np.allclose(biconjugate(table, [2.0, 4.0]), [-1.0, -4.0])

    def test_concave_values_are_not_convex(self):
        assert not is_convex([0.0, 2.0, 3.0, 3.5], [0.0, 1.0, 2.0, 3.0])

    def test_fluid_curve_has_no_bracket(self):
        _, bracket = phi_and_mu_c(self.curve, self.integral)
        assert not bracket.found
        assert bracket.mu_lo == 10.0
        assert critical_density(legendre_energy(self.curve), bracket) == {"rho_c": None, "rho_c_right": None}


class TestCriticalBracket:
    def setup_method(self):
        mu = np.arange(1.0, 6.0)
        fluid = fluid_free_energy(mu, 1.0)
        self.curve = _curve(mu, np.where(mu > 3, fluid - 0.5 * (mu - 3) ** 2, fluid))

    def test_bracket(self):
        _, bracket = phi_and_mu_c(self.curve, 1.0)
        assert bracket.found
        assert (bracket.mu_lo, bracket.mu_hi) == (3.0, 4.0)
        assert bracket.rho_c == (3.0, 4.0)
        assert bracket.describe() == "[3, 4]"

    def test_uncertainty_hides_small_departure(self):
        mu = [1.0, 2.0, 3.0]
        curve = _curve(mu, fluid_free_energy(mu, 1.0) - 1e-3, uncertainty=1e-2)
        _, bracket = phi_and_mu_c(curve, 1.0)
        assert not bracket.found

    def test_critical_density_of_a_kink(self):
        # fluid -mu^2/2 meets the solid -mu^2 + 4.5 at mu_c = 3; e is linear on [3, 6]
        mu = np.linspace(0.0, 6.0, 601)
        curve = _curve(mu, np.minimum(fluid_free_energy(mu, 1.0), -mu ** 2 + 4.5))
        table, bracket = phi_and_mu_c(curve, 1.0, rho_grid=np.linspace(0.0, 8.0, 1601))
        assert bracket.mu_lo == pytest.approx(3.0, abs=1e-9)
        densities = critical_density(table, bracket)
        assert densities["rho_c"] == pytest.approx(3.0, abs=0.01)
        assert densities["rho_c_right"] == pytest.approx(6.0, abs=0.05)

    def test_critical_density_on_a_coarse_table(self):
        table, bracket = phi_and_mu_c(self.curve, 1.0, rho_grid=[0.0, 1.0])
        assert critical_density(table, bracket) == {"rho_c": 3.5, "rho_c_right": 3.5}

    def test_unfound_bracket_description(self):
        bracket = CriticalBracket(mu_lo=150.0, mu_hi=None, found=False, integral=1.0)
        assert bracket.describe() == ">= 150"
        assert bracket.rho_c == (150.0, None)


class TestBranchCrossing:
    def test_crossing_from_above(self):
        samples = []
        for mu in (3.0, 4.0, 6.0, 7.0):
            samples.append(_sample(mu, 20.0, "dirichlet", -mu))
            samples.append(_sample(mu, 20.0, "dirichlet", -mu + 0.1 * (5.0 - mu), branch=Branch.SOLID))
        assert branch_crossing(samples) == pytest.approx(5.0)

    def test_no_crossing(self):
        samples = [_sample(mu, 20.0, "neumann", -mu) for mu in (1.0, 2.0)]
        samples += [_sample(mu, 20.0, "neumann", -mu + 1.0, branch=Branch.SOLID) for mu in (1.0, 2.0)]
        assert branch_crossing(samples) is None
        assert branch_crossing([]) is None


class TestSweep:
    def test_cells_in_nesting_order(self, gaussian_1d):
        opts = SweepOptions(spacing=0.25)
        samples = sweep(gaussian_1d, [0.5, 1.0], [4.0], ["neumann"], opts)
        keys = [(s.mu, s.branch) for s in samples]
        assert keys == [(0.5, Branch.FLUID), (0.5, Branch.SOLID), (1.0, Branch.FLUID), (1.0, Branch.SOLID)]
        assert all(s.rho > 0 for s in samples)

    def test_nonpositive_mu_cell_is_empty(self, gaussian_1d):
        opts = SweepOptions(spacing=0.25, branches=[Branch.FLUID])
        sample = sweep(gaussian_1d, [-1.0], [4.0], ["dirichlet"], opts)[0]
        assert sample.rho == 0.0
        assert sample.f == 0.0

    def test_under_resolved_grid_rejected(self, vdw_1d):
        with pytest.raises(ValueError):
            sweep(vdw_1d, [100.0], [8.0], ["neumann"], SweepOptions(spacing=0.5))

    def test_round_trip(self, gaussian_1d):
        trip = ensemble_round_trip(gaussian_1d, 1.0, 4.0, "neumann", 0.25)
        assert trip.converged
        assert trip.relative_gap < 1e-3

    @pytest.mark.slow
    def test_gaussian_fluid_limit(self, gaussian_1d):
        samples = sweep(gaussian_1d, [2.0], [10.0, 20.0, 40.0], ["dirichlet", "neumann"], SweepOptions(spacing=0.25))
        point = extrapolate(samples).points[0]
        expected = -4.0 / (2.0 * math.sqrt(2 * math.pi))
        assert abs(point.f - expected) <= point.uncertainty + 1e-2


@pytest.mark.slow
class TestVdwReference:
    def test_transition_bracket(self, vdw_1d):
        mu_grid = [70.0, 75.0, 80.0, 85.0, 90.0, 95.0, 100.0]
        opts = SweepOptions(spacing=0.02, jobs=4)
        samples = sweep(vdw_1d, mu_grid, [20.0, 40.0, 80.0], ["dirichlet", "neumann"], opts)
        _, bracket = phi_and_mu_c(extrapolate(samples), moments(vdw_1d).integral)
        assert bracket.found
        assert 75.0 <= bracket.mu_lo < bracket.mu_hi <= 95.0

        report = criticality_report(vdw_1d)
        finite = [v for v in report.lower_bounds().values() if v is not None and math.isfinite(v)]
        assert max(finite) <= bracket.mu_lo <= report.mu_star

    @pytest.mark.parametrize("mu", [1.0, 150.0])
    def test_ensemble_round_trip(self, vdw_1d, mu):
        trip = ensemble_round_trip(vdw_1d, mu, 40.0, "dirichlet", 0.02)
        assert trip.converged
        assert trip.relative_gap < 0.02
