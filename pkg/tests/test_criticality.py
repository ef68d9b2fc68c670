"""Tests for the instability threshold and the lower bounds on mu_c."""

import sys
import math
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from gpsolid.criticality import (
    KScan,
    ScanOptions,
    criticality_report,
    instability_threshold,
    lower_bound_general,
    lower_bound_nonneg,
    lower_bound_radial,
    mu_one,
    pohozaev_margin,
    safe_ratio,
)
from gpsolid.criticality.scan import minimize_on_grid
from gpsolid.errors import ScanIncompleteError
from gpsolid.potential import fourier_transform, make_potential


class TestSafeRatio:
    def test_nonpositive_denominator_is_inf(self):
        values = safe_ratio([1.0, 1.0, 1.0], [2.0, 0.0, -1.0])
        assert values[0] == 0.5
        assert math.isinf(values[1])
        assert math.isinf(values[2])

    def test_minimum_on_last_point_raises(self):
        k = np.linspace(0.1, 1.0, 10)
        with pytest.raises(ScanIncompleteError):
            minimize_on_grid(lambda x: -x, -k, k, "decreasing")

    def test_all_infinite_returns_inf(self):
        k = np.linspace(0.1, 1.0, 10)
        best, where = minimize_on_grid(lambda x: np.full_like(x, np.inf), np.full(10, np.inf), k, "flat")
        assert math.isinf(best)
        assert where is None


class TestInstabilityThreshold:
    def test_vdw_threshold(self, vdw_1d):
        mu_star, k0 = instability_threshold(vdw_1d)
        assert mu_star == pytest.approx(86.5, abs=1.0)
        assert k0 == pytest.approx(3.9, abs=0.1)

    def test_positive_definite_is_stable(self, gaussian_1d):
        mu_star, k0 = instability_threshold(gaussian_1d)
        assert math.isinf(mu_star)
        assert k0 is None

    def test_amplitude_does_not_move_threshold(self, vdw_1d):
        mu_star, _ = instability_threshold(vdw_1d)
        scaled, _ = instability_threshold(vdw_1d.scaled(3.0))
        assert scaled == pytest.approx(mu_star, rel=1e-6)

    def test_custom_kgrid(self, vdw_1d):
        kgrid = ScanOptions(k_max=12.0, points=2048).kgrid(vdw_1d)
        assert kgrid[-1] == pytest.approx(12.0)
        mu_star, _ = instability_threshold(vdw_1d, kgrid)
        assert mu_star == pytest.approx(86.5, abs=1.0)


class TestLowerBounds:
    def test_vdw_radial(self, vdw_1d):
        assert lower_bound_radial(vdw_1d) == pytest.approx(math.sqrt(5) - 1, abs=1e-3)

    def test_gaussian_radial(self, gaussian_1d):
        assert lower_bound_radial(gaussian_1d) == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-3)

    def test_vdw_nonneg(self, vdw_1d):
        assert lower_bound_nonneg(vdw_1d) == pytest.approx(4.6, abs=0.1)

    def test_nonneg_needs_nonnegative_w(self):
        p = make_potential("truncated-lennard-jones")
        assert lower_bound_nonneg(p) is None

    def test_gaussian_general_is_positive(self, gaussian_1d):
        bound, alpha = lower_bound_general(gaussian_1d)
        assert 0 < bound < math.inf
        assert alpha > 0

    def test_vdw_general_with_declared_core(self):
        p = make_potential("vdw", epsilon=0.25, r=1.0)
        bound, _ = lower_bound_general(p)
        assert 0 < bound < math.inf

    def test_contact_general_is_inf(self):
        p = make_potential("pure-contact", {"epsilon0": 1.0})
        bound, _ = lower_bound_general(p)
        assert math.isinf(bound)


class TestReport:
    def test_vdw_ordering(self, vdw_1d):
        report = criticality_report(vdw_1d)
        assert report.ordering_ok
        assert report.best_lower_bound() == pytest.approx(report.mu_lb_nonneg)
        assert report.best_lower_bound() < report.mu_star

    def test_rows(self, vdw_1d):
        rows = criticality_report(vdw_1d).rows()
        names = [row["name"] for row in rows]
        assert names[0] == "mu_star"
        assert "mu_lb_radial" in names
        assert all(set(row) == {"name", "value", "k0", "applicable"} for row in rows)

    def test_shared_scan(self, vdw_1d):
        scan = KScan.compute(vdw_1d)
        assert scan.w0 == pytest.approx(2 * math.pi / 3 / math.sqrt(2 * math.pi), rel=1e-7)
        direct, _ = instability_threshold(vdw_1d)
        shared, _ = instability_threshold(vdw_1d, scan=scan)
        assert shared == direct

    def test_lower_bounds_and_mu_star_sandwich_the_reference_bracket(self, vdw_1d):
        # the reference vdw run puts mu_c between 80 and 90
        report = criticality_report(vdw_1d)
        finite = [v for v in report.lower_bounds().values() if v is not None and math.isfinite(v)]
        assert finite
        assert max(finite) <= 80.0 <= report.mu_star


class TestNonnegBound:
    @pytest.mark.parametrize("name", ["vdw_1d", "gaussian_1d"])
    def test_at_least_mu_one(self, name, request):
        p = request.getfixturevalue(name)
        assert lower_bound_nonneg(p) >= mu_one(p)

    def test_mu_one_values(self, vdw_1d, gaussian_1d):
        assert mu_one(vdw_1d) == pytest.approx(2.0, rel=1e-6)
        assert mu_one(gaussian_1d) == pytest.approx(1.0, rel=1e-6)


class TestPohozaevMargin:
    def test_gaussian_margin_is_two_over_w0(self, gaussian_1d):
        w0 = float(fourier_transform(gaussian_1d, 0.0))
        kgrid = ScanOptions(k_max=6.0, points=1200).kgrid(gaussian_1d)
        assert pohozaev_margin(gaussian_1d, kgrid) == pytest.approx(2.0 / w0, rel=1e-4)

    def test_contact_margin(self):
        p = make_potential("pure-contact", {"epsilon0": 1.0})
        assert pohozaev_margin(p) == pytest.approx(2.0 * math.sqrt(2 * math.pi), rel=1e-8)

    def test_sign_changing_transform_has_zero_margin(self, vdw_1d):
        assert pohozaev_margin(vdw_1d) == 0.0
        assert criticality_report(vdw_1d).pohozaev_margin == 0.0


class TestRefinement:
    def test_mu_star_stable_under_denser_kgrid(self, vdw_1d):
        coarse, _ = instability_threshold(vdw_1d, ScanOptions(points=2048).kgrid(vdw_1d))
        fine, _ = instability_threshold(vdw_1d, ScanOptions(points=4096).kgrid(vdw_1d))
        assert abs(fine - coarse) < 1e-3 * fine
