"""Tests for potentials, transforms and moments."""

import sys
import math
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from gpsolid.potential import (
    Stability,
    default_kmax,
    fourier_transform,
    get_family,
    list_families,
    make_potential,
    moments,
    second_moment,
    stability_check,
)
from gpsolid.potential.families import BasePotentialFamily, register_family


class TestFamilies:
    def test_builtin_families_registered(self):
        names = list_families()
        for name in ("step", "vdw", "gaussian", "truncated-lennard-jones", "pure-contact", "tabulated"):
            assert name in names

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            get_family("yukawa")

    def test_vdw_defaults(self):
        p = make_potential("vdw")
        assert p.params["c"] == 1.0
        assert p.dimension == 1
        assert p.s == 6.0

    def test_unknown_parameter_rejected(self):
        with pytest.raises(ValueError):
            make_potential("vdw", {"c": 1.0, "sigma": 2.0})

    def test_invalid_parameter_rejected(self):
        with pytest.raises(ValueError):
            make_potential("gaussian", {"sigma": -1.0})

    def test_dimension_three_rejected(self):
        with pytest.raises(ValueError):
            make_potential("gaussian", dimension=3)

    def test_register_custom_family(self):
        class Exponential(BasePotentialFamily):
            name = "exponential-test"
            default_params = {"c": 1.0}

            def tail(self, radius, params):
                return params["c"] * np.exp(-radius)

            def declared(self, params, dimension):
                return {"epsilon": None, "r": 0.0, "s": float(dimension + 4), "kappa": 30.0, "contact": 0.0}

            def support(self, params):
                return 40.0

        register_family("exponential-test", Exponential())
        p = make_potential("exponential-test")
        assert moments(p).integral == pytest.approx(2.0, rel=1e-7)


class TestMoments:
    def test_gaussian_integral(self, gaussian_1d):
        m = moments(gaussian_1d)
        assert m.integral == pytest.approx(math.sqrt(2 * math.pi), rel=1e-8)
        assert m.absolute == pytest.approx(m.integral, rel=1e-12)

    def test_gaussian_second_moment(self, gaussian_1d):
        assert second_moment(gaussian_1d) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-7)

    def test_vdw_moments(self, vdw_1d):
        m = moments(vdw_1d)
        assert m.integral == pytest.approx(2 * math.pi / 3, rel=1e-7)
        assert m.second == pytest.approx(math.pi / 3, rel=1e-6)

    def test_step_moments(self):
        p = make_potential("step", {"c": 1.0, "R0": 1.0})
        m = moments(p)
        assert m.integral == pytest.approx(2.0, rel=1e-8)
        assert m.second == pytest.approx(2.0 / 3.0, rel=1e-8)

    def test_gaussian_2d_integral(self, gaussian_2d):
        assert moments(gaussian_2d).integral == pytest.approx(2 * math.pi, rel=1e-8)

    def test_contact_adds_to_integral(self):
        p = make_potential("pure-contact", {"epsilon0": 2.5})
        m = moments(p)
        assert m.integral == pytest.approx(2.5)
        assert m.second == 0.0


class TestFourierTransform:
    def test_gaussian_closed_form(self, gaussian_1d):
        k = np.array([0.0, 0.5, 1.0, 2.0])
        expected = np.exp(-k ** 2 / 2)
        assert np.allclose(fourier_transform(gaussian_1d, k), expected, rtol=1e-7, atol=1e-12)

    def test_gaussian_closed_form_up_to_k_ten(self, gaussian_1d):
        k = np.linspace(0.0, 10.0, 201)
        error = np.abs(fourier_transform(gaussian_1d, k) - np.exp(-k ** 2 / 2))
        assert float(np.max(error)) < 1e-6

    def test_zero_mode_matches_integral(self, vdw_1d):
        w0 = fourier_transform(vdw_1d, 0.0)
        assert w0 == pytest.approx(moments(vdw_1d).integral / math.sqrt(2 * math.pi), rel=1e-7)

    def test_step_closed_form(self):
        p = make_potential("step", {"c": 1.0, "R0": 1.0})
        k = 2.0
        expected = 2 * math.sin(k) / k / math.sqrt(2 * math.pi)
        assert fourier_transform(p, k) == pytest.approx(expected, rel=1e-7)

    def test_contact_is_flat(self):
        p = make_potential("pure-contact", {"epsilon0": 1.0})
        values = fourier_transform(p, np.array([0.0, 1.0, 10.0]))
        assert np.allclose(values, 1.0 / math.sqrt(2 * math.pi))

    def test_vdw_changes_sign(self, vdw_1d):
        values = fourier_transform(vdw_1d, np.linspace(0.1, 8.0, 80))
        assert np.min(values) < 0

    def test_negative_k_rejected(self, gaussian_1d):
        with pytest.raises(ValueError):
            fourier_transform(gaussian_1d, -1.0)


class TestStability:
    def test_contact_is_stable_sufficient(self):
        p = make_potential("pure-contact", {"epsilon0": 1.0})
        assert stability_check(p) is Stability.STABLE_SUFFICIENT

    def test_sign_changing_transform_is_indeterminate(self, vdw_1d):
        assert stability_check(vdw_1d) is Stability.INDETERMINATE

    def test_tabulated_matches_closure(self, tmp_path):
        x = np.linspace(-8, 8, 801)
        path = tmp_path / "gauss.txt"
        np.savetxt(path, np.column_stack([x, np.exp(-x ** 2 / 2)]))
        p = make_potential("tabulated", {"path": str(path)})
        assert moments(p).integral == pytest.approx(math.sqrt(2 * math.pi), rel=1e-4)

    def test_tabulated_must_be_even(self, tmp_path):
        x = np.linspace(-4, 4, 81)
        path = tmp_path / "odd.txt"
        np.savetxt(path, np.column_stack([x, np.exp(-(x - 0.5) ** 2)]))
        with pytest.raises(ValueError):
            make_potential("tabulated", {"path": str(path)})


class TestScaling:
    def test_scaled_potential(self, vdw_1d):
        scaled = vdw_1d.scaled(2.0)
        assert moments(scaled).integral == pytest.approx(2 * moments(vdw_1d).integral, rel=1e-8)
        assert scaled.epsilon == pytest.approx(2 * vdw_1d.epsilon)

    def test_to_dict(self, vdw_1d):
        data = vdw_1d.to_dict()
        assert data["family"] == "vdw"
        assert data["params"] == {"c": 1.0}


class TestImmutability:
    def test_attributes_cannot_be_reassigned(self, vdw_1d):
        with pytest.raises(AttributeError):
            vdw_1d.epsilon = 2.0
        assert vdw_1d.epsilon == pytest.approx(0.25)

    def test_default_epsilon_is_set_at_construction(self, gaussian_1d):
        assert gaussian_1d.epsilon == pytest.approx(0.1 * moments(gaussian_1d).integral)

    def test_moments_computed_once(self, gaussian_1d):
        assert moments(gaussian_1d) is moments(gaussian_1d)
        assert gaussian_1d.moments is moments(gaussian_1d)

    def test_pickles_for_worker_processes(self, vdw_1d):
        import pickle
        copy = pickle.loads(pickle.dumps(vdw_1d))
        assert copy.to_dict() == vdw_1d.to_dict()
        with pytest.raises(AttributeError):
            copy.r = 2.0


class TestDefaultKmax:
    def test_inverse_rms_range(self, vdw_1d):
        # ∫x²|w| / ∫|w| = (π/3) / (2π/3) for 1/(1+x^6)
        assert default_kmax(vdw_1d) == pytest.approx(20.0 * math.sqrt(2.0), rel=1e-6)

    def test_amplitude_does_not_move_kmax(self, vdw_1d):
        assert default_kmax(vdw_1d.scaled(3.0)) == pytest.approx(default_kmax(vdw_1d), rel=1e-10)

    def test_contact_falls_back(self):
        assert default_kmax(make_potential("pure-contact", {"epsilon0": 1.0})) == 20.0
