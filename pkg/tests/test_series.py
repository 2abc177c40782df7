"""Series representations: the degree-N identity, route agreement and the
symmetry properties of the evaluator."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dihedral_bessel.config import EvalConfig
from dihedral_bessel.series import (DihedralParams, PolarPoint, b_coeffs,
                                    boundary_horn, eval_gegenbauer_series,
                                    eval_horn_series, idgeg_sum,
                                    normalization_constant, s_n_closed,
                                    s_n_direct, wedge_reduce)
from dihedral_bessel.special import ConvergenceError


def scaled_dev(params: DihedralParams, a: float, b: float, big_n: int) -> float:
    """Deviation relative to the natural magnitude of the degree-N term."""
    scale = 2.0 ** big_n * math.exp(-math.lgamma(params.n * params.k + big_n))
    return abs(a - b) / max(scale, abs(a))


class TestGeometry:
    def test_wedge_reduce_examples(self):
        n = 4
        period = 2 * math.pi / n
        # already inside
        assert wedge_reduce(PolarPoint(1.0, 0.3), n).angle == pytest.approx(0.3)
        # rotation by the period
        assert wedge_reduce(PolarPoint(1.0, 0.3 + period), n).angle == pytest.approx(0.3)
        # reflection into the wedge
        assert wedge_reduce(PolarPoint(1.0, period - 0.2), n).angle == pytest.approx(0.2)
        # negative angles
        assert wedge_reduce(PolarPoint(1.0, -0.3), n).angle == pytest.approx(0.3)

    @given(angle=st.floats(-50.0, 50.0), n=st.integers(2, 9))
    @settings(max_examples=200, deadline=None)
    def test_wedge_reduce_lands_in_wedge(self, angle, n):
        red = wedge_reduce(PolarPoint(1.0, angle), n)
        assert -1e-12 <= red.angle <= math.pi / n + 1e-12

    def test_b_coeffs_sum_to_zero(self):
        for n in (2, 3, 5, 8):
            for theta in (0.0, 0.3, 1.7):
                assert abs(b_coeffs(theta, n).sum()) < 1e-12

    def test_b_coeffs_last_entry(self):
        # s = n wraps around to cos(theta)
        b = b_coeffs(0.37, 5)
        assert b[-1] == pytest.approx(math.cos(0.37), rel=1e-15)

    def test_polar_point_validation(self):
        with pytest.raises(ValueError):
            PolarPoint(-1.0, 0.0)
        with pytest.raises(ValueError):
            PolarPoint(1.0, math.nan)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            DihedralParams(1, 1.0)
        with pytest.raises(ValueError):
            DihedralParams(3, 0.0)
        with pytest.raises(ValueError):
            DihedralParams(3, -2.0)


class TestNormalizationConstant:
    def test_against_gamma_beta_product(self):
        from scipy.special import beta, gamma
        for (n, k) in [(2, 0.5), (3, 1.0), (5, 0.8), (4, 2.5)]:
            ref = n * float(beta(k + 0.5, 0.5)) * float(gamma(n * k))
            assert normalization_constant(n, k) == pytest.approx(ref, rel=1e-12)


class TestDegreeIdentity:
    """Direct (j, m) enumeration vs composition closed form, degree by degree."""

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    @pytest.mark.parametrize("k", [0.3, 1.0, 2.5])
    def test_direct_vs_closed(self, n, k):
        params = DihedralParams(n, k)
        for (phi, theta) in [(0.1, 0.5), (0.0, 0.9), (0.4, 0.4)]:
            for big_n in range(11):
                d = s_n_direct(params, phi, theta, big_n)
                c = s_n_closed(params, phi, theta, big_n)
                assert scaled_dev(params, d, c, big_n) < 1e-12

    def test_degree_zero_is_inverse_gamma(self):
        params = DihedralParams(4, 0.7)
        ref = math.exp(-math.lgamma(params.n * params.k))
        assert s_n_direct(params, 0.2, 0.5, 0) == pytest.approx(ref, rel=1e-13)
        assert s_n_closed(params, 0.2, 0.5, 0) == pytest.approx(ref, rel=1e-13)

    def test_boundary_enumeration_matches(self):
        for n in (3, 4, 5):
            for k in (0.55, 1.5):
                params = DihedralParams(n, k)
                for theta in (0.0, 0.3, 0.62):
                    for big_n in (1, 4, 7, 10):
                        d = s_n_direct(params, 0.0, theta, big_n)
                        g = idgeg_sum(params, theta, big_n)
                        assert scaled_dev(params, d, g, big_n) < 1e-12

    def test_extended_precision_path(self):
        params = DihedralParams(5, 0.9)
        cfg = EvalConfig(extended_precision=True)
        a = s_n_closed(params, 0.21, 0.47, 9, cfg)
        b = s_n_closed(params, 0.21, 0.47, 9)
        scale = 2.0 ** 9 * math.exp(-math.lgamma(params.n * params.k + 9))
        assert abs(a - b) <= 1e-13 * scale

    def test_composition_cap_enforced(self):
        params = DihedralParams(6, 1.0)
        cfg = EvalConfig(composition_cap=10)
        with pytest.raises(ConvergenceError):
            s_n_closed(params, 0.1, 0.2, 10, cfg)

    def test_closed_form_needs_n_three(self):
        with pytest.raises(ValueError):
            s_n_closed(DihedralParams(2, 1.0), 0.1, 0.2, 3)


class TestEvaluators:
    def test_normalization_at_zero(self):
        for n in (2, 3, 4, 6):
            for k in (0.4, 1.0, 3.0):
                params = DihedralParams(n, k)
                res = eval_gegenbauer_series(params, PolarPoint(0.0, 0.0),
                                             PolarPoint(1.7, 0.8))
                assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_gegenbauer_vs_horn(self):
        cases = [(3, 0.7, 0.9, 0.3, 1.4, 0.8), (4, 1.0, 1.2, 0.1, 1.1, 0.5),
                 (5, 2.5, 0.6, 0.05, 2.0, 0.3), (6, 0.5, 1.0, 0.2, 1.5, 0.4)]
        for (n, k, rho, phi, r, theta) in cases:
            params = DihedralParams(n, k)
            x, y = PolarPoint(rho, phi), PolarPoint(r, theta)
            a = eval_gegenbauer_series(params, x, y)
            b = eval_horn_series(params, x, y)
            assert b.value == pytest.approx(a.value, rel=1e-11)

    def test_symmetry_in_arguments(self):
        # D(x, y) = D(y, x): both expansions are symmetric under the swap
        params = DihedralParams(5, 1.3)
        x, y = PolarPoint(0.7, 0.21), PolarPoint(1.8, 0.44)
        a = eval_gegenbauer_series(params, x, y)
        b = eval_gegenbauer_series(params, y, x)
        assert b.value == pytest.approx(a.value, rel=1e-12)

    def test_group_invariance_raw_angles(self):
        # rotation by 2 pi / n and reflection leave the value unchanged,
        # evaluated without the wedge reduction shortcut
        cfg = EvalConfig(reduce_angles=False)
        for n in (3, 4):
            params = DihedralParams(n, 0.8)
            x = PolarPoint(0.9, 0.17)
            y = PolarPoint(1.2, 0.33)
            base = eval_gegenbauer_series(params, x, y, cfg)
            rot = eval_gegenbauer_series(
                params, x, PolarPoint(1.2, 0.33 + 2 * math.pi / n), cfg)
            refl = eval_gegenbauer_series(params, x, PolarPoint(1.2, -0.33), cfg)
            assert rot.value == pytest.approx(base.value, rel=1e-10)
            assert refl.value == pytest.approx(base.value, rel=1e-10)

    def test_horn_invariance_raw_angles(self):
        cfg = EvalConfig(reduce_angles=False)
        params = DihedralParams(4, 1.1)
        x, y = PolarPoint(0.8, 0.25), PolarPoint(1.1, 0.4)
        base = eval_horn_series(params, x, y, cfg)
        rot = eval_horn_series(params, x, PolarPoint(1.1, 0.4 + math.pi / 2), cfg)
        refl = eval_horn_series(params, x, PolarPoint(1.1, -0.4), cfg)
        assert rot.value == pytest.approx(base.value, rel=1e-10)
        assert refl.value == pytest.approx(base.value, rel=1e-10)

    def test_boundary_horn_matches_resummed_coefficients(self):
        # Gamma(nk) sum_N (rho r / 2)^N S_N(phi=0) rebuilds the boundary value
        params = DihedralParams(4, 0.7)
        rho, r, theta = 0.8, 1.1, 0.45
        direct = boundary_horn(params, rho, r, theta)
        terms = [(0.5 * rho * r) ** big_n * s_n_closed(params, 0.0, theta, big_n)
                 for big_n in range(40)]
        resummed = math.exp(math.lgamma(params.n * params.k)) * math.fsum(terms)
        assert direct.value == pytest.approx(resummed, rel=1e-12)

    def test_boundary_horn_matches_general_evaluator(self):
        params = DihedralParams(5, 1.4)
        rho, r, theta = 0.9, 1.3, 0.37
        a = boundary_horn(params, rho, r, theta)
        b = eval_gegenbauer_series(params, PolarPoint(rho, 0.0), PolarPoint(r, theta))
        assert a.value == pytest.approx(b.value, rel=1e-11)

    def test_error_estimates_are_honest(self):
        params = DihedralParams(3, 0.9)
        x, y = PolarPoint(1.1, 0.2), PolarPoint(1.6, 0.7)
        loose = EvalConfig(tol=1e-6)
        tight = EvalConfig(tol=1e-14)
        a = eval_gegenbauer_series(params, x, y, loose)
        ref = eval_gegenbauer_series(params, x, y, tight)
        assert abs(a.value - ref.value) <= max(a.error, 1e-14 * abs(ref.value))

    def test_horn_needs_n_three(self):
        with pytest.raises(ValueError):
            eval_horn_series(DihedralParams(2, 1.0), PolarPoint(1, 0), PolarPoint(1, 0))

    @given(rho=st.floats(0.0, 2.0), r=st.floats(0.0, 2.0),
           phi=st.floats(0.0, 2 * math.pi), theta=st.floats(0.0, 2 * math.pi))
    @settings(max_examples=60, deadline=None)
    def test_value_bounded_by_exponential(self, rho, r, phi, theta):
        # |D(x, y)| <= e^{rho r} follows from the integral representations
        params = DihedralParams(3, 0.75)
        res = eval_gegenbauer_series(params, PolarPoint(rho, phi), PolarPoint(r, theta))
        assert abs(res.value) <= math.exp(rho * r) * (1 + 1e-10)
