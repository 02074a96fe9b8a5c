"""Adaptive Gauss-Kronrod integrator."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate as scipy_integrate

from ncscatter.errors import QuadratureNonConvergence
from ncscatter.quadrature import (
    QuadratureResult,
    adaptive_gauss_kronrod,
    log_decade_breakpoints,
)


class TestAnalyticIntegrals:
    def test_polynomial(self):
        res = adaptive_gauss_kronrod(lambda x: x * x, 0.0, 1.0)
        assert res.value == pytest.approx(1.0 / 3.0, rel=1e-14)

    def test_sine(self):
        res = adaptive_gauss_kronrod(np.sin, 0.0, math.pi)
        assert res.value == pytest.approx(2.0, rel=1e-13)

    def test_gaussian(self):
        res = adaptive_gauss_kronrod(lambda x: np.exp(-x * x), -8.0, 8.0)
        assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-12)

    def test_rational_tail(self):
        res = adaptive_gauss_kronrod(lambda x: 1.0 / (1.0 + x * x),
                                     0.0, 100.0,
                                     breakpoints=log_decade_breakpoints(
                                         1e-2, 100.0))
        assert res.value == pytest.approx(math.atan(100.0), rel=1e-12)

    def test_oscillatory_damped(self):
        # int_0^inf e^{-x} sin(50 x) dx = 50/2501; truncation at 40 is ~e^-40
        res = adaptive_gauss_kronrod(lambda x: np.exp(-x) * np.sin(50.0 * x),
                                     0.0, 40.0, rel_tol=1e-12)
        assert res.value == pytest.approx(50.0 / 2501.0, rel=1e-10)

    @pytest.mark.parametrize("f,a,b", [
        (lambda x: np.exp(-x) * x**3, 0.0, 60.0),
        (lambda x: np.log1p(x) / (1.0 + x), 0.0, 10.0),
        (lambda x: np.sqrt(np.abs(np.sin(x))), 0.0, 6.0),
    ])
    def test_against_scipy(self, f, a, b):
        mine = adaptive_gauss_kronrod(f, a, b, rel_tol=1e-11)
        theirs, _ = scipy_integrate.quad(f, a, b, limit=200)
        assert mine.value == pytest.approx(theirs, rel=1e-8)


class TestResultContract:
    def test_fields(self):
        res = adaptive_gauss_kronrod(np.cos, 0.0, 1.0)
        assert isinstance(res, QuadratureResult)
        assert res.abs_error >= 0.0
        assert res.n_evaluations > 0
        assert res.n_panels >= 1

    def test_error_estimate_bounds_true_error(self):
        res = adaptive_gauss_kronrod(lambda x: np.exp(-x) * np.sin(7.0 * x),
                                     0.0, 30.0, rel_tol=1e-10)
        exact = 7.0 / 50.0
        assert abs(res.value - exact) <= max(10.0 * res.abs_error, 1e-12)

    def test_tolerance_scales_panel_count(self):
        f = lambda x: np.sin(40.0 * x) ** 2
        loose = adaptive_gauss_kronrod(f, 0.0, 10.0, rel_tol=1e-4)
        tight = adaptive_gauss_kronrod(f, 0.0, 10.0, rel_tol=1e-12)
        assert tight.n_panels >= loose.n_panels
        assert tight.value == pytest.approx(
            5.0 - math.sin(800.0) / 160.0, rel=1e-11)

    def test_breakpoints_respected(self):
        # integrand with a kink at 1.0: |x - 1|
        f = lambda x: np.abs(x - 1.0)
        res = adaptive_gauss_kronrod(f, 0.0, 3.0, breakpoints=[1.0],
                                     rel_tol=1e-13)
        assert res.value == pytest.approx(0.5 + 2.0, rel=1e-13)


class TestFailureModes:
    def test_panel_cap_raises(self):
        # genuinely hard integrand with a tiny panel budget
        f = lambda x: np.sin(1.0 / (x + 1e-6))
        with pytest.raises(QuadratureNonConvergence):
            adaptive_gauss_kronrod(f, 0.0, 1.0, rel_tol=1e-14, abs_tol=0.0,
                                   max_panels=4)

    def test_non_finite_integrand_raises(self):
        f = lambda x: np.where(x > 0.5, np.nan, 1.0)
        with pytest.raises(QuadratureNonConvergence):
            adaptive_gauss_kronrod(f, 0.0, 1.0)

    def test_invalid_interval(self):
        with pytest.raises(ValueError):
            adaptive_gauss_kronrod(np.sin, 1.0, 1.0)
        with pytest.raises(ValueError):
            adaptive_gauss_kronrod(np.sin, 2.0, 1.0)


class TestLogDecadeBreakpoints:
    def test_interior_decades(self):
        pts = log_decade_breakpoints(1e-3, 1e2)
        assert pts == pytest.approx([1e-2, 1e-1, 1.0, 10.0], rel=1e-12)

    def test_no_interior_decade(self):
        assert log_decade_breakpoints(2.0, 9.0) == []

    def test_strictly_inside(self):
        pts = log_decade_breakpoints(1.0, 1000.0)
        assert all(1.0 < p < 1000.0 for p in pts)

    @pytest.mark.parametrize("lo,hi", [(0.0, 1.0), (-1.0, 1.0), (2.0, 2.0),
                                       (3.0, 1.0)])
    def test_invalid_ranges_rejected(self, lo, hi):
        with pytest.raises(ValueError):
            log_decade_breakpoints(lo, hi)
