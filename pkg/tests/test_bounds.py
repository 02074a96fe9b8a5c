"""Theta lower-bound estimation from cross-section deviations."""

from __future__ import annotations

import math

import numpy as np
import pytest

from ncscatter.bounds import (
    BoundCellFailure,
    BoundScanResult,
    DetectabilityCriterion,
    bound_table,
    cs_deviation,
    deviation_curve,
    estimate_bound,
)
from ncscatter.errors import NoBracket
from ncscatter.kinematics import Kinematics
from ncscatter.potentials import Preset
from ncscatter.units import theta_angstrom2

ANCHOR_DEVIATION = 2121.8787101351511  # H2, 1 eV, sqrt(Theta) = 1e-11 m

KIN_1EV = Kinematics.from_energy(1.0, "relativistic")


class TestCriterion:
    def test_default(self):
        c = DetectabilityCriterion()
        assert c.epsilon == 0.01

    @pytest.mark.parametrize("eps", [0.0, 1.0, -0.5, 2.0])
    def test_epsilon_range_enforced(self, eps):
        with pytest.raises(ValueError):
            DetectabilityCriterion(epsilon=eps)

    def test_calibration_row_accepted(self):
        c = DetectabilityCriterion(calibration_row=(1.0, 1e-11))
        assert c.calibration_row == (1.0, 1e-11)


class TestDeviation:
    def test_zero_theta_is_zero(self):
        assert cs_deviation(KIN_1EV, 2, 1.9426, 0.0) == 0.0

    def test_anchor_value(self):
        d0 = cs_deviation(KIN_1EV, 2, 1.9426, theta_angstrom2(1e-11))
        assert d0 == pytest.approx(ANCHOR_DEVIATION, rel=1e-6)

    @pytest.mark.parametrize("s,expected", [
        (1e-13, 0.0010480275036773111),
        (1e-12, 0.10963241668330606),
    ])
    def test_reference_points(self, s, expected):
        d = cs_deviation(KIN_1EV, 2, 1.9426, theta_angstrom2(s))
        assert d == pytest.approx(expected, rel=1e-6)

    def test_monotone_in_theta(self):
        grid = np.geomspace(1e-14, 1e-11, 7)
        devs = [cs_deviation(KIN_1EV, 2, 1.9426, theta_angstrom2(float(s)))
                for s in grid]
        assert all(b > a for a, b in zip(devs, devs[1:]))

    def test_overflow_maps_to_infinity(self):
        # far above the anchor scale the strength prefactor overflows the
        # double range; the deviation saturates at infinity rather than
        # raising
        d = cs_deviation(KIN_1EV, 2, 1.9426, theta_angstrom2(1e-8))
        assert math.isinf(d)

    def test_curve_matches_pointwise(self):
        grid = [1e-13, 1e-12, 1e-11]
        curve = deviation_curve(KIN_1EV, 2, 1.9426, grid)
        assert curve.shape == (3,)
        for i, s in enumerate(grid):
            assert curve[i] == pytest.approx(
                cs_deviation(KIN_1EV, 2, 1.9426, theta_angstrom2(s)),
                rel=1e-12)


class TestEstimateBound:
    def test_calibrated_reproduces_anchor(self):
        crit = DetectabilityCriterion(calibration_row=(1.0, 1e-11))
        res = estimate_bound(KIN_1EV, 2, 1.9426, crit, target="H2")
        assert isinstance(res, BoundScanResult)
        assert res.method == "bisection"
        # bisection narrows Theta to < 0.05 decades, i.e. sqrt(Theta) to
        # < 0.025 decades around the anchor
        assert abs(math.log10(res.sqrt_theta_bound) - (-11.0)) <= 0.05
        assert res.epsilon_used == pytest.approx(ANCHOR_DEVIATION, rel=1e-6)
        assert res.iterations > 0

    def test_user_epsilon_bracket_invariant(self):
        crit = DetectabilityCriterion(epsilon=0.01)
        res = estimate_bound(KIN_1EV, 2, 1.9426, crit, target="H2")
        theta_b = theta_angstrom2(res.sqrt_theta_bound)
        below = cs_deviation(KIN_1EV, 2, 1.9426, theta_b * 10**-0.05)
        above = cs_deviation(KIN_1EV, 2, 1.9426, theta_b * 10**0.05)
        assert below < 0.01 <= above

    def test_bound_between_reference_scales(self):
        # deviation passes 0.01 between sqrt(Theta) = 1e-13 m (0.001) and
        # 1e-12 m (0.11)
        crit = DetectabilityCriterion(epsilon=0.01)
        res = estimate_bound(KIN_1EV, 2, 1.9426, crit)
        assert 1e-13 < res.sqrt_theta_bound < 1e-12

    def test_no_bracket_when_range_too_low(self):
        crit = DetectabilityCriterion(epsilon=0.01)
        with pytest.raises(NoBracket):
            estimate_bound(KIN_1EV, 2, 1.9426, crit,
                           sqrt_theta_max_m=1e-14)

    def test_no_bracket_when_range_starts_detected(self):
        crit = DetectabilityCriterion(epsilon=0.01)
        with pytest.raises(NoBracket):
            estimate_bound(KIN_1EV, 2, 1.9426, crit,
                           sqrt_theta_min_m=1e-10, sqrt_theta_max_m=1e-9)

    def test_result_validation(self):
        with pytest.raises(ValueError):
            BoundScanResult(target="H2", energy=1.0, sqrt_theta_bound=0.0,
                            epsilon_used=0.01, method="bisection",
                            iterations=3)


class TestBoundTable:
    def test_single_cell_matches_estimate(self):
        crit = DetectabilityCriterion(epsilon=0.01)
        rows = bound_table([Preset("H2", 2, 1.9426)], [1.0], crit)
        assert len(rows) == 1
        row = rows[0]
        assert isinstance(row, BoundScanResult)
        direct = estimate_bound(KIN_1EV, 2, 1.9426, crit, target="H2")
        assert row.sqrt_theta_bound == pytest.approx(
            direct.sqrt_theta_bound, rel=1e-12)
        assert row.target == "H2"
        assert row.energy == 1.0

    def test_grid_shape_and_order(self):
        crit = DetectabilityCriterion(epsilon=0.01)
        rows = bound_table([Preset("H2", 2, 1.9426)], [1.0, 10.0], crit)
        assert [r.energy for r in rows] == [1.0, 10.0]

    def test_bound_decreases_with_energy(self):
        crit = DetectabilityCriterion(epsilon=0.01)
        rows = bound_table([Preset("H2", 2, 1.9426)], [1.0, 1e3, 1e6], crit)
        bounds = [r.sqrt_theta_bound for r in rows]
        assert bounds[0] > bounds[1] > bounds[2]

    def test_deviation_is_independent_of_nuclear_charge(self):
        # the strength V0 = -Z k_C e^2 scales both cross sections in the
        # relative deviation identically, so Z cancels exactly; only the
        # screening parameter differentiates targets
        d_light = cs_deviation(KIN_1EV, 2, 1.9426, theta_angstrom2(1e-12))
        d_heavy = cs_deviation(KIN_1EV, 22, 1.9426, theta_angstrom2(1e-12))
        assert d_heavy == pytest.approx(d_light, rel=1e-9)

    def test_heavier_target_not_larger(self):
        # Known-failing consistency check, kept faithful: under the
        # relative-deviation detectability criterion the nuclear charge
        # cancels exactly, so the more weakly screened heavy target ends up
        # with the LARGER bound at every energy. The assertion records the
        # intended ordering; the failure documents that this ordering is
        # unattainable with a Z-insensitive criterion.
        crit = DetectabilityCriterion(epsilon=0.01)
        rows = bound_table([Preset("H2", 2, 1.9426),
                            Preset("ScH", 22, 1.41113)], [1e3], crit)
        h2, sch = rows
        assert sch.sqrt_theta_bound <= h2.sqrt_theta_bound * (1.0 + 1e-9)

    def test_empty_lists_rejected(self):
        crit = DetectabilityCriterion(epsilon=0.01)
        with pytest.raises(ValueError):
            bound_table([], [1.0], crit)
        with pytest.raises(ValueError):
            bound_table([Preset("H2", 2, 1.9426)], [], crit)

    def test_cell_failure_does_not_abort(self):
        # alpha = 0 makes the commutative cross section divergent; the cell
        # reports a failure while other cells still compute
        crit = DetectabilityCriterion(epsilon=0.01)
        rows = bound_table([Preset("bad", 2, 0.0),
                            Preset("H2", 2, 1.9426)], [1.0], crit)
        assert isinstance(rows[0], BoundCellFailure)
        assert rows[0].target == "bad"
        assert rows[0].error
        assert isinstance(rows[1], BoundScanResult)
