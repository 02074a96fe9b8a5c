"""Potential models: construction, evaluation, reductions, presets."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncscatter.errors import (
    InvalidZ,
    NegativeTheta,
    NonpositiveRadius,
    UnsupportedReduction,
)
from ncscatter.potentials import (
    BUILTIN_PRESETS,
    MIN_RADIUS,
    NCMatrix,
    PotentialKind,
    Preset,
    bopp_shift_radius,
    build_nc_yukawa,
    coulomb,
    evaluate,
    get_preset,
    kratzer,
    load_presets,
    reduce,
    screened_kratzer,
    shift_length,
    yukawa,
)
from ncscatter.units import CONSTANTS

E_511KEV = 511000.0


class TestShiftAndBopp:
    def test_zero_theta(self):
        assert shift_length(0.0, E_511KEV) == 0.0
        assert bopp_shift_radius(1.0, 0.0, E_511KEV) == 1.0

    def test_constructed_cancellation(self):
        # Theta = 1 A^2 and E = 2*hbar_c/A make the shift exactly 1 A
        E = 2.0 * CONSTANTS.hbar_c
        assert shift_length(1.0, E) == pytest.approx(1.0, rel=1e-15)
        assert bopp_shift_radius(1.0, 1.0, E) == pytest.approx(0.0, abs=1e-15)

    def test_reference_shift(self):
        # r = 2 A, Theta = 1e-6 A^2, E = 511 keV
        assert shift_length(1e-6, E_511KEV) == pytest.approx(
            0.00012948051983670855, rel=1e-12)
        assert bopp_shift_radius(2.0, 1e-6, E_511KEV) == pytest.approx(
            1.9998705194801633, rel=1e-12)

    def test_nonpositive_radius_rejected(self):
        with pytest.raises(NonpositiveRadius):
            bopp_shift_radius(0.0, 1e-6, E_511KEV)
        with pytest.raises(NonpositiveRadius):
            bopp_shift_radius(-1.0, 1e-6, E_511KEV)


class TestBuildNCYukawa:
    def test_h2_strength(self):
        m = build_nc_yukawa(2, 1.9426, 0.0, E_511KEV)
        assert m.V0 == pytest.approx(-28.79929, rel=1e-12)
        assert m.alpha == 1.9426
        assert m.kind is PotentialKind.SCREENED_KRATZER

    def test_sch_strength(self):
        m = build_nc_yukawa(22, 1.41113, 0.0, E_511KEV)
        assert m.V0 == pytest.approx(-316.79219, rel=1e-12)

    def test_electron_target_sign_flips_positive(self):
        m = build_nc_yukawa(2, 1.9426, 0.0, E_511KEV,
                            electron_target_sign=True)
        assert m.V0 == pytest.approx(+28.79929, rel=1e-12)

    def test_zero_theta_is_pure_yukawa_strengths(self):
        m = build_nc_yukawa(3, 1.5, 0.0, E_511KEV)
        assert m.V1 == m.V0
        assert m.V2 == 0.0

    def test_zero_alpha_keeps_v1_equal_v0(self):
        m = build_nc_yukawa(3, 0.0, 1e-4, E_511KEV)
        assert m.V1 == m.V0  # exponential prefactor is exactly 1
        assert m.V2 != 0.0

    def test_strength_derivation(self):
        theta = 1e-4
        m = build_nc_yukawa(2, 1.9426, theta, E_511KEV)
        t = shift_length(theta, E_511KEV)
        assert m.V1 == pytest.approx(math.exp(1.9426 * t) * m.V0, rel=1e-15)
        assert m.V2 == pytest.approx(m.V1 * t, rel=1e-15)
        assert m.V1 == pytest.approx(-29.532862307026265, rel=1e-12)
        assert m.V2 == pytest.approx(-0.38239303637796967, rel=1e-12)

    @pytest.mark.parametrize("Z", [0, -1, 2.5])
    def test_invalid_z(self, Z):
        with pytest.raises(InvalidZ):
            build_nc_yukawa(Z, 1.0, 0.0, E_511KEV)

    def test_negative_theta(self):
        with pytest.raises(NegativeTheta):
            build_nc_yukawa(1, 1.0, -1e-6, E_511KEV)

    def test_negative_alpha(self):
        with pytest.raises(ValueError):
            build_nc_yukawa(1, -0.5, 0.0, E_511KEV)

    @given(theta=st.floats(min_value=0.0, max_value=1e-2),
           energy=st.floats(min_value=1.0, max_value=1e6))
    def test_prefactor_consistency(self, theta, energy):
        # V2 / V1 = Theta E / (2 hbar c) independent of the exponential
        # (energy capped so exp(alpha s) stays inside the double range)
        m = build_nc_yukawa(2, 1.9426, theta, energy)
        t = shift_length(theta, energy)
        if theta == 0.0:
            assert m.V2 == 0.0
        else:
            assert m.V2 / m.V1 == pytest.approx(t, rel=1e-12)

    def test_unrepresentable_deformation_overflows(self):
        # exp(alpha s) beyond the double range must raise, not return inf
        with pytest.raises(OverflowError):
            build_nc_yukawa(2, 1.9426, 1e4, E_511KEV)

    def test_sign_of_v2_follows_v0(self):
        neg = build_nc_yukawa(2, 1.9426, 1e-6, E_511KEV)
        pos = build_nc_yukawa(2, 1.9426, 1e-6, E_511KEV,
                              electron_target_sign=True)
        assert neg.V2 < 0.0
        assert pos.V2 > 0.0


class TestEvaluate:
    def test_yukawa_unit_point(self):
        m = yukawa(1.0, 1.0)
        assert evaluate(m, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_coulomb(self):
        m = coulomb(-14.399645)
        assert evaluate(m, 2.0) == pytest.approx(-7.1998225, rel=1e-15)

    def test_kratzer_form(self):
        m = kratzer(-10.0, 1e-4, E_511KEV)
        t = shift_length(1e-4, E_511KEV)
        r = 0.7
        assert evaluate(m, r) == pytest.approx(-10.0 / r - 10.0 * t / r**2,
                                               rel=1e-14)

    def test_nc_yukawa_reference_point(self):
        m = build_nc_yukawa(2, 1.9426, 1e-4, E_511KEV)
        assert evaluate(m, 0.5) == pytest.approx(-22.940806748235416,
                                                 rel=1e-12)

    def test_screened_kratzer_zero_theta_equals_yukawa(self):
        nc = build_nc_yukawa(2, 1.9426, 0.0, E_511KEV)
        yk = yukawa(nc.V0, nc.alpha)
        r = np.geomspace(1e-3, 1e2, 100)
        v_nc = evaluate(nc, r)
        v_yk = evaluate(yk, r)
        np.testing.assert_allclose(v_nc, v_yk, rtol=1e-12)

    def test_array_matches_scalar(self):
        m = build_nc_yukawa(2, 1.9426, 1e-5, E_511KEV)
        r = np.array([0.2, 1.0, 3.7])
        batch = evaluate(m, r)
        for i, ri in enumerate(r):
            assert batch[i] == evaluate(m, float(ri))

    def test_nonpositive_radius(self):
        m = yukawa(-1.0, 1.0)
        with pytest.raises(NonpositiveRadius):
            evaluate(m, 0.0)
        with pytest.raises(NonpositiveRadius):
            evaluate(m, -0.3)
        with pytest.raises(NonpositiveRadius):
            evaluate(m, MIN_RADIUS / 10.0)
        with pytest.raises(NonpositiveRadius):
            evaluate(m, np.array([1.0, 0.0]))

    def test_nc_strictly_deepens_attractive_potential(self):
        # For V0 < 0 and E > 0, increasing Theta makes V(r) strictly more
        # negative; verified pointwise over a wide radial grid.
        r = np.geomspace(1e-3, 1e2, 100)
        thetas = [0.0, 1e-6, 1e-5, 1e-4]
        curves = [evaluate(build_nc_yukawa(2, 1.9426, th, E_511KEV), r)
                  for th in thetas]
        for weaker, stronger in zip(curves, curves[1:]):
            assert np.all(stronger < weaker)

    def test_inverse_square_term_dominates_below_shift_length(self):
        # the NC 1/r^2 contribution overtakes the 1/r contribution exactly
        # at r* = Theta E / (2 hbar c)
        theta = 1e-4
        m = build_nc_yukawa(2, 1.9426, theta, E_511KEV)
        r_star = shift_length(theta, E_511KEV)
        for r, dominates in ((0.5 * r_star, True), (2.0 * r_star, False)):
            term1 = abs(m.V1 / r)
            term2 = abs(m.V2 / r**2)
            assert (term2 > term1) is dominates


class TestReduce:
    def test_screened_kratzer_theta_to_zero(self):
        m = build_nc_yukawa(2, 1.9426, 1e-4, E_511KEV)
        out = reduce(m, "theta_to_zero")
        assert out.kind is PotentialKind.YUKAWA
        assert out.V0 == m.V0
        assert out.alpha == m.alpha

    def test_screened_kratzer_alpha_to_zero(self):
        m = build_nc_yukawa(2, 1.9426, 1e-4, E_511KEV)
        out = reduce(m, "alpha_to_zero")
        assert out.kind is PotentialKind.KRATZER
        assert out.V2 == pytest.approx(
            m.V0 * shift_length(1e-4, E_511KEV), rel=1e-15)

    def test_yukawa_alpha_to_zero(self):
        out = reduce(yukawa(-5.0, 2.0), "alpha_to_zero")
        assert out.kind is PotentialKind.COULOMB
        assert out.V0 == -5.0

    def test_kratzer_theta_to_zero(self):
        out = reduce(kratzer(-5.0, 1e-4, E_511KEV), "theta_to_zero")
        assert out.kind is PotentialKind.COULOMB

    def test_yukawa_theta_to_zero_is_noop(self):
        m = yukawa(-5.0, 2.0)
        assert reduce(m, "theta_to_zero") is m

    def test_unsupported(self):
        with pytest.raises(UnsupportedReduction):
            reduce(coulomb(-5.0), "theta_to_zero")
        with pytest.raises(UnsupportedReduction):
            reduce(coulomb(-5.0), "alpha_to_zero")
        with pytest.raises(UnsupportedReduction):
            reduce(kratzer(-5.0, 1e-4, E_511KEV), "alpha_to_zero")

    def test_bad_limit_string(self):
        with pytest.raises(ValueError):
            reduce(yukawa(-5.0, 2.0), "gamma_to_zero")

    def test_composition_law(self):
        # evaluate(reduce(m, theta->0), r) == evaluate(m built with theta=0, r)
        m = build_nc_yukawa(2, 1.9426, 1e-4, E_511KEV)
        m0 = build_nc_yukawa(2, 1.9426, 0.0, E_511KEV)
        reduced = reduce(m, "theta_to_zero")
        for r in (0.1, 1.0, 10.0):
            assert evaluate(reduced, r) == evaluate(m0, r)


class TestNCMatrix:
    def test_antisymmetry_and_sparsity(self):
        mat = NCMatrix(1e-4)
        grid = np.asarray(mat.matrix)
        assert grid.shape == (4, 4)
        np.testing.assert_allclose(grid, -grid.T, atol=0.0)
        assert grid[0, 1] == 1e-4
        assert grid[1, 0] == -1e-4
        mask = np.ones((4, 4), dtype=bool)
        mask[0, 1] = mask[1, 0] = False
        assert np.all(grid[mask] == 0.0)

    def test_negative_theta(self):
        with pytest.raises(NegativeTheta):
            NCMatrix(-1.0)


class TestPresets:
    def test_builtin_h2(self):
        p = get_preset("H2")
        assert p.Z == 2
        assert p.alpha_inv_angstrom == 1.9426

    def test_builtin_sch(self):
        p = get_preset("ScH")
        assert p.Z == 22
        assert p.alpha_inv_angstrom == 1.41113

    def test_unknown_lists_available(self):
        with pytest.raises(ValueError) as excinfo:
            get_preset("H3")
        msg = str(excinfo.value)
        assert "H2" in msg and "ScH" in msg

    def test_load_presets_file(self, tmp_path):
        text = (
            "# water-like toy entries\n"
            "name = XY\n"
            "Z = 5\n"
            "alpha_inv_angstrom = 2.25\n"
            "\n"
            "name = AB\n"
            "Z = 11\n"
            "alpha_inv_angstrom = 0.75  # trailing comment\n"
        )
        path = tmp_path / "molecules.cfg"
        path.write_text(text)
        loaded = load_presets(path)
        assert set(loaded) == {"XY", "AB"}
        assert loaded["XY"].Z == 5
        assert loaded["AB"].alpha_inv_angstrom == 0.75

    def test_load_presets_extra_overrides_in_get(self, tmp_path):
        path = tmp_path / "extra.cfg"
        path.write_text("name = QQ\nZ = 7\nalpha_inv_angstrom = 1.0\n")
        extra = load_presets(path)
        assert get_preset("QQ", extra).Z == 7
        # builtins still resolve
        assert get_preset("H2", extra).Z == 2

    def test_load_presets_bad_line_diagnostic(self, tmp_path):
        path = tmp_path / "broken.cfg"
        path.write_text("name = XY\nZ 5\nalpha_inv_angstrom = 2.0\n")
        with pytest.raises(ValueError) as excinfo:
            load_presets(path)
        assert "line 2" in str(excinfo.value)

    def test_load_presets_missing_field_diagnostic(self, tmp_path):
        path = tmp_path / "missing.cfg"
        path.write_text("name = XY\nZ = 5\n")
        with pytest.raises(ValueError) as excinfo:
            load_presets(path)
        assert "alpha_inv_angstrom" in str(excinfo.value)

    def test_load_presets_bad_number_diagnostic(self, tmp_path):
        path = tmp_path / "badnum.cfg"
        path.write_text("name = XY\nZ = five\nalpha_inv_angstrom = 2.0\n")
        with pytest.raises(ValueError) as excinfo:
            load_presets(path)
        assert "Z" in str(excinfo.value)

    def test_preset_feeds_builder(self):
        p = get_preset("H2")
        m = build_nc_yukawa(p.Z, p.alpha_inv_angstrom, 0.0, E_511KEV)
        assert m.V0 == pytest.approx(-2 * CONSTANTS.coulomb_coupling,
                                     rel=1e-15)


class TestModelImmutability:
    def test_frozen(self):
        m = yukawa(-1.0, 1.0)
        with pytest.raises(Exception):
            m.V0 = 5.0

    def test_factory_validation(self):
        with pytest.raises(ValueError):
            yukawa(-1.0, -1.0)  # negative screening
        with pytest.raises(NegativeTheta):
            screened_kratzer(-1.0, 1.0, -1e-9, E_511KEV)
