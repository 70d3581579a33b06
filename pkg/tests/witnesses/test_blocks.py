"""
Tests for the explicit witness blocks.
"""

from itertools import product

import numpy as np
import pytest

from symext_qkd.errors import ConvergenceError, InvalidInputError
from symext_qkd.witnesses.blocks import (
    EQUAL_ANGLE_ROOT,
    WitnessVariant,
    equal_angle_determinant,
    m4_diag,
    m4_equal_angle,
    m5_iterative,
    positivity_function,
    sign_product,
)

SQRT5 = np.sqrt(5.0)


class TestSignProduct:
    def test_values(self):
        c = (0.5, 0.2, 0.1)
        assert sign_product(c, "+++") == pytest.approx(1.5 * 1.2 * 1.1)
        assert sign_product(c, "+--") == pytest.approx(1.5 * 0.8 * 0.9)

    def test_even_patterns_sum(self):
        c = (0.3, 0.6, 0.9)
        total = sum(sign_product(c, s) for s in ("+++", "+--", "-+-", "--+"))
        assert total == pytest.approx(4 * (1 + 0.3 * 0.6 * 0.9))


class TestM4Diag:
    def test_constraints_hold_exactly(self):
        block = m4_diag(0.4, 0.7, 1.1)
        assert block.variant is WitnessVariant.M4_DIAG
        assert max(block.residuals.values()) < 1e-12
        assert block.padding == pytest.approx((0.0, 0.0, 0.0))

    def test_symmetric(self):
        block = m4_diag(0.4, 0.7, 1.1)
        np.testing.assert_array_equal(block.entries, block.entries.T)

    @pytest.mark.parametrize("angles,psd", [((0.3, 0.3, 0.3), True), ((1.2, 1.2, 1.2), False)])
    def test_positivity_function_decides_psd(self, angles, psd):
        block = m4_diag(*angles)
        assert (block.auxiliary["f"] > 0) is psd
        assert block.psd is psd

    def test_positivity_function_matches_schur_complement(self):
        block = m4_diag(0.2, 0.5, 0.6)
        m = block.entries
        schur = m[0, 0] - sum(m[0, i] ** 2 / m[i, i] for i in (1, 2, 3))
        assert positivity_function(*block.cosines) == pytest.approx(schur)

    def test_rejects_obtuse_angle(self):
        with pytest.raises(InvalidInputError):
            m4_diag(2.0, 0.5, 0.5)

    def test_to_model(self):
        exported = m4_diag(0.3, 0.4, 0.5).to_model()
        assert exported.variant == "m4_diag"
        assert exported.angles == pytest.approx([0.3, 0.4, 0.5])
        assert len(exported.block) == 4
        assert exported.psd == m4_diag(0.3, 0.4, 0.5).psd


class TestM4EqualAngle:
    def test_constraints_hold_exactly(self):
        block = m4_equal_angle(0.6)
        assert block.cosines[1] == pytest.approx(1 / SQRT5)
        assert max(block.residuals.values()) < 1e-12
        assert block.padding == pytest.approx((0.0, 0.0, 0.0), abs=1e-15)

    def test_determinant_matches_block(self):
        theta = 0.9
        block = m4_equal_angle(theta)
        det = np.linalg.det(block.entries[:3, :3])
        assert equal_angle_determinant(np.cos(theta)) == pytest.approx(det, rel=1e-9)

    def test_root_is_determinant_zero(self):
        assert equal_angle_determinant(EQUAL_ANGLE_ROOT) == pytest.approx(0.0, abs=1e-12)
        assert 0.0 < EQUAL_ANGLE_ROOT < 1 / SQRT5

    def test_psd_at_unit_blocksize_angle(self):
        assert m4_equal_angle(np.arccos(1 / SQRT5)).psd

    def test_not_psd_near_right_angle(self):
        assert not m4_equal_angle(np.arccos(EQUAL_ANGLE_ROOT / 2)).psd


class TestM5Iterative:
    def test_converges(self):
        block = m5_iterative(0.5, 0.6, 0.7)
        assert block.variant is WitnessVariant.M5_ITERATIVE
        assert block.size == 5
        assert block.residuals["iteration"] < 1e-14
        np.testing.assert_allclose(block.entries, block.entries.T, atol=1e-15)

    def test_fixed_point(self):
        theta, phi, alpha = 0.5, 0.6, 0.7
        block = m5_iterative(theta, phi, alpha)
        aux = block.auxiliary
        r, s, u, b, t = aux["r"], aux["s"], aux["u"], aux["B"], aux["t"]
        k1, k2, k3 = aux["k1"], aux["k2"], aux["k3"]
        ct, cp, ca = np.cos([theta, phi, alpha])
        st, sp, sa = np.sin([theta, phi, alpha])
        base = np.array(
            [(1 + ct) * sp * sa, st * (1 + cp) * sa, st * sp * (1 + ca)]
        ) / 64 - np.array([k2 * k3, k1 * k3, k1 * k2]) / t
        expected = base - np.array([s * u, r * u, r * s]) / b
        np.testing.assert_allclose([r, s, u], expected, atol=1e-13)

    def test_small_angles_psd(self):
        assert m5_iterative(0.2, 0.25, 0.3).psd

    def test_budget_exhausted(self):
        with pytest.raises(ConvergenceError) as info:
            m5_iterative(0.5, 0.6, 0.7, max_iter=1, tol=1e-300)
        assert info.value.iterations == 1

    def test_zero_angles(self):
        block = m5_iterative(0.0, 0.0, 0.0)
        # only the 000 corner survives when every cosine is one
        assert block.auxiliary["t"] == 0.0
        assert block.entries[0, 0] == pytest.approx(16 / 64)

    def test_rejects_cosine_below_domain(self):
        with pytest.raises(InvalidInputError, match="1/sqrt5"):
            m5_iterative(0.5, 0.6, 1.2)

    def test_admissible_grid(self):
        """15 cosines per angle from 1/sqrt5 to 1: every block converges and is PSD."""
        angles = np.arccos(np.linspace(1 / SQRT5, 1.0, 15))
        failures = []
        for theta, phi, alpha in product(angles, repeat=3):
            block = m5_iterative(theta, phi, alpha)
            d_min = min(block.auxiliary[f"d{i}"] for i in (1, 2, 3))
            converged = block.residuals["iteration"] < 1e-12 and block.residuals["iterations"] < 200
            if not (converged and d_min >= -1e-10 and block.psd):
                failures.append((theta, phi, alpha, d_min))
        assert failures == []
