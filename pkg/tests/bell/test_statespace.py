"""
Tests for the (alpha1, alpha2) state-space curves.
"""

import numpy as np
import pytest

from symext_qkd.bell.distribution import AlphaCoords, d_c, from_alpha
from symext_qkd.bell.statespace import (
    SQRT2,
    curves,
    dc_level_set,
    inner_ellipse,
    outer_ellipse,
    tetrahedron_section,
)
from symext_qkd.decide.bell_diagonal import condition_slacks


class TestDcLevelSet:
    def test_zero_level_endpoints(self):
        points = dc_level_set(0.0, 201)
        np.testing.assert_allclose(points[0], [1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(points[100], [0.0, np.sqrt(0.5)], atol=1e-12)

    @pytest.mark.parametrize("level", [-2.0, -1.0, 0.0, 1.0])
    def test_points_have_requested_dc(self, level):
        points = dc_level_set(level, 51)
        for a1, a2 in points[1:-1]:
            if a2 > (1 + a1) / SQRT2 - 1e-9:
                continue
            state = from_alpha(AlphaCoords(1.0, float(a1), float(a2), 0.0))
            assert d_c(state) == pytest.approx(level, abs=1e-9)

    def test_points_inside_triangle(self):
        points = dc_level_set(2.0, 101)
        assert np.all(points[:, 1] <= (1 + points[:, 0]) / SQRT2 + 1e-12)
        assert len(points) < 101


class TestEllipses:
    def test_outer_equation(self):
        a1, a2 = outer_ellipse(64).T
        np.testing.assert_allclose(4 * (a1 - 0.5) ** 2 + a2**2, 1.0, atol=1e-12)

    def test_inner_equation(self):
        a1, a2 = inner_ellipse(64).T
        np.testing.assert_allclose(2.25 * (a1 - 1 / 3) ** 2 + 1.5 * a2**2, 1.0, atol=1e-12)

    def test_outer_ellipse_is_extendibility_boundary(self):
        for a1, a2 in outer_ellipse(40):
            slack = condition_slacks(float(a1), float(a2), 0.0)["bell_diagonal.rank_one"]
            assert slack == pytest.approx(0.0, abs=1e-12)


class TestCollections:
    def test_triangle_is_closed(self):
        polygon = tetrahedron_section()
        np.testing.assert_array_equal(polygon[0], polygon[-1])

    def test_curve_names(self):
        names = set(curves(levels=(0.0, 1.0), samples=10))
        assert names == {"dc_0", "dc_1", "outer_ellipse", "inner_ellipse", "tetrahedron"}
