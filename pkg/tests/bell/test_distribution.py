"""
Unit tests for Bell-diagonal distributions and parameter estimation.
"""

import numpy as np
import pytest

from symext_qkd.bell.distribution import (
    AlphaCoords,
    BellDiagonalDistribution,
    ErrorRates,
    alpha,
    bb84_family,
    bb84_worst_case,
    d_c,
    error_rates,
    from_alpha,
    from_density_matrix,
    from_qber,
    hadamard,
    isotropic,
    normalize,
    rotate_basis,
    six_state_average,
    to_density_matrix,
)
from symext_qkd.errors import InvalidInputError
from symext_qkd.quantum.paulis import bell_projector
from symext_qkd.quantum.states import DensityMatrix
from tests.conftest import make_bell_state, make_random_bell_state


class TestBellDiagonalDistribution:
    """Validation and tensor structure."""

    def test_rejects_wrong_length(self):
        with pytest.raises(InvalidInputError, match="4\\^N"):
            BellDiagonalDistribution(2, np.ones(4) / 4)

    def test_rejects_negative(self):
        with pytest.raises(InvalidInputError, match="negative"):
            make_bell_state(1.1, -0.1, 0.0, 0.0)

    def test_rejects_total_above_one(self):
        with pytest.raises(InvalidInputError, match="total"):
            make_bell_state(0.9, 0.2, 0.0, 0.0)

    def test_product_is_most_significant_first(self):
        a = make_bell_state(1.0, 0.0, 0.0, 0.0)
        b = make_bell_state(0.0, 0.0, 0.0, 1.0)
        product = BellDiagonalDistribution.product_of(a, b)
        assert product.pairs == 2
        assert product.weights[3] == pytest.approx(1.0)  # digits (I, z)

    def test_power(self, isotropic_weights):
        cube = isotropic_weights.power(3)
        assert cube.pairs == 3
        assert cube.total == pytest.approx(1.0)
        assert cube.weights[0] == pytest.approx(0.7**3)

    def test_xy_symmetry(self, isotropic_weights):
        assert isotropic_weights.power(2).is_xy_symmetric()
        assert not make_bell_state(0.7, 0.2, 0.0, 0.1).is_xy_symmetric()

    def test_normalize(self):
        state = normalize(make_bell_state(0.2, 0.1, 0.1, 0.1))
        assert state.total == pytest.approx(1.0)

    def test_zero_total_is_unrepresentable(self):
        with pytest.raises(InvalidInputError, match=r"outside \(0, 1\]"):
            BellDiagonalDistribution(1, np.zeros(4))


# =============================================================================
# Parameter estimation
# =============================================================================


class TestParameterEstimation:
    """Error rates, basis rotations and isotropic averaging."""

    def test_isotropic(self):
        np.testing.assert_allclose(isotropic(0.1).weights, [0.7, 0.1, 0.1, 0.1])
        with pytest.raises(InvalidInputError):
            isotropic(0.4)

    def test_qber_round_trip(self, rng):
        for _ in range(20):
            state = make_random_bell_state(rng)
            back = from_qber(error_rates(state))
            np.testing.assert_allclose(back.weights, state.weights, atol=1e-14)

    def test_equal_rates_give_isotropic(self):
        state = from_qber(ErrorRates(0.2, 0.2, 0.2))
        np.testing.assert_allclose(state.weights, isotropic(0.1).weights, atol=1e-15)

    def test_six_state_average(self):
        averaged = six_state_average(ErrorRates(0.1, 0.2, 0.3))
        np.testing.assert_allclose(averaged.weights, isotropic(0.1).weights, atol=1e-15)

    def test_rejects_inconsistent_rates(self):
        with pytest.raises(InvalidInputError, match="negative Bell weight"):
            ErrorRates(0.0, 0.0, 0.5)

    def test_rotate_basis(self):
        state = make_bell_state(0.4, 0.3, 0.2, 0.1)
        np.testing.assert_allclose(rotate_basis(state, "y").weights, [0.4, 0.1, 0.3, 0.2])
        np.testing.assert_allclose(rotate_basis(state, "x").weights, [0.4, 0.2, 0.1, 0.3])
        np.testing.assert_allclose(rotate_basis(state, "z").weights, state.weights)

    def test_rotations_cycle(self):
        state = make_bell_state(0.4, 0.3, 0.2, 0.1)
        thrice = rotate_basis(rotate_basis(rotate_basis(state, "y"), "y"), "y")
        np.testing.assert_allclose(thrice.weights, state.weights)

    def test_hadamard_exchanges_x_and_z(self):
        state = make_bell_state(0.4, 0.3, 0.2, 0.1)
        np.testing.assert_allclose(hadamard(state).weights, [0.4, 0.1, 0.2, 0.3])

    def test_bb84_family_rates(self):
        rates = error_rates(bb84_family(0.1, -0.7))
        assert rates.qx == pytest.approx(0.1)
        assert rates.qz == pytest.approx(0.1)

    def test_bb84_worst_case_has_no_y(self):
        np.testing.assert_allclose(bb84_worst_case(0.1).weights, [0.8, 0.1, 0.0, 0.1], atol=1e-15)

    def test_bb84_family_rejects_r22(self):
        with pytest.raises(InvalidInputError, match="r22"):
            bb84_family(0.1, 0.9)


# =============================================================================
# Coordinates
# =============================================================================


class TestCoordinates:
    """alpha coordinates and D_C."""

    def test_alpha_round_trip(self, rng):
        state = make_random_bell_state(rng)
        np.testing.assert_allclose(from_alpha(alpha(state)).weights, state.weights, atol=1e-15)

    def test_maximally_mixed(self):
        coords = alpha(make_bell_state(0.25, 0.25, 0.25, 0.25))
        assert coords == AlphaCoords(1.0, 0.0, 0.0, 0.0)

    def test_d_c_zero_at_golden_isotropic(self):
        p = (5.0 - np.sqrt(5.0)) / 20.0
        assert d_c(isotropic(p)) == pytest.approx(0.0, abs=1e-12)

    def test_d_c_extended_values(self):
        assert d_c(make_bell_state(1.0, 0.0, 0.0, 0.0)) == float("inf")
        assert d_c(make_bell_state(0.5, 0.0, 0.0, 0.5)) == float("-inf")


# =============================================================================
# Dense conversion
# =============================================================================


class TestDenseConversion:
    """to_density_matrix and its inverse."""

    @pytest.mark.parametrize("index", range(4))
    def test_single_pair_projectors(self, index):
        weights = np.zeros(4)
        weights[index] = 1.0
        rho = to_density_matrix(BellDiagonalDistribution(1, weights))
        np.testing.assert_allclose(rho.entries, bell_projector(index), atol=1e-15)

    def test_round_trip_two_pairs(self, rng):
        state = BellDiagonalDistribution(2, rng.dirichlet(np.ones(16)))
        back = from_density_matrix(to_density_matrix(state))
        np.testing.assert_allclose(back.weights, state.weights, atol=1e-14)

    def test_subnormalized_trace(self):
        rho = to_density_matrix(make_bell_state(0.2, 0.1, 0.0, 0.0))
        assert rho.trace == pytest.approx(0.3)

    def test_rejects_non_bell_diagonal(self):
        rho = DensityMatrix((2, 2), np.diag([1.0, 0.0, 0.0, 0.0]))
        with pytest.raises(InvalidInputError, match="not Bell-diagonal"):
            from_density_matrix(rho)
