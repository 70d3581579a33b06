"""
Tests for rebuilding full extensions from witness blocks.
"""

import numpy as np
import pytest

from symext_qkd.bell.rcad import rcad_cosine
from symext_qkd.errors import InvalidInputError
from symext_qkd.witnesses.blocks import WitnessVariant, m4_diag, m5_iterative
from symext_qkd.witnesses.reconstruct import (
    PLUS_PLUS_ORDER,
    coverage,
    plus_plus_block,
    reconstruct_extension,
    split_witness,
    splits,
    target_state,
    verify_witness,
)


def expected_trace(cosines):
    ct, cp, ca = cosines
    return (1 + ct * cp * ca) / 2


class TestPlusPlusBlock:
    def test_order_is_plus_plus_space(self):
        assert len(PLUS_PLUS_ORDER) == 16
        assert all(a ^ b ^ c == 0 for a, b, c in PLUS_PLUS_ORDER)

    @pytest.mark.parametrize("block", [m4_diag(0.3, 0.5, 0.7), m5_iterative(0.3, 0.5, 0.7)])
    def test_trace_of_four_copies(self, block):
        assert 4 * np.trace(plus_plus_block(block)) == pytest.approx(expected_trace(block.cosines))


class TestReconstruct:
    def test_classical_corner(self):
        extension = reconstruct_extension(m4_diag(0.0, 0.0, 0.0))
        expected = np.zeros((64, 64))
        for g in range(4):
            expected[21 * g, 21 * g] = 0.25
        np.testing.assert_allclose(extension.entries.real, expected, atol=1e-15)

    def test_swap_symmetric(self):
        extension = reconstruct_extension(m4_diag(0.3, 0.4, 0.5))
        assert extension.dims == (4, 4, 4)
        check = verify_witness(m4_diag(0.3, 0.4, 0.5))
        assert check.swap_defect < 1e-12

    def test_rejects_indefinite_block(self):
        with pytest.raises(InvalidInputError):
            reconstruct_extension(m4_diag(1.2, 1.2, 1.2))

    def test_target_is_lad_output(self):
        block = m4_diag(0.3, 0.4, 0.5)
        target = target_state(block)
        assert target.dims == (4, 4)
        assert target.trace == pytest.approx(expected_trace(block.cosines))

    @pytest.mark.parametrize("split", [(1, 1, 1), (2, 1, 1), (3, 1, 1), (2, 2, 2), (5, 3, 2)])
    def test_split_witnesses_verify(self, split):
        check = verify_witness(split_witness(*split))
        assert check.ok
        assert check.trace == pytest.approx(check.expected_trace)


class TestSplits:
    def test_enumeration(self):
        assert set(splits(6)) == {(4, 1, 1), (3, 2, 1), (2, 2, 2)}
        assert sum(len(splits(total)) for total in range(3, 13)) == 53

    def test_variant_choice(self):
        assert split_witness(1, 1, 1).variant is WitnessVariant.M4_EQUAL_ANGLE
        assert split_witness(1, 2, 1).variant is WitnessVariant.M4_EQUAL_ANGLE
        assert split_witness(3, 1, 1).variant is WitnessVariant.M4_DIAG

    def test_cosines_sorted(self):
        block = split_witness(1, 3, 2)
        assert block.cosines == pytest.approx((rcad_cosine(3), rcad_cosine(2), rcad_cosine(1)))

    def test_rejects_empty_block(self):
        with pytest.raises(InvalidInputError):
            split_witness(0, 1, 1)

    def test_coverage_small(self):
        results = coverage(6)
        assert len(results) == 7
        assert all(check.ok for check in results.values())

    @pytest.mark.slow
    def test_coverage_to_twelve(self):
        results = coverage(12)
        assert len(results) == 53
        assert [split for split, check in results.items() if not check.ok] == []
