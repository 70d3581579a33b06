"""Tests for parity-matrix equivalence classes and table labels."""

from itertools import product

import numpy as np
import pytest

from symext_qkd.codes.equivalence import (
    canonical_form,
    class_key,
    enumerate_classes,
    equivalent,
    header_labels,
    header_order,
    is_irreducible,
    row_label,
)
from symext_qkd.codes.gf2 import ParityMatrix, pivot_swap
from symext_qkd.errors import InvalidInputError


def make_parity(*rows: str) -> ParityMatrix:
    return ParityMatrix(np.array([[int(c) for c in r] for r in rows], dtype=np.uint8))


# Rows of the published k = 3, n = 6 table, best t first
K3_N6_PUBLISHED = [
    ("110", "101", "011"),
    ("100", "110", "101"),
    ("100", "101", "011"),
    ("100", "011", "011"),
    ("100", "101", "101"),
    ("100", "100", "011"),
    ("100", "100", "101"),
    ("100", "010", "111"),
    ("100", "010", "001"),
    ("100", "100", "010"),
    ("100", "100", "100"),
]


# =============================================================================
# equivalent
# =============================================================================


class TestEquivalent:
    """Orbits under column/row permutations and pivot swaps."""

    def test_row_swap(self):
        assert equivalent(make_parity("110", "011"), make_parity("011", "110"))

    def test_column_permutation(self):
        assert equivalent(make_parity("110", "001"), make_parity("011", "100"))

    def test_single_bit(self):
        assert equivalent(make_parity("1"), make_parity("1"))

    def test_distinct_table_rows(self):
        assert not equivalent(make_parity("100"), make_parity("011"))
        assert not equivalent(make_parity("111"), make_parity("011"))

    def test_pivot_swap_stays_in_class(self):
        P = make_parity("110", "011")
        swapped = ParityMatrix(pivot_swap(P.bits, 0, 1))
        assert equivalent(P, swapped)

    def test_shape_mismatch(self):
        with pytest.raises(InvalidInputError, match="shape mismatch"):
            equivalent(make_parity("11"), make_parity("111"))

    def test_relation_properties(self, rng):
        for _ in range(20):
            a, b, c = (ParityMatrix(rng.integers(0, 2, size=(2, 3))) for _ in range(3))
            assert equivalent(a, a)
            assert equivalent(a, b) == equivalent(b, a)
            if equivalent(a, b) and equivalent(b, c):
                assert equivalent(a, c)


# =============================================================================
# enumerate_classes
# =============================================================================


class TestEnumerateClasses:
    """Class counts and representatives."""

    @pytest.mark.parametrize(("n", "k", "count"), [(4, 3, 3), (5, 3, 6), (6, 3, 12), (5, 4, 4)])
    def test_table_row_counts(self, n, k, count):
        assert len(enumerate_classes(n, k)) == count

    def test_k3_n4_labels(self):
        """Weight-one rows lead: 100, 111 and 110."""
        labels = {row_label(P) for P in enumerate_classes(4, 3)}
        assert labels == {
            (1, 0, 0, 0, 0, 0, 0),
            (0, 0, 0, 1, 0, 0, 0),
            (0, 0, 0, 0, 1, 0, 0),
        }

    def test_single_bit_rows_lead(self):
        assert canonical_form(make_parity("001", "001", "111")).row_strings() == ["100", "100", "111"]
        assert canonical_form(make_parity("001")).row_strings() == ["100"]

    def test_k3_n6_published_rows(self):
        """Each published row hits its own class; {100, 100, 111} is the twelfth."""
        classes = enumerate_classes(6, 3)
        published = [make_parity(*rows) for rows in K3_N6_PUBLISHED]
        hits = [[i for i, C in enumerate(classes) if equivalent(C, P)] for P in published]
        assert all(len(h) == 1 for h in hits)
        matched = {h[0] for h in hits}
        assert len(matched) == 11
        (missing,) = set(range(len(classes))) - matched
        assert equivalent(classes[missing], make_parity("100", "100", "111"))
        assert equivalent(classes[missing], make_parity("111", "111", "111"))
        assert not equivalent(make_parity("100", "100", "111"), make_parity("100", "010", "001"))

    def test_single_irreducible_k4_n5(self):
        classes = enumerate_classes(5, 4, irreducible_only=True)
        assert [P.row_strings() for P in classes] == [["1111"]]

    @pytest.mark.parametrize("n", range(2, 10))
    def test_repetition_is_the_only_irreducible_k1(self, n):
        classes = enumerate_classes(n, 1, irreducible_only=True)
        assert len(classes) == 1
        assert classes[0].bits.sum() == n - 1

    def test_partition_of_all_matrices(self):
        classes = enumerate_classes(5, 3)
        keys = {class_key(P) for P in classes}
        assert len(keys) == len(classes)
        for bits in product((0, 1), repeat=6):
            P = ParityMatrix(np.array(bits, dtype=np.uint8).reshape(2, 3))
            if not P.bits.any(axis=1).all():
                continue
            assert sum(equivalent(C, P) for C in classes) == 1

    def test_representatives_are_canonical(self):
        for P in enumerate_classes(6, 3):
            np.testing.assert_array_equal(canonical_form(P).bits, P.bits)

    def test_rejects_bad_k(self):
        with pytest.raises(InvalidInputError):
            enumerate_classes(3, 3)


class TestIrreducible:
    def test_direct_sum_is_reducible(self):
        assert not is_irreducible(make_parity("110", "001"))

    def test_full_row(self):
        assert is_irreducible(make_parity("111"))


# =============================================================================
# Labels
# =============================================================================


class TestHeaderOrder:
    def test_k3(self):
        assert header_labels(3) == ["100", "010", "001", "111", "110", "101", "011"]

    def test_k4_starts_with_singles(self):
        order = header_order(4)
        assert len(order) == 15
        assert [format(r, "04b") for r in order[:5]] == ["1000", "0100", "0010", "0001", "1111"]

    def test_row_label_counts(self):
        assert row_label(make_parity("101", "011")) == (0, 0, 0, 0, 0, 1, 1)
