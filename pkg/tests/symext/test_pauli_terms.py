"""
Tests for the single-pair term tables.
"""

import numpy as np
import pytest

from symext_qkd.quantum.paulis import pauli_string
from symext_qkd.symext.pauli_terms import PLUS_SPACE, phase_symmetric_terms, triple_terms


@pytest.fixture(params=["P", "R"])
def terms(request):
    return triple_terms() if request.param == "P" else phase_symmetric_terms()


class TestTables:
    def test_sizes(self):
        assert triple_terms().size == 16
        assert phase_symmetric_terms().size == 10
        assert triple_terms().projected.shape == (16, 4, 4)

    def test_labels(self):
        assert triple_terms().label(0) == "P1"
        assert phase_symmetric_terms().label(9) == "R10"

    def test_swap_is_involution(self, terms):
        for i in range(terms.size):
            j = terms.swap[i]
            assert terms.swap[j] == i
            assert terms.swap_sign[j] == terms.swap_sign[i]

    def test_fixed_terms_have_identity_on_b_prime(self, terms):
        for i in terms.fixed:
            op = terms.full[i].reshape(4, 2, 4, 2)
            # operator factorizes as X_AB (x) 1_B'
            np.testing.assert_allclose(op[:, 0, :, 1], 0, atol=1e-12)
            np.testing.assert_allclose(op[:, 0, :, 0], op[:, 1, :, 1], atol=1e-12)

    def test_projection_matches_plus_space(self, terms):
        for full, projected in zip(terms.full, terms.projected, strict=True):
            np.testing.assert_allclose(PLUS_SPACE.conj().T @ full @ PLUS_SPACE, projected, atol=1e-12)

    def test_swap_pairs(self):
        terms = triple_terms()
        # xxI <-> xIx and xyz <-> xzy
        assert terms.swap[4] == 7
        assert terms.swap[10] == 13
        assert terms.swap[1] == 1

    def test_odd_terms_are_imaginary_under_transpose(self):
        terms = triple_terms()
        for i in range(terms.size):
            op = terms.full[i]
            sign = -1 if i in terms.odd else 1
            np.testing.assert_allclose(op.T, sign * op, atol=1e-12)

    def test_phase_terms_are_combinations(self):
        r = phase_symmetric_terms()
        np.testing.assert_allclose(r.full[1], pauli_string("Ixx") + pauli_string("Iyy"))
        assert r.fixed == frozenset({0, 3, 4})
        assert r.odd == frozenset({7, 8, 9})
