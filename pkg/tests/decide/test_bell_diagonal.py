"""
Tests for the single-pair Bell-diagonal decider.
"""

import numpy as np
import pytest

from symext_qkd.bell.distribution import isotropic
from symext_qkd.bell.thresholds import P_DC_ZERO
from symext_qkd.decide.bell_diagonal import (
    condition_slacks,
    decide_bell_diag,
    decide_bell_diag_split,
)
from symext_qkd.decide.models import Decision, Verdict
from tests.conftest import make_bell_state, make_random_bell_state


class TestDecideBellDiag:
    def test_maximally_mixed(self):
        assert decide_bell_diag(make_bell_state(0.25, 0.25, 0.25, 0.25)).verdict is Verdict.YES

    def test_bell_state(self):
        decision = decide_bell_diag(make_bell_state(1.0, 0.0, 0.0, 0.0))
        assert decision.verdict is Verdict.NO
        assert decision.margin == pytest.approx(-2.0)

    def test_dc_zero_isotropic_state(self):
        assert decide_bell_diag(isotropic(P_DC_ZERO)).verdict is Verdict.YES

    @pytest.mark.parametrize("p,extendible", [(0.05, False), (0.1, True), (0.2, True)])
    def test_isotropic_line(self, p, extendible):
        assert decide_bell_diag(isotropic(p)).verdict.extendible is extendible

    def test_isotropic_boundary(self):
        # rank-one slack 4 s^3 (2 - 3 s) with s = 1 - 4p vanishes at p = 1/12
        assert decide_bell_diag(isotropic(1 / 12)).margin == pytest.approx(0.0, abs=1e-12)

    def test_unnormalized_input(self):
        full = decide_bell_diag(make_bell_state(0.7, 0.1, 0.1, 0.1))
        half = decide_bell_diag(make_bell_state(0.35, 0.05, 0.05, 0.05))
        assert half.margin == pytest.approx(full.margin)

    def test_details_carry_alphas(self):
        decision = decide_bell_diag(make_bell_state(0.7, 0.1, 0.1, 0.1))
        np.testing.assert_allclose(decision.details["alphas"], [0.6, 0.6 * np.sqrt(2), 0.0])

    def test_rule_is_the_largest_slack(self):
        decision = decide_bell_diag(make_bell_state(0.6, 0.2, 0.0, 0.2))
        slacks = condition_slacks(*decision.details["alphas"])
        assert decision.rule == max(slacks, key=lambda name: slacks[name])
        assert decision.rule == "bell_diagonal.rank_two_x"


class TestSplitCriterion:
    def test_boundary_agrees(self):
        assert decide_bell_diag_split(isotropic(1 / 12)).margin == pytest.approx(0.0, abs=1e-12)

    def test_purity_rule(self):
        decision = decide_bell_diag_split(make_bell_state(0.5, 0.5, 0.0, 0.0))
        assert decision.rule == "bell_diagonal.purity"
        assert decision.verdict is Verdict.YES

    def test_agrees_with_polynomial_conditions(self, rng):
        compared = 0
        for _ in range(300):
            state = make_random_bell_state(rng)
            a = decide_bell_diag(state)
            b = decide_bell_diag_split(state)
            if min(abs(a.margin), abs(b.margin)) < 1e-9:
                continue
            assert a.verdict is b.verdict
            compared += 1
        assert compared > 250


class TestDecisionModel:
    def test_from_margin_tolerance(self):
        assert Decision.from_margin(-1e-13, "r").verdict is Verdict.YES
        assert Decision.from_margin(-1e-9, "r").verdict is Verdict.NO

    def test_conjectured(self):
        decision = Decision.from_margin(0.5, "r", proven=False, extra=1)
        assert decision.verdict is Verdict.CONJECTURED_YES
        assert decision.details == {"extra": 1}
        assert not decision.verdict.is_proven
        assert decision.verdict.extendible
