"""
Tests for antidegradability and degradability of qubit channels.
"""

import numpy as np
import pytest

from symext_qkd.decide.channels import is_antidegradable, is_degradable
from symext_qkd.decide.models import Verdict
from symext_qkd.quantum.channels import (
    QuantumChannel,
    dephasing_channel,
    depolarizing_channel,
    pauli_channel,
)


@pytest.fixture
def identity_channel():
    return QuantumChannel((np.eye(2),))


class TestAntidegradable:
    def test_identity(self, identity_channel):
        assert is_antidegradable(identity_channel).verdict is Verdict.NO

    def test_fully_depolarizing(self):
        assert is_antidegradable(depolarizing_channel(1.0)).verdict is Verdict.YES

    @pytest.mark.parametrize("q,expected", [(0.3, Verdict.NO), (0.5, Verdict.YES)])
    def test_dephasing(self, q, expected):
        assert is_antidegradable(dephasing_channel(q)).verdict is expected

    def test_isotropic_noise_threshold(self):
        # Choi weights (1 - 3p, p, p, p) become extendible at p = 1/12
        below = pauli_channel(0.07, 0.07, 0.07)
        above = pauli_channel(0.1, 0.1, 0.1)
        assert is_antidegradable(below).verdict is Verdict.NO
        assert is_antidegradable(above).verdict is Verdict.YES


class TestDegradable:
    def test_identity(self, identity_channel):
        assert is_degradable(identity_channel).verdict is Verdict.YES

    def test_fully_depolarizing(self):
        decision = is_degradable(depolarizing_channel(1.0))
        assert decision.verdict is Verdict.NO
        assert decision.rule == "degradable.environment_rank"
        assert decision.details["env_rank"] == 4

    @pytest.mark.parametrize("q", [0.1, 0.3])
    def test_dephasing(self, q):
        assert is_degradable(dephasing_channel(q)).verdict is Verdict.YES
