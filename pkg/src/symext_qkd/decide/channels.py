"""
Antidegradability and degradability of channels.

A channel is antidegradable iff its Choi state has a symmetric extension on the
output, and degradable iff the Choi state of its complementary channel has one
on the environment.
"""

import numpy as np
import structlog

from ..errors import UndecidedError
from ..quantum.channels import (
    QuantumChannel,
    choi_state,
    complementary_channel,
    environment_rank,
)
from ..quantum.states import DensityMatrix
from .models import Decision
from .two_qubit import RANK_TOL, decide_rank2, proven_class_decision

logger = structlog.get_logger(__name__)


def decide_bipartite(rho: DensityMatrix) -> Decision:
    """Route a bipartite state to a proven decider.

    Raises:
        UndecidedError: no proven decider covers the state.
    """
    d_a, d_b = rho.dims
    if d_b == 1:
        return Decision.from_margin(0.0, "trivial_b")
    if rho.dims == (2, 2):
        decision = proven_class_decision(rho)
        if decision is not None and decision.verdict.is_proven:
            return decision
    elif int(np.sum(np.linalg.eigvalsh(rho.normalized().entries) > RANK_TOL)) <= 2:
        decision = decide_rank2(rho)
        if decision.verdict.is_proven:
            return decision
    raise UndecidedError(
        f"no proven symmetric-extension decider covers this {d_a}x{d_b} state"
    )


def is_antidegradable(channel: QuantumChannel) -> Decision:
    """Symmetric extension of the Choi state."""
    decision = decide_bipartite(choi_state(channel))
    logger.debug("antidegradability_decided", verdict=decision.verdict.value, rule=decision.rule)
    return decision


def is_degradable(channel: QuantumChannel) -> Decision:
    """Symmetric extension of the complementary Choi state.

    Qubit-output channels with more than two environment dimensions are never
    degradable.
    """
    env = environment_rank(channel)
    if channel.output_dim == 2 and env > 2:
        return Decision.from_margin(float(2 - env), "degradable.environment_rank", env_rank=env)
    decision = decide_bipartite(choi_state(complementary_channel(channel)))
    logger.debug("degradability_decided", verdict=decision.verdict.value, rule=decision.rule)
    return decision
