"""
Error-rate thresholds for advantage distillation.

Closed forms for the two-way thresholds and the symmetric-extension bound,
plus bisection searches that recover them numerically.
"""

from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np
import structlog
from scipy.optimize import bisect, brentq

from ..config import config
from ..decide.bell_diagonal import decide_bell_diag
from ..errors import InvalidInputError
from .distribution import BellDiagonalDistribution, bb84_worst_case, d_c, isotropic, normalize
from .rcad import rcad

logger = structlog.get_logger(__name__)

SQRT5 = float(np.sqrt(5.0))

# Isotropic parameter of the D_C = 0 state
P_DC_ZERO = (5.0 - SQRT5) / 20.0


class Protocol(str, Enum):
    """QKD protocol whose parameter estimation fixes the starting state."""

    SIX_STATE = "six-state"
    BB84 = "bb84"


@dataclass(frozen=True)
class Thresholds:
    """QBER thresholds."""

    six_state_two_way: float
    bb84_two_way: float
    six_state_symext_oneway: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def thresholds() -> Thresholds:
    """Closed-form thresholds.

    Two-way six-state (5 - sqrt5)/10 and BB84 1/5 from D_C = 0; one-way 1/6
    where the isotropic line meets the extendibility ellipse.
    """
    return Thresholds(
        six_state_two_way=(5.0 - SQRT5) / 10.0,
        bb84_two_way=0.2,
        six_state_symext_oneway=1.0 / 6.0,
    )


def protocol_state(protocol: Protocol | str, qber: float) -> BellDiagonalDistribution:
    """Worst-case starting state for a protocol at the given QBER."""
    if Protocol(protocol) is Protocol.SIX_STATE:
        return isotropic(qber / 2.0)
    return bb84_worst_case(qber)


def two_way_threshold_bisect(protocol: Protocol | str) -> float:
    """QBER where D_C of the protocol's worst-case state crosses zero."""
    protocol = Protocol(protocol)
    upper = 0.49 if protocol is Protocol.SIX_STATE else 0.3
    root = brentq(lambda q: d_c(protocol_state(protocol, q)), 1e-6, upper, xtol=1e-15)
    logger.debug("two_way_threshold_found", protocol=protocol.value, qber=root)
    return float(root)


def threshold_p(n: int, iterations: int | None = None) -> float:
    """Smallest isotropic p whose normalized RCAD output on n pairs has a symmetric extension.

    Bisects the analytic margin between p = 0 (never extendible) and the
    D_C = 0 state (always extendible).
    """
    if n < 1:
        raise InvalidInputError(f"blocksize must be at least 1, got {n}")
    iterations = config.bisection_iterations if iterations is None else iterations

    def margin(p: float) -> float:
        return decide_bell_diag(normalize(rcad(isotropic(p), n))).margin

    root = bisect(margin, 0.0, P_DC_ZERO, xtol=1e-16, maxiter=iterations, disp=False)
    logger.debug("threshold_p_found", n=n, p=root)
    return float(root)


def threshold_qber(n: int, protocol: Protocol | str = Protocol.SIX_STATE) -> float:
    """QBER at the blocksize-n extendibility threshold of the protocol's worst-case state.

    Six-state is 2 threshold_p(n); BB84 bisects from 0 up to the first
    extendible QBER at or above 1/5.
    """
    protocol = Protocol(protocol)
    if protocol is Protocol.SIX_STATE:
        return 2.0 * threshold_p(n)
    if n < 1:
        raise InvalidInputError(f"blocksize must be at least 1, got {n}")

    def margin(q: float) -> float:
        return decide_bell_diag(normalize(rcad(bb84_worst_case(q), n))).margin

    upper = 0.2
    while margin(upper) < 0.0 and upper < 0.5:
        upper = min(upper + 0.05, 0.5)
    root = bisect(margin, 0.0, upper, xtol=1e-16, maxiter=config.bisection_iterations, disp=False)
    logger.debug("threshold_qber_found", n=n, protocol=protocol.value, qber=root)
    return float(root)
