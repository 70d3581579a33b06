"""
Repetition-code advantage distillation on single-pair Bell-diagonal states.
"""

import numpy as np

from ..errors import InvalidInputError
from .distribution import BellDiagonalDistribution

# Fixed point ratio of the D_C = 0 isotropic state, ((p_I - p_z)/(p_I + p_z))
GOLDEN_RATIO_X = (3.0 - np.sqrt(5.0)) / 2.0


def rcad(state: BellDiagonalDistribution, n: int) -> BellDiagonalDistribution:
    """State kept after announcing the parities of a block of n pairs.

    The result is subnormalized; its total is the acceptance probability.
    """
    if n < 1:
        raise InvalidInputError(f"blocksize must be at least 1, got {n}")
    p_i, p_x, p_y, p_z = state.p
    plus_iz, minus_iz = (p_i + p_z) ** n, (p_i - p_z) ** n
    plus_xy, minus_xy = (p_x + p_y) ** n, (p_x - p_y) ** n
    weights = 0.5 * np.array(
        [plus_iz + minus_iz, plus_xy + minus_xy, plus_xy - minus_xy, plus_iz - minus_iz]
    )
    return BellDiagonalDistribution(1, weights)


def rcad_cosine(n: int) -> float:
    """cos(theta) of the normalized RCAD output of the D_C = 0 isotropic state."""
    if n < 1:
        raise InvalidInputError(f"blocksize must be at least 1, got {n}")
    x = GOLDEN_RATIO_X**n
    return float((1.0 - x) / (1.0 + x))


def rcad_angle(n: int) -> float:
    return float(np.arccos(rcad_cosine(n)))


def rcad_angle_state(theta: float, y_zero: bool = False) -> BellDiagonalDistribution:
    """D_C = 0 state parametrized by an angle in [0, pi/2].

    (1 + c + s, 1 - c, 1 - c, 1 + c - s)/4, or with y_zero the x and y weights
    merged into p_x = (1 - c)/2.
    """
    if not 0.0 <= theta <= np.pi / 2 + 1e-12:
        raise InvalidInputError(f"theta = {theta} outside [0, pi/2]")
    c = float(np.cos(theta))
    s = float(np.sqrt(max(0.0, 1.0 - c * c)))
    if y_zero:
        weights = [(1 + c + s) / 4, (1 - c) / 2, 0.0, (1 + c - s) / 4]
    else:
        weights = [(1 + c + s) / 4, (1 - c) / 4, (1 - c) / 4, (1 + c - s) / 4]
    return BellDiagonalDistribution(1, np.array(weights))
