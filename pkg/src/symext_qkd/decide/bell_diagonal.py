"""
Symmetric extension of single-pair Bell-diagonal states.

In the coordinates alpha1..alpha3 a normalized Bell-diagonal state is
extendible iff at least one of three polynomial conditions holds: a rank-one
condition and two rank-two branches.
"""

import numpy as np

from ..bell.distribution import BellDiagonalDistribution, alpha, normalize
from .models import Decision

SQRT2 = float(np.sqrt(2.0))


def condition_slacks(a1: float, a2: float, a3: float) -> dict[str, float]:
    """Minimal slack of each condition; nonnegative means it holds."""
    d = a2 * a2 - a3 * a3
    rank_one = 4.0 * a1 * d - d * d - 4.0 * a1 * a1 * (a2 * a2 + a3 * a3)
    rank_two_z = min(d - 2.0 * SQRT2 * a1 * abs(a2), abs(a2) - 2.0 * SQRT2 * a1)
    rank_two_x = min(-d + 2.0 * SQRT2 * a1 * abs(a3), abs(a3) + 2.0 * SQRT2 * a1)
    return {
        "bell_diagonal.rank_one": rank_one,
        "bell_diagonal.rank_two_z": rank_two_z,
        "bell_diagonal.rank_two_x": rank_two_x,
    }


def decide_bell_diag(state: BellDiagonalDistribution) -> Decision:
    """Decide extendibility of a single-pair Bell-diagonal state.

    The margin is the largest slack over the three conditions.
    """
    coords = alpha(normalize(state))
    slacks = condition_slacks(coords.alpha1, coords.alpha2, coords.alpha3)
    rule = max(slacks, key=lambda name: slacks[name])
    return Decision.from_margin(slacks[rule], rule, alphas=[coords.alpha1, coords.alpha2, coords.alpha3])


def decide_bell_diag_split(state: BellDiagonalDistribution) -> Decision:
    """Same question through the purity-difference and determinant inequality.

    For Bell-diagonal states tr(rho_B^2) = 1/2, so extendibility reads
    4 sqrt(det rho) >= tr(rho^2) - 1/2. When the purity difference is
    nonpositive the state is extendible outright.
    """
    weights = normalize(state).weights
    purity_excess = float(np.sum(weights**2)) - 0.5
    det = float(np.prod(weights))
    margin = 4.0 * np.sqrt(max(det, 0.0)) - purity_excess
    rule = "bell_diagonal.purity" if purity_excess <= 0 else "bell_diagonal.determinant"
    return Decision.from_margin(float(margin), rule, purity_excess=purity_excess, det=det)
