"""Bell-diagonal state engine: parameter estimation, RCAD and LAD transforms.

Threshold searches live in symext_qkd.bell.thresholds, which depends on the
analytic deciders.
"""

from .distribution import (
    AlphaCoords,
    Basis,
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
from .lad import lad_apply, repetition_code
from .rcad import rcad, rcad_angle, rcad_angle_state, rcad_cosine

__all__ = [
    "AlphaCoords",
    "Basis",
    "BellDiagonalDistribution",
    "ErrorRates",
    "alpha",
    "bb84_family",
    "bb84_worst_case",
    "d_c",
    "error_rates",
    "from_alpha",
    "from_density_matrix",
    "from_qber",
    "hadamard",
    "isotropic",
    "lad_apply",
    "normalize",
    "rcad",
    "rcad_angle",
    "rcad_angle_state",
    "rcad_cosine",
    "repetition_code",
    "rotate_basis",
    "six_state_average",
    "to_density_matrix",
]
