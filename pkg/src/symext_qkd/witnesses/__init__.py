"""Analytic symmetric-extension witnesses for LAD outputs of RCAD blocks."""

from .blocks import (
    EQUAL_ANGLE_ROOT,
    WitnessBlock,
    WitnessVariant,
    equal_angle_determinant,
    m4_diag,
    m4_equal_angle,
    m5_iterative,
    positivity_function,
    sign_product,
)
from .reconstruct import (
    PLUS_PLUS_ORDER,
    ExtensionCheck,
    coverage,
    plus_plus_block,
    reconstruct_extension,
    split_witness,
    splits,
    target_state,
    verify_witness,
)

__all__ = [
    "EQUAL_ANGLE_ROOT",
    "PLUS_PLUS_ORDER",
    "ExtensionCheck",
    "WitnessBlock",
    "WitnessVariant",
    "coverage",
    "equal_angle_determinant",
    "m4_diag",
    "m4_equal_angle",
    "m5_iterative",
    "plus_plus_block",
    "positivity_function",
    "reconstruct_extension",
    "sign_product",
    "split_witness",
    "splits",
    "target_state",
    "verify_witness",
]
