"""GF(2) parity-check algebra and parity-matrix equivalence classes."""

from .equivalence import (
    canonical_form,
    class_key,
    enumerate_classes,
    equivalent,
    header_labels,
    header_order,
    is_irreducible,
    row_label,
)
from .gf2 import (
    ParityCheckMatrix,
    ParityMatrix,
    ReductionReport,
    gf2_rank,
    maurer_equivalent,
    recompose,
    reduce,
    row_masks,
    rref,
    to_systematic,
)

__all__ = [
    "ParityCheckMatrix",
    "ParityMatrix",
    "ReductionReport",
    "canonical_form",
    "class_key",
    "enumerate_classes",
    "equivalent",
    "gf2_rank",
    "header_labels",
    "header_order",
    "is_irreducible",
    "maurer_equivalent",
    "recompose",
    "reduce",
    "row_label",
    "row_masks",
    "rref",
    "to_systematic",
]
