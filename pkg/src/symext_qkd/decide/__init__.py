"""Closed-form symmetric-extension deciders."""

from .bell_diagonal import condition_slacks, decide_bell_diag, decide_bell_diag_split
from .channels import decide_bipartite, is_antidegradable, is_degradable
from .models import Decision, Verdict
from .pure_extension import (
    FilterResult,
    apply_filter,
    construct_pure_extension,
    extension_defects,
    filter_falsify,
    spectrum_condition,
    spectrum_deviation,
)
from .two_qubit import (
    as_zz_y0,
    conjecture_margin,
    decide_conjecture,
    decide_rank2,
    decide_sym_subspace,
    decide_zz_y0,
    proven_class_decision,
)

__all__ = [
    "Decision",
    "FilterResult",
    "Verdict",
    "apply_filter",
    "as_zz_y0",
    "condition_slacks",
    "conjecture_margin",
    "construct_pure_extension",
    "decide_bell_diag",
    "decide_bell_diag_split",
    "decide_bipartite",
    "decide_conjecture",
    "decide_rank2",
    "decide_sym_subspace",
    "decide_zz_y0",
    "extension_defects",
    "filter_falsify",
    "is_antidegradable",
    "is_degradable",
    "proven_class_decision",
    "spectrum_condition",
    "spectrum_deviation",
]
