"""Symmetry-reduced symmetric-extension SDPs for Bell-diagonal states."""

from .builder import (
    SymextProblem,
    SymextResult,
    SymmetryMode,
    build,
    count_open_variables,
    decide_sdp,
    min_t,
    pauli_coefficients,
    solve,
    term_structure,
)
from .extension import ExtensionReport, extract_extension, verify_extension
from .pauli_terms import TermSet, phase_symmetric_terms, triple_terms
from .tables import TableRow, reproduce_table, solve_class, starting_state

__all__ = [
    "ExtensionReport",
    "SymextProblem",
    "SymextResult",
    "SymmetryMode",
    "TableRow",
    "TermSet",
    "build",
    "count_open_variables",
    "decide_sdp",
    "extract_extension",
    "min_t",
    "pauli_coefficients",
    "phase_symmetric_terms",
    "reproduce_table",
    "solve",
    "solve_class",
    "starting_state",
    "term_structure",
    "triple_terms",
    "verify_extension",
]
