"""
Data models for symmetric-extension decisions.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

# |margin| below this counts as on the boundary
MARGIN_TOL = 1e-12


class Verdict(str, Enum):
    """Outcome of a decider."""

    YES = "YES"  # Proven: a symmetric extension exists
    NO = "NO"  # Proven: none exists
    CONJECTURED_YES = "CONJECTURED_YES"  # Only an unproven criterion supports it
    CONJECTURED_NO = "CONJECTURED_NO"

    @property
    def is_proven(self) -> bool:
        return self in (Verdict.YES, Verdict.NO)

    @property
    def extendible(self) -> bool:
        return self in (Verdict.YES, Verdict.CONJECTURED_YES)


@dataclass(frozen=True)
class Decision:
    """Verdict with the signed slack of the governing inequality.

    Attributes:
        verdict: Outcome.
        margin: LHS - RHS of the applied criterion; nonnegative means extendible.
        rule: Identifier of the applied criterion.
        details: Extra values the rule computed (e.g. min_t for the SDP route).
    """

    verdict: Verdict
    margin: float
    rule: str
    details: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_margin(
        cls, margin: float, rule: str, proven: bool = True, **details: Any
    ) -> "Decision":
        extendible = margin >= -MARGIN_TOL
        if proven:
            verdict = Verdict.YES if extendible else Verdict.NO
        else:
            verdict = Verdict.CONJECTURED_YES if extendible else Verdict.CONJECTURED_NO
        return cls(verdict=verdict, margin=float(margin), rule=rule, details=dict(details))
