"""Dense block-diagonal semidefinite programming."""

from .certify import CertificateReport, certify
from .problems import (
    LmiBlock,
    SdpInequality,
    SdpSolution,
    SdpStandard,
    SolverStatus,
    random_feasible_problem,
    sparsity_blocks,
)
from .solver import solve_inequality, solve_standard

__all__ = [
    "CertificateReport",
    "LmiBlock",
    "SdpInequality",
    "SdpSolution",
    "SdpStandard",
    "SolverStatus",
    "certify",
    "random_feasible_problem",
    "solve_inequality",
    "solve_standard",
    "sparsity_blocks",
]
