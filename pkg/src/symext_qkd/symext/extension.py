"""Full extension operators recovered from solved SDPs."""

from dataclasses import asdict, dataclass

import numpy as np
import structlog

from ..config import config
from ..errors import InvalidInputError
from ..quantum.paulis import kron_all
from ..quantum.states import DensityMatrix, partial_trace, swap_defect
from ..sdp.problems import SdpSolution
from .builder import SymextProblem

logger = structlog.get_logger(__name__)

MAX_EXTRACT_PAIRS = 3


def extract_extension(
    problem: SymextProblem, solution: SdpSolution, tol: float | None = None
) -> DensityMatrix:
    """rho_ABB' with t set to 0, on registers A = A1..AN, B = B1..BN, B' = B'1..B'N.

    Raises:
        InvalidInputError: the solve is not optimal, t exceeds tol, or N > 3.
    """
    tol = config.decision_tol if tol is None else tol
    if not solution.optimal:
        raise InvalidInputError(f"solution status is {solution.status.value}, not optimal")
    t = float(solution.x[0])
    if t > tol:
        raise InvalidInputError(f"min t = {t:.3e} is positive: no symmetric extension")
    n = problem.pairs
    if n > MAX_EXTRACT_PAIRS:
        raise InvalidInputError(f"extraction supports at most {MAX_EXTRACT_PAIRS} pairs, got {n}")

    full = problem.terms.full
    side = 8**n
    acc = np.zeros((side, side), dtype=np.complex128)
    for s, value in problem.fixed:
        acc += value * kron_all(*(full[i] for i in s))
    for x, orbit in zip(solution.x[1:], problem.variables, strict=True):
        for s, sign in orbit:
            acc += (x * sign) * kron_all(*(full[i] for i in s))
    acc /= side

    # qubits come as A1 B1 B'1 A2 ...; regroup by register
    order = [3 * k for k in range(n)] + [3 * k + 1 for k in range(n)] + [3 * k + 2 for k in range(n)]
    tensor = acc.reshape((2,) * (6 * n)).transpose(order + [q + 3 * n for q in order])
    entries = tensor.reshape(side, side)
    entries = (entries + entries.conj().T) / 2
    logger.debug("extension_extracted", pairs=n, t=t)
    return DensityMatrix((2**n, 2**n, 2**n), entries, 1.0)


@dataclass(frozen=True)
class ExtensionReport:
    """Residuals of a candidate symmetric extension."""

    min_eigenvalue: float
    swap_defect: float
    reduction_defect: float

    def ok(self, tol: float = 1e-8) -> bool:
        return self.min_eigenvalue >= -tol and self.swap_defect < tol and self.reduction_defect < tol

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def verify_extension(extension: DensityMatrix, target: DensityMatrix) -> ExtensionReport:
    """Check positivity, B/B' swap invariance and the AB marginal of extension."""
    if len(extension.dims) != 3 or extension.dims[:2] != target.dims:
        raise InvalidInputError(
            f"extension dims {extension.dims} do not extend target dims {target.dims}"
        )
    marginal = partial_trace(extension, [0, 1])
    return ExtensionReport(
        min_eigenvalue=extension.min_eigenvalue(),
        swap_defect=swap_defect(extension),
        reduction_defect=float(np.max(np.abs(marginal.entries - target.entries))),
    )
