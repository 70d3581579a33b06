"""
Deciders for two-qubit and low-rank bipartite states.

A two-qubit state rho has a symmetric extension iff
tr(rho_B^2) >= tr(rho^2) - 4 sqrt(det rho) on every class where this is proven:
Bell-diagonal states, rank at most two, support in the symmetric subspace, and
states invariant under sigma_z (x) sigma_z with vanishing |01><10| coherence.
Outside those classes the inequality is reported as a conjectured verdict.
"""

from dataclasses import dataclass

import numpy as np
import structlog

from ..bell.distribution import from_density_matrix, is_bell_diagonal
from ..config import config
from ..errors import InvalidInputError
from ..quantum.paulis import PSI_MINUS
from ..quantum.states import DensityMatrix, partial_trace, r_matrix
from .bell_diagonal import decide_bell_diag
from .models import Decision

logger = structlog.get_logger(__name__)

RANK_TOL = 1e-10


def _rank(matrix: np.ndarray, tol: float = RANK_TOL) -> int:
    return int(np.sum(np.linalg.eigvalsh(matrix) > tol))


def _lambda_max(matrix: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(matrix)[-1])


def _reduced_b(rho: DensityMatrix) -> DensityMatrix:
    return partial_trace(rho, [len(rho.dims) - 1])


# =============================================================================
# Class deciders
# =============================================================================


def decide_rank2(rho: DensityMatrix) -> Decision:
    """Decide a bipartite state of rank at most two.

    Two qubits: extendible iff lambda_max(rho) <= lambda_max(rho_B). For
    (d_A, 2) the same inequality is only necessary, so passing it yields a
    conjectured verdict. A reduced state of rank above two excludes an extension.
    """
    if len(rho.dims) != 2:
        raise InvalidInputError(f"expected a bipartite state, got dims {rho.dims}")
    rho = rho.normalized()
    if _rank(rho.entries) > 2:
        raise InvalidInputError(f"state has rank {_rank(rho.entries)} > 2")
    rho_b = _reduced_b(rho)
    rank_b = _rank(rho_b.entries)
    if rank_b > 2:
        return Decision.from_margin(float(2 - rank_b), "rank2.limited_b_rank", rank_b=rank_b)

    margin = _lambda_max(rho_b.entries) - _lambda_max(rho.entries)
    if rho.dims == (2, 2):
        return Decision.from_margin(margin, "rank2.two_qubit")
    if margin < -1e-12:
        return Decision.from_margin(margin, "rank2.necessary")
    return Decision.from_margin(margin, "rank2.necessary_only", proven=False)


def decide_sym_subspace(rho: DensityMatrix) -> Decision:
    """Decide a two-qubit state supported on the symmetric subspace: tr(rho_B^2) >= tr(rho^2)."""
    _require_two_qubit(rho)
    rho = rho.normalized()
    singlet = float(np.real(PSI_MINUS.conj() @ rho.entries @ PSI_MINUS))
    r = r_matrix(rho).values
    if singlet >= config.structure_tol or np.max(np.abs(r - r.T)) > config.structure_tol:
        raise InvalidInputError(
            f"state is not supported on the symmetric subspace (singlet weight {singlet:.3e})"
        )
    margin = _reduced_b(rho).purity() - rho.purity()
    return Decision.from_margin(margin, "symmetric_subspace")


def zz_bound(p1: float, p2: float, p3: float, p4: float) -> float:
    """Largest extendible coherence x for diagonal (p1, p2, p3, p4)."""
    if p1 * p3 + p2 * p4 >= p1 * p4:
        return float(np.sqrt(p1 * p4))
    return float(np.sqrt(p3) * np.sqrt(p1 - p2) + np.sqrt(p2) * np.sqrt(p4 - p3))


def decide_zz_y0(p1: float, p2: float, p3: float, p4: float, x: float) -> Decision:
    """Decide the state diag(p1, p2, p3, p4) + x(|00><11| + |11><00|).

    Requires p1 >= p2, p3, p4 >= 0, sum 1 and 0 <= x <= sqrt(p1 p4).
    """
    ps = (p1, p2, p3, p4)
    tol = config.structure_tol
    if min(ps) < -tol or abs(sum(ps) - 1.0) > tol:
        raise InvalidInputError(f"diagonal {ps} is not a probability vector")
    if p1 < max(p2, p3, p4) - tol:
        raise InvalidInputError(f"p1 = {p1} must be the largest diagonal entry")
    ps = tuple(max(p, 0.0) for p in ps)
    if not -tol <= x <= np.sqrt(ps[0] * ps[3]) + tol:
        raise InvalidInputError(f"coherence x = {x} outside [0, sqrt(p1 p4)]")
    return Decision.from_margin(zz_bound(*ps) - x, "zz_invariant")


# =============================================================================
# Class detection
# =============================================================================


@dataclass(frozen=True)
class ZZParameters:
    p1: float
    p2: float
    p3: float
    p4: float
    x: float


def as_zz_y0(rho: DensityMatrix, tol: float | None = None) -> ZZParameters | None:
    """Parameters of a sigma_z (x) sigma_z invariant state with no |01><10| coherence.

    The coherence phase is removed by a local phase gate and X (x) X is applied
    when needed so that p1 is the largest diagonal entry. Returns None outside
    the class.
    """
    tol = config.structure_tol if tol is None else tol
    e = rho.normalized().entries
    allowed = np.zeros((4, 4), dtype=bool)
    allowed[np.diag_indices(4)] = True
    allowed[0, 3] = allowed[3, 0] = True
    if np.max(np.abs(e[~allowed])) > tol:
        return None
    p = np.real(np.diag(e))
    x = float(abs(e[0, 3]))
    if p[3] > p[0]:
        p = p[::-1]
    if p[0] < max(p[1], p[2], p[3]) - tol:
        return None
    x = min(x, float(np.sqrt(max(p[0] * p[3], 0.0))))
    return ZZParameters(float(p[0]), float(p[1]), float(p[2]), float(p[3]), x)


def in_symmetric_subspace(rho: DensityMatrix, tol: float | None = None) -> bool:
    tol = config.structure_tol if tol is None else tol
    rho = rho.normalized()
    singlet = float(np.real(PSI_MINUS.conj() @ rho.entries @ PSI_MINUS))
    r = r_matrix(rho).values
    return singlet < tol and float(np.max(np.abs(r - r.T))) <= tol


def conjecture_margin(rho: DensityMatrix) -> float:
    """tr(rho_B^2) - tr(rho^2) + 4 sqrt(det rho)."""
    rho = rho.normalized()
    det = float(np.real(np.linalg.det(rho.entries)))
    return _reduced_b(rho).purity() - rho.purity() + 4.0 * np.sqrt(max(det, 0.0))


def proven_class_decision(rho: DensityMatrix) -> Decision | None:
    """Decision from the first proven class containing a two-qubit state, if any."""
    _require_two_qubit(rho)
    if is_bell_diagonal(rho):
        return decide_bell_diag(from_density_matrix(rho.normalized()))
    if _rank(rho.entries) <= 2:
        return decide_rank2(rho)
    if in_symmetric_subspace(rho):
        return decide_sym_subspace(rho)
    zz = as_zz_y0(rho)
    if zz is not None:
        return decide_zz_y0(zz.p1, zz.p2, zz.p3, zz.p4, zz.x)
    return None


def decide_conjecture(rho: DensityMatrix) -> Decision:
    """tr(rho_B^2) >= tr(rho^2) - 4 sqrt(det rho), proven where the class allows.

    When a proven class applies its decision is returned with the conjectured
    margin kept in details.
    """
    _require_two_qubit(rho)
    rho.require_psd()
    margin = conjecture_margin(rho)
    proven = proven_class_decision(rho)
    if proven is not None:
        logger.debug("conjecture_routed", rule=proven.rule, margin=margin)
        return Decision(
            verdict=proven.verdict,
            margin=proven.margin,
            rule=proven.rule,
            details={"conjecture_margin": margin, **proven.details},
        )
    return Decision.from_margin(margin, "conjecture", proven=False)


def _require_two_qubit(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2):
        raise InvalidInputError(f"expected a two-qubit state, got dims {rho.dims}")

