"""
Dense quantum states.

Density matrices, pure states, R-matrices and the primitive operations on them:
partial trace, spectra, purification and swap symmetrization. All values are
immutable after construction.
"""

from dataclasses import dataclass
from math import prod

import numpy as np
import structlog
from numpy.typing import NDArray

from ..config import config
from ..errors import InvalidInputError
from .paulis import PAULIS, ComplexMatrix

logger = structlog.get_logger(__name__)

# Eigenvalues at or below this are treated as zero by spectrum() and purify()
ZERO_EIGENVALUE = 1e-12


# =============================================================================
# Eigen-decomposition with deterministic ordering
# =============================================================================


def eigh_desc(matrix: NDArray[np.complex128]) -> tuple[NDArray[np.float64], ComplexMatrix]:
    """Hermitian eigen-decomposition sorted by descending eigenvalue.

    Each eigenvector is rephased so that its first component with modulus
    above 1e-12 is real and positive.
    """
    values, vectors = np.linalg.eigh(matrix)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = np.asarray(vectors[:, order], dtype=np.complex128)
    for j in range(vectors.shape[1]):
        column = vectors[:, j]
        nonzero = np.flatnonzero(np.abs(column) > 1e-12)
        if nonzero.size:
            lead = column[nonzero[0]]
            vectors[:, j] = column * (abs(lead) / lead)
    return values, vectors


def min_eigenvalue(matrix: NDArray[np.complex128] | NDArray[np.float64]) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(np.linalg.eigvalsh(matrix)[0])


# =============================================================================
# Types
# =============================================================================


@dataclass(frozen=True)
class DensityMatrix:
    """Dense Hermitian operator on a tensor product of subsystems.

    Attributes:
        dims: Subsystem dimensions in tensor order.
        entries: Square complex matrix of side prod(dims).
        declared_trace: 1 for normalized states, less for postselected ones.
            Defaults to the actual trace.
    """

    dims: tuple[int, ...]
    entries: ComplexMatrix
    declared_trace: float | None = None

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=np.complex128)
        dims = tuple(int(d) for d in self.dims)
        side = prod(dims)
        if entries.shape != (side, side):
            raise InvalidInputError(
                f"entries shape {entries.shape} does not match dims {dims} (side {side})"
            )
        skew = float(np.max(np.abs(entries - entries.conj().T))) if side else 0.0
        if skew > config.hermitian_tol * max(1.0, float(np.max(np.abs(entries)))):
            raise InvalidInputError(f"matrix is not Hermitian (max deviation {skew:.3e})")
        trace = float(np.real(np.trace(entries)))
        declared = trace if self.declared_trace is None else float(self.declared_trace)
        if abs(trace - declared) > config.trace_tol:
            raise InvalidInputError(f"trace {trace:.12f} differs from declared {declared:.12f}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "declared_trace", declared)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def trace(self) -> float:
        return float(self.declared_trace or 0.0)

    def min_eigenvalue(self) -> float:
        return min_eigenvalue(self.entries)

    def is_psd(self, tol: float | None = None) -> bool:
        """Minimum eigenvalue at least -tol (default config.psd_tol)."""
        tol = config.psd_tol if tol is None else tol
        return self.min_eigenvalue() >= -tol

    def require_psd(self, tol: float | None = None) -> "DensityMatrix":
        """Return self, raising InvalidInputError when not positive semidefinite."""
        if not self.is_psd(tol):
            raise InvalidInputError(
                f"state is not positive semidefinite (min eigenvalue {self.min_eigenvalue():.3e})"
            )
        return self

    def purity(self) -> float:
        """tr(rho^2)."""
        return float(np.real(np.vdot(self.entries, self.entries)))

    def normalized(self) -> "DensityMatrix":
        if self.trace <= 0:
            raise InvalidInputError("cannot normalize a state with zero trace")
        return DensityMatrix(self.dims, self.entries / self.trace, 1.0)

    def conjugate_by(self, unitary: NDArray[np.complex128]) -> "DensityMatrix":
        """U rho U^dagger."""
        return DensityMatrix(
            self.dims, unitary @ self.entries @ unitary.conj().T, self.declared_trace
        )


@dataclass(frozen=True)
class PureState:
    """Unit vector on a tensor product of subsystems."""

    dims: tuple[int, ...]
    amplitudes: NDArray[np.complex128]

    def __post_init__(self) -> None:
        amplitudes = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        dims = tuple(int(d) for d in self.dims)
        if amplitudes.size != prod(dims):
            raise InvalidInputError(f"{amplitudes.size} amplitudes do not match dims {dims}")
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > config.hermitian_tol * 10:
            raise InvalidInputError(f"squared norm {norm:.15f} is not 1")
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "dims", dims)

    def density_matrix(self) -> DensityMatrix:
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()), 1.0)


@dataclass(frozen=True)
class RMatrix:
    """Two-qubit correlation matrix r_ij = tr[(sigma_i (x) sigma_j) rho]."""

    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (4, 4):
            raise InvalidInputError(f"R-matrix must be 4x4, got {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def trace(self) -> float:
        return float(self.values[0, 0])


# =============================================================================
# Operations
# =============================================================================


def partial_trace(rho: DensityMatrix, keep: set[int] | list[int] | tuple[int, ...]) -> DensityMatrix:
    """Trace out every subsystem not listed in ``keep``.

    Kept subsystems stay in their original order.
    """
    kept = sorted(set(keep))
    n = len(rho.dims)
    if not kept:
        raise InvalidInputError("keep must name at least one subsystem")
    if kept[0] < 0 or kept[-1] >= n:
        raise InvalidInputError(f"subsystem index out of range for dims {rho.dims}: {kept}")

    tensor = rho.entries.reshape(rho.dims + rho.dims)
    current = n
    for axis in reversed(range(n)):
        if axis in kept:
            continue
        tensor = np.trace(tensor, axis1=axis, axis2=axis + current)
        current -= 1
    dims = tuple(rho.dims[i] for i in kept)
    side = prod(dims)
    return DensityMatrix(dims, tensor.reshape(side, side), rho.declared_trace)


def spectrum(rho: DensityMatrix) -> NDArray[np.float64]:
    """Nonincreasing eigenvalues above 1e-12."""
    values = np.sort(np.linalg.eigvalsh(rho.entries))[::-1]
    return np.asarray(values[values > ZERO_EIGENVALUE], dtype=np.float64)


def purify(rho: DensityMatrix) -> PureState:
    """Purification sum_j sqrt(l_j)|phi_j>|j> with purifier dimension rank(rho).

    The state is normalized first; the purifier is appended as the last subsystem.
    """
    rho = rho.require_psd().normalized()
    values, vectors = eigh_desc(rho.entries)
    rank = int(np.sum(values > ZERO_EIGENVALUE))
    columns = vectors[:, :rank] * np.sqrt(values[:rank])
    amplitudes = columns.reshape(-1)
    amplitudes = amplitudes / np.linalg.norm(amplitudes)
    return PureState(rho.dims + (rank,), amplitudes)


def r_matrix(rho: DensityMatrix) -> RMatrix:
    """R-matrix of a two-qubit operator."""
    _require_two_qubit(rho)
    values = np.array(
        [
            [np.real(np.trace(np.kron(si, sj) @ rho.entries)) for sj in PAULIS]
            for si in PAULIS
        ]
    )
    return RMatrix(values)


def from_r_matrix(r: RMatrix) -> DensityMatrix:
    """Inverse of r_matrix: rho = (1/4) sum_ij r_ij sigma_i (x) sigma_j."""
    entries = sum(
        r.values[i, j] * np.kron(PAULIS[i], PAULIS[j]) for i in range(4) for j in range(4)
    ) / 4.0
    return DensityMatrix((2, 2), np.asarray(entries), r.trace)


def swap_last_two(matrix: NDArray[np.complex128], dims: tuple[int, ...]) -> ComplexMatrix:
    """Conjugate by the swap of the last two subsystems, which must have equal dimension."""
    if len(dims) < 2 or dims[-1] != dims[-2]:
        raise InvalidInputError(f"last two subsystems must have equal dimension, got {dims}")
    n = len(dims)
    axes = list(range(n))
    axes[-1], axes[-2] = axes[-2], axes[-1]
    perm = axes + [a + n for a in axes]
    side = prod(dims)
    return np.asarray(matrix.reshape(dims + dims).transpose(perm).reshape(side, side))


def swap_vector(vector: NDArray[np.complex128], dims: tuple[int, ...]) -> NDArray[np.complex128]:
    """Apply the swap of the last two subsystems to a state vector."""
    if len(dims) < 2 or dims[-1] != dims[-2]:
        raise InvalidInputError(f"last two subsystems must have equal dimension, got {dims}")
    axes = list(range(len(dims)))
    axes[-1], axes[-2] = axes[-2], axes[-1]
    return np.asarray(vector.reshape(dims).transpose(axes).reshape(-1))


def symmetrize_swap(rho: DensityMatrix) -> DensityMatrix:
    """(sigma + P sigma P)/2 with P swapping the last two subsystems."""
    entries = 0.5 * (rho.entries + swap_last_two(rho.entries, rho.dims))
    return DensityMatrix(rho.dims, entries, rho.declared_trace)


def swap_defect(rho: DensityMatrix) -> float:
    """Max-abs entry of rho minus its swap conjugate."""
    return float(np.max(np.abs(rho.entries - swap_last_two(rho.entries, rho.dims))))


def _require_two_qubit(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2):
        raise InvalidInputError(f"expected a two-qubit state, got dims {rho.dims}")
