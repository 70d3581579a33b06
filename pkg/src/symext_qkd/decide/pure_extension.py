"""
Pure symmetric extensions.

A bipartite state has a pure symmetric extension iff rho_AB and rho_B have the
same nonzero spectrum. For two qubits the extension is built from a
purification by a unitary on the purifying system. Filtering system A
preserves pure extendibility, which turns random filters into a falsifier.
"""

from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.optimize import least_squares

from ..config import config
from ..errors import InvalidInputError, SolverError
from ..quantum.paulis import PSI_MINUS, SIGMA_Y
from ..quantum.states import (
    DensityMatrix,
    PureState,
    eigh_desc,
    partial_trace,
    purify,
    spectrum,
    swap_vector,
)

logger = structlog.get_logger(__name__)

# Normalized spectra differing by more than this refute a pure extension
REFUTATION_TOL = 1e-6
MAX_FILTER_CONDITION = 1e4
EXTENSION_DEFECT_TOL = 1e-8

# Coefficient matrix of |Psi-> in sum_ij M_ij |i>|j>
M_PSI_MINUS = PSI_MINUS.reshape(2, 2)
YY = np.kron(SIGMA_Y, SIGMA_Y)


def _padded_spectra(rho: DensityMatrix) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    whole = spectrum(rho.normalized())
    reduced = spectrum(partial_trace(rho.normalized(), [len(rho.dims) - 1]))
    size = max(whole.size, reduced.size)
    return np.pad(whole, (0, size - whole.size)), np.pad(reduced, (0, size - reduced.size))


def spectrum_deviation(rho: DensityMatrix) -> float:
    """Max difference between the normalized spectra of rho and rho_B."""
    whole, reduced = _padded_spectra(rho)
    return float(np.max(np.abs(whole - reduced))) if whole.size else 0.0


def spectrum_condition(rho: DensityMatrix, tol: float | None = None) -> bool:
    """spec(rho_AB) = spec(rho_B), the criterion for a pure symmetric extension."""
    tol = config.spectrum_tol if tol is None else tol
    return spectrum_deviation(rho) <= tol


# =============================================================================
# Construction
# =============================================================================


def extension_defects(psi: PureState, rho: DensityMatrix) -> tuple[float, float]:
    """(swap defect, reduction defect) of a candidate pure extension."""
    v = psi.amplitudes
    swapped = swap_vector(v, psi.dims)
    symmetric = min(np.linalg.norm(swapped - v), np.linalg.norm(swapped + v))
    reduced = partial_trace(psi.density_matrix(), [0, 1]).entries
    return float(symmetric), float(np.max(np.abs(reduced - rho.normalized().entries)))


def _maximally_entangled_in(complement: NDArray[np.complex128]) -> NDArray[np.complex128] | None:
    """A maximally entangled two-qubit vector in the span of the given orthonormal columns.

    Concurrence of K c is |c^T (K^T YY K) c|; its maximum over unit c is the top
    Takagi value, found from the SVD and polished by least squares.
    """
    q = complement.T @ YY @ complement
    u, s, _ = np.linalg.svd(q)
    c = u[:, 0].conj()
    if abs(c @ q @ c) >= 1.0 - 1e-9:
        return np.asarray(complement @ c)

    dim = complement.shape[1]

    def residual(params: NDArray[np.float64]) -> NDArray[np.float64]:
        vec = params[:dim] + 1j * params[dim:]
        norm2 = float(np.real(np.vdot(vec, vec)))
        return np.array([1.0 - abs(vec @ q @ vec), norm2 - 1.0])

    start = np.concatenate([c.real, c.imag])
    fit = least_squares(residual, start, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    vec = fit.x[:dim] + 1j * fit.x[dim:]
    vec = vec / np.linalg.norm(vec)
    if abs(vec @ q @ vec) < 1.0 - 1e-7:
        return None
    return np.asarray(complement @ vec)


def _phase_corrected(tensor: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Generic branch: diagonalize rho_B, align the B' phases, rotate back."""
    rho_b = np.einsum("abc,adc->bd", tensor, tensor.conj())
    _, w = eigh_desc(rho_b)
    t = np.einsum("be,abc->aec", w.conj(), tensor)
    b, c, f, g = t[0, 0, 1], t[0, 1, 0], t[1, 0, 1], t[1, 1, 0]
    if abs(b) * abs(c) >= abs(f) * abs(g):
        delta = np.angle(b) - np.angle(c) if abs(b) * abs(c) > 0 else 0.0
    else:
        delta = np.angle(f) - np.angle(g)
    t[:, :, 1] *= np.exp(-1j * delta)
    return np.asarray(np.einsum("be,cf,aef->abc", w, w, t))


def _singlet_free(tensor: NDArray[np.complex128]) -> NDArray[np.complex128] | None:
    """Maximally mixed branch: rotate B' so that rho_BB' has no |Psi-> component."""
    rho_bb = np.einsum("abc,ade->bcde", tensor, tensor.conj()).reshape(4, 4)
    values, vectors = eigh_desc(rho_bb)
    complement = vectors[:, values <= 1e-12]
    if complement.shape[1] == 0:
        return None
    m = _maximally_entangled_in(complement)
    if m is None:
        return None
    transform = 2.0 * M_PSI_MINUS.conj().T @ m.reshape(2, 2)
    v = transform.conj()
    return np.asarray(np.einsum("cf,abf->abc", v, tensor))


def construct_pure_extension(rho: DensityMatrix) -> PureState:
    """Pure state on A (x) B (x) B' that is swap (anti)symmetric and reduces to rho.

    Raises:
        InvalidInputError: not two qubits, or the spectrum condition fails.
        SolverError: no correcting unitary reached the defect tolerance.
    """
    if rho.dims != (2, 2):
        raise InvalidInputError(f"expected a two-qubit state, got dims {rho.dims}")
    if not spectrum_condition(rho):
        raise InvalidInputError(
            f"spectrum condition violated (deviation {spectrum_deviation(rho):.3e})"
        )
    rho = rho.normalized()
    purification = purify(rho)
    rank = purification.dims[-1]
    tensor = np.zeros((2, 2, 2), dtype=np.complex128)
    tensor[:, :, :rank] = purification.amplitudes.reshape(2, 2, rank)

    candidates = [_phase_corrected(tensor)]
    singlet_free = _singlet_free(tensor)
    if singlet_free is not None:
        candidates.append(singlet_free)

    best: tuple[float, PureState] | None = None
    for candidate in candidates:
        psi = PureState((2, 2, 2), candidate.reshape(-1) / np.linalg.norm(candidate))
        defect = max(extension_defects(psi, rho))
        if best is None or defect < best[0]:
            best = (defect, psi)
        if defect < EXTENSION_DEFECT_TOL:
            return psi
    assert best is not None
    raise SolverError(f"no pure symmetric extension reached defect tolerance (best {best[0]:.3e})")


# =============================================================================
# Filter falsifier
# =============================================================================


@dataclass(frozen=True)
class FilterResult:
    """Outcome of filter_falsify.

    Attributes:
        refuted: Some filtered state violates the spectrum condition.
        witness_filter: The refuting filter on A, if any.
        deviation: Largest spectrum deviation seen.
        trials: Filters tried.
    """

    refuted: bool
    witness_filter: NDArray[np.complex128] | None
    deviation: float
    trials: int


def apply_filter(rho: DensityMatrix, filter_a: NDArray[np.complex128]) -> DensityMatrix | None:
    """(F (x) 1) rho (F (x) 1)^dagger normalized, or None if it vanishes."""
    d_a, d_b = rho.dims[0], int(np.prod(rho.dims[1:]))
    if filter_a.shape != (d_a, d_a):
        raise InvalidInputError(f"filter must be {d_a}x{d_a}, got {filter_a.shape}")
    op = np.kron(np.asarray(filter_a, dtype=np.complex128), np.eye(d_b))
    entries = op @ rho.entries @ op.conj().T
    trace = float(np.real(np.trace(entries)))
    if trace <= 1e-14:
        return None
    return DensityMatrix(rho.dims, entries / trace, 1.0)


def _random_filter(rng: np.random.Generator, dim: int) -> NDArray[np.complex128]:
    while True:
        candidate = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        if np.linalg.cond(candidate) <= MAX_FILTER_CONDITION:
            return np.asarray(candidate)


def filter_falsify(
    rho: DensityMatrix,
    trials: int = 100,
    rng_seed: int | None = None,
    filters: list[NDArray[np.complex128]] | None = None,
) -> FilterResult:
    """Try to refute a pure symmetric extension by filtering system A.

    Explicit filters are tried first, then random invertible ones.
    """
    seed = config.seed if rng_seed is None else rng_seed
    rng = np.random.default_rng(seed)
    d_a = rho.dims[0]
    candidates = [np.asarray(f, dtype=np.complex128) for f in filters or []]
    worst = spectrum_deviation(rho)
    tried = 0
    for index in range(len(candidates) + trials):
        filter_a = candidates[index] if index < len(candidates) else _random_filter(rng, d_a)
        tried += 1
        filtered = apply_filter(rho, filter_a)
        if filtered is None:
            continue
        deviation = spectrum_deviation(filtered)
        worst = max(worst, deviation)
        if deviation > REFUTATION_TOL:
            logger.debug("pure_extension_refuted", trial=tried, deviation=deviation)
            return FilterResult(True, filter_a, deviation, tried)
    return FilterResult(False, None, worst, tried)
