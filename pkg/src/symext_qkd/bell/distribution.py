"""
Multi-pair Bell-diagonal distributions.

A state of N qubit pairs diagonal in the Bell basis is stored as a weight per
Pauli error string. Strings are indexed base 4, pair 0 most significant, with
digits I=0, x=1, y=2, z=3.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product

import numpy as np
import structlog
from numpy.typing import NDArray

from ..config import config
from ..errors import InvalidInputError
from ..quantum.paulis import BELL_R_SIGNS, BELL_VECTORS
from ..quantum.states import DensityMatrix

logger = structlog.get_logger(__name__)

SQRT2 = float(np.sqrt(2.0))
WEIGHT_TOL = 1e-12


class Basis(str, Enum):
    """Measurement basis used for key generation."""

    X = "x"
    Y = "y"
    Z = "z"


# Permutations of (I, x, y, z) for each basis rotation
_BASIS_ORDER = {
    Basis.Z: (0, 1, 2, 3),
    Basis.Y: (0, 3, 1, 2),
    Basis.X: (0, 2, 3, 1),
}


# =============================================================================
# Types
# =============================================================================


@dataclass(frozen=True)
class BellDiagonalDistribution:
    """Weights over {I, x, y, z}^N error strings.

    Attributes:
        pairs: Number of qubit pairs N.
        weights: Nonnegative vector of length 4^N.
    """

    pairs: int
    weights: NDArray[np.float64]

    def __post_init__(self) -> None:
        weights = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if self.pairs < 1 or weights.size != 4**self.pairs:
            raise InvalidInputError(
                f"{weights.size} weights do not describe {self.pairs} pairs (need 4^N)"
            )
        if weights.min() < -WEIGHT_TOL:
            raise InvalidInputError(f"negative weight {weights.min():.3e}")
        total = float(weights.sum())
        if not 0.0 < total <= 1.0 + WEIGHT_TOL:
            raise InvalidInputError(f"total weight {total} outside (0, 1]")
        object.__setattr__(self, "weights", np.clip(weights, 0.0, None))

    @property
    def total(self) -> float:
        return float(self.weights.sum())

    @property
    def p(self) -> tuple[float, float, float, float]:
        """(p_I, p_x, p_y, p_z) of a single pair."""
        _require_single_pair(self)
        p_i, p_x, p_y, p_z = (float(w) for w in self.weights)
        return p_i, p_x, p_y, p_z

    def tensor(self) -> NDArray[np.float64]:
        """Weights reshaped to one axis of length 4 per pair."""
        return self.weights.reshape((4,) * self.pairs)

    @classmethod
    def from_tensor(cls, tensor: NDArray[np.float64]) -> "BellDiagonalDistribution":
        return cls(tensor.ndim, tensor.reshape(-1))

    @classmethod
    def product_of(cls, *states: "BellDiagonalDistribution") -> "BellDiagonalDistribution":
        """Tensor product, first state on the most significant pairs."""
        weights = np.ones(1)
        for s in states:
            weights = np.kron(weights, s.weights)
        return cls(sum(s.pairs for s in states), weights)

    def power(self, n: int) -> "BellDiagonalDistribution":
        """n independent copies."""
        return BellDiagonalDistribution.product_of(*([self] * n))

    def is_xy_symmetric(self, tol: float = WEIGHT_TOL) -> bool:
        """Invariant under exchanging x and y on every single pair."""
        t = self.tensor()
        for axis in range(self.pairs):
            swapped = np.take(t, [0, 2, 1, 3], axis=axis)
            if np.max(np.abs(swapped - t)) > tol:
                return False
        return True


@dataclass(frozen=True)
class AlphaCoords:
    """Linear coordinates of a single-pair state.

    alpha1 = p_I - p_x - p_y + p_z, alpha2 = sqrt2 (p_I - p_z), alpha3 = sqrt2 (p_x - p_y).
    """

    alpha0: float
    alpha1: float
    alpha2: float
    alpha3: float


@dataclass(frozen=True)
class ErrorRates:
    """Quantum bit error rates in the three bases."""

    qx: float
    qy: float
    qz: float

    def __post_init__(self) -> None:
        for name, q in (("Qx", self.qx), ("Qy", self.qy), ("Qz", self.qz)):
            if not 0.0 <= q <= 1.0:
                raise InvalidInputError(f"{name} = {q} outside [0, 1]")
        if min(_weights_from_rates(self)) < -WEIGHT_TOL:
            raise InvalidInputError(f"error rates {self} induce a negative Bell weight")


# =============================================================================
# Constructors
# =============================================================================


def isotropic(p: float) -> BellDiagonalDistribution:
    """(1 - 3p, p, p, p)."""
    if not 0.0 <= p <= 1.0 / 3.0 + WEIGHT_TOL:
        raise InvalidInputError(f"isotropic parameter p = {p} outside [0, 1/3]")
    return BellDiagonalDistribution(1, np.array([1.0 - 3.0 * p, p, p, p]))


def _weights_from_rates(rates: ErrorRates) -> tuple[float, float, float, float]:
    s = rates.qx + rates.qy + rates.qz
    return (
        1.0 - s / 2.0,
        (rates.qy + rates.qz - rates.qx) / 2.0,
        (rates.qx + rates.qz - rates.qy) / 2.0,
        (rates.qx + rates.qy - rates.qz) / 2.0,
    )


def from_qber(rates: ErrorRates) -> BellDiagonalDistribution:
    """Bell-diagonal state with Q_x = p_y + p_z, Q_y = p_x + p_z, Q_z = p_x + p_y."""
    weights = np.clip(np.array(_weights_from_rates(rates)), 0.0, None)
    return BellDiagonalDistribution(1, weights)


def error_rates(state: BellDiagonalDistribution) -> ErrorRates:
    """Inverse of from_qber for a normalized single pair."""
    _, p_x, p_y, p_z = normalize(state).p
    return ErrorRates(qx=p_y + p_z, qy=p_x + p_z, qz=p_x + p_y)


def six_state_average(rates: ErrorRates) -> BellDiagonalDistribution:
    """Isotropic state with p half the average error rate."""
    return isotropic((rates.qx + rates.qy + rates.qz) / 6.0)


def rotate_basis(state: BellDiagonalDistribution, basis: Basis | str) -> BellDiagonalDistribution:
    """Relabel the error strings for key generation in another basis.

    y: (p_I, p_x, p_y, p_z) -> (p_I, p_z, p_x, p_y); x: -> (p_I, p_y, p_z, p_x).
    Applied to every pair.
    """
    order = _BASIS_ORDER[Basis(basis)]
    t = state.tensor()
    for axis in range(state.pairs):
        t = np.take(t, order, axis=axis)
    return BellDiagonalDistribution.from_tensor(t)


def hadamard(state: BellDiagonalDistribution) -> BellDiagonalDistribution:
    """H (x) H on every pair, exchanging p_x and p_z."""
    t = state.tensor()
    for axis in range(state.pairs):
        t = np.take(t, (0, 3, 2, 1), axis=axis)
    return BellDiagonalDistribution.from_tensor(t)


def from_r_diagonal(r11: float, r22: float, r33: float) -> BellDiagonalDistribution:
    """Bell weights of the state with R = diag(1, r11, r22, r33)."""
    r = np.array([1.0, r11, r22, r33])
    weights = BELL_R_SIGNS @ r / 4.0
    if weights.min() < -WEIGHT_TOL:
        raise InvalidInputError(f"R = diag(1, {r11}, {r22}, {r33}) is not a state")
    return BellDiagonalDistribution(1, np.clip(weights, 0.0, None))


def bb84_family(q: float, r22: float) -> BellDiagonalDistribution:
    """States compatible with BB84 error rate Q in both the x and z bases.

    R = diag(1, 1 - 2Q, r22, 1 - 2Q); r22 must lie in [-1, 1 - 2|1 - 2Q|].
    """
    if not 0.0 <= q <= 1.0:
        raise InvalidInputError(f"QBER {q} outside [0, 1]")
    r = 1.0 - 2.0 * q
    if not -1.0 - WEIGHT_TOL <= r22 <= 1.0 - 2.0 * abs(r) + WEIGHT_TOL:
        raise InvalidInputError(
            f"r22 = {r22} outside the allowed interval [-1, {1.0 - 2.0 * abs(r)}]"
        )
    return from_r_diagonal(r, r22, r)


def bb84_worst_case(q: float) -> BellDiagonalDistribution:
    """The member with p_y = 0, (1 - 2Q, Q, 0, Q)."""
    return bb84_family(q, 4.0 * q - 1.0)


def normalize(state: BellDiagonalDistribution) -> BellDiagonalDistribution:
    """Rescale to unit total; the constructor guarantees a positive total."""
    return BellDiagonalDistribution(state.pairs, state.weights / state.total)


# =============================================================================
# Coordinates
# =============================================================================


def alpha(state: BellDiagonalDistribution) -> AlphaCoords:
    p_i, p_x, p_y, p_z = state.p
    return AlphaCoords(
        alpha0=p_i + p_x + p_y + p_z,
        alpha1=p_i - p_x - p_y + p_z,
        alpha2=SQRT2 * (p_i - p_z),
        alpha3=SQRT2 * (p_x - p_y),
    )


def from_alpha(coords: AlphaCoords) -> BellDiagonalDistribution:
    a0, a1, a2, a3 = coords.alpha0, coords.alpha1, coords.alpha2, coords.alpha3
    weights = np.array(
        [
            (a0 + a1) / 4.0 + a2 / (2.0 * SQRT2),
            (a0 - a1) / 4.0 + a3 / (2.0 * SQRT2),
            (a0 - a1) / 4.0 - a3 / (2.0 * SQRT2),
            (a0 + a1) / 4.0 - a2 / (2.0 * SQRT2),
        ]
    )
    return BellDiagonalDistribution(1, weights)


def d_c(state: BellDiagonalDistribution) -> float:
    """log2((p_I - p_z)^2 / ((p_I + p_z)(p_x + p_y))) as an extended real."""
    p_i, p_x, p_y, p_z = state.p
    numerator = (p_i - p_z) ** 2
    denominator = (p_i + p_z) * (p_x + p_y)
    if numerator == 0.0:
        return float("-inf")
    if denominator == 0.0:
        return float("inf")
    return float(np.log2(numerator / denominator))


# =============================================================================
# Dense conversion
# =============================================================================


def _bell_string_vectors(pairs: int) -> NDArray[np.complex128]:
    """Columns are the Bell-string vectors in qubit order A1..AN B1..BN."""
    columns = []
    perm = [2 * k for k in range(pairs)] + [2 * k + 1 for k in range(pairs)]
    for digits in product(range(4), repeat=pairs):
        v = np.ones(1, dtype=np.complex128)
        for d in digits:
            v = np.kron(v, BELL_VECTORS[d])
        columns.append(v.reshape((2,) * (2 * pairs)).transpose(perm).reshape(-1))
    return np.array(columns).T


def to_density_matrix(state: BellDiagonalDistribution) -> DensityMatrix:
    """Dense operator on A1..AN B1..BN."""
    if state.pairs > 4:
        raise InvalidInputError("dense conversion supports at most 4 pairs")
    v = _bell_string_vectors(state.pairs)
    entries = (v * state.weights) @ v.conj().T
    side = 2**state.pairs
    return DensityMatrix((side, side), entries, state.total)


def from_density_matrix(
    rho: DensityMatrix, tol: float | None = None
) -> BellDiagonalDistribution:
    """Bell weights of a state that is diagonal in the Bell-string basis.

    rho must be on (2^N, 2^N) with qubits ordered A1..AN B1..BN.
    """
    tol = config.structure_tol if tol is None else tol
    if len(rho.dims) != 2 or rho.dims[0] != rho.dims[1] or rho.dims[0] & (rho.dims[0] - 1):
        raise InvalidInputError(f"expected dims (2^N, 2^N), got {rho.dims}")
    pairs = int(rho.dims[0]).bit_length() - 1
    v = _bell_string_vectors(pairs)
    weights = np.real(np.einsum("ij,ik,kj->j", v.conj(), rho.entries, v))
    residual = rho.entries - (v * weights) @ v.conj().T
    if np.max(np.abs(residual)) > tol:
        raise InvalidInputError("state is not Bell-diagonal")
    return BellDiagonalDistribution(pairs, np.clip(weights, 0.0, None))


def is_bell_diagonal(rho: DensityMatrix, tol: float | None = None) -> bool:
    try:
        from_density_matrix(rho, tol)
    except InvalidInputError:
        return False
    return True


def _require_single_pair(state: BellDiagonalDistribution) -> None:
    if state.pairs != 1:
        raise InvalidInputError(f"expected a single pair, got {state.pairs}")
