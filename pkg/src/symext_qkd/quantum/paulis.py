"""
Pauli matrices and the Bell basis.

The Bell vectors follow |beta_i> = (1 (x) sigma_i)|Phi+>, so index 0 is Phi+,
1 is Psi+, 2 is Psi- (up to a global phase) and 3 is Phi-.
"""

from functools import reduce

import numpy as np
from numpy.typing import NDArray

ComplexMatrix = NDArray[np.complex128]
RealMatrix = NDArray[np.float64]

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

PAULIS: tuple[ComplexMatrix, ...] = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)
PAULI_LABELS = ("I", "x", "y", "z")

PHI_PLUS = np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)
BELL_VECTORS: tuple[NDArray[np.complex128], ...] = tuple(
    np.kron(IDENTITY, sigma) @ PHI_PLUS for sigma in PAULIS
)
PSI_MINUS = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)

# Diagonal of the R-matrix of each Bell projector, r_ii = <beta|sigma_i (x) sigma_i|beta>
BELL_R_SIGNS = np.array(
    [
        [1.0, 1.0, -1.0, 1.0],
        [1.0, 1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, 1.0],
    ]
)


def kron_all(*ops: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Kronecker product of the operators in order."""
    return reduce(np.kron, ops, np.ones((1, 1), dtype=np.complex128))


def pauli_string(labels: str) -> ComplexMatrix:
    """Tensor product of Paulis named by a label string such as ``"xIz"``."""
    return kron_all(*(PAULIS[PAULI_LABELS.index(c)] for c in labels))


def bell_projector(index: int) -> ComplexMatrix:
    """Projector onto the Bell vector with the given Pauli index."""
    v = BELL_VECTORS[index]
    return np.outer(v, v.conj())
