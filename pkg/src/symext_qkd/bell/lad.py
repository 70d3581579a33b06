"""
Linear advantage distillation on multi-pair Bell-diagonal states.

The announcement H d is implemented as a CNOT network from every data pair j to
the parity pair of row i wherever P[i, j] = 1, followed by measurement of the
parity pairs. On error strings a CNOT from source s to target t maps the
bit-error parts x_t -> x_t xor x_s and the phase parts z_s -> z_s xor z_t.
"""

import numpy as np
import structlog
from numpy.typing import NDArray

from ..codes.gf2 import ParityCheckMatrix, to_systematic
from ..errors import InvalidInputError, ZeroAcceptanceError
from .distribution import BellDiagonalDistribution

logger = structlog.get_logger(__name__)

MAX_PAIRS = 12

# digit (I=0, x=1, y=2, z=3) <-> (bit error, phase error)
X_OF = np.array([0, 1, 1, 0], dtype=np.int64)
Z_OF = np.array([0, 0, 1, 1], dtype=np.int64)
DIGIT_OF = np.array([[0, 3], [1, 2]], dtype=np.int64)


def _digits(pairs: int) -> NDArray[np.int64]:
    """Base-4 digits of every error-string index, pair 0 most significant."""
    index = np.arange(4**pairs, dtype=np.int64)
    powers = 4 ** np.arange(pairs - 1, -1, -1, dtype=np.int64)
    return (index[:, None] // powers[None, :]) % 4


def lad_apply(H: ParityCheckMatrix, state: BellDiagonalDistribution) -> BellDiagonalDistribution:
    """Apply the announcement H to n pairs and keep the k = n - m data pairs.

    Output pairs are the data columns of the systematic form of H in
    ascending column order. The result is subnormalized; its total is the
    probability that every parity agrees.

    Raises:
        ZeroAcceptanceError: every error string of the state is rejected.
    """
    if state.pairs != H.n:
        raise InvalidInputError(f"H has {H.n} columns but the state has {state.pairs} pairs")
    if H.n > MAX_PAIRS:
        raise InvalidInputError(f"at most {MAX_PAIRS} pairs supported, got {H.n}")
    P, perm = to_systematic(H)
    k = P.k

    digits = _digits(H.n)[:, perm]
    x = X_OF[digits]
    z = Z_OF[digits]
    for i, j in zip(*np.nonzero(P.bits), strict=True):
        target = k + int(i)
        x[:, target] ^= x[:, j]
        z[:, j] ^= z[:, target]

    accepted = ~x[:, k:].any(axis=1)
    data_digits = DIGIT_OF[x[accepted, :k], z[accepted, :k]]
    powers = 4 ** np.arange(k - 1, -1, -1, dtype=np.int64)
    index = data_digits @ powers
    weights = np.bincount(index, weights=state.weights[accepted], minlength=4**k)
    if not weights.sum() > 0.0:
        raise ZeroAcceptanceError(
            f"no error string of the {H.n}-pair state passes the parity checks (success probability 0)"
        )
    logger.debug("lad_applied", n=H.n, k=k, success=float(weights.sum()))
    return BellDiagonalDistribution(k, weights)


def repetition_code(n: int) -> ParityCheckMatrix:
    """(n - 1) x n parity checks of the repetition code, rows e_0 + e_{i+1}."""
    if n < 2:
        raise InvalidInputError(f"repetition code needs n >= 2, got {n}")
    bits = np.zeros((n - 1, n), dtype=np.uint8)
    bits[:, 0] = 1
    bits[np.arange(n - 1), np.arange(1, n)] = 1
    return ParityCheckMatrix(bits)
