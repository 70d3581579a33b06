"""
Full symmetric extensions rebuilt from witness blocks.

Index triples (a, b, b') label the 64-dim space of A, B, B', each a two-qubit
register with digit 2*(pair theta bit) + (pair phi bit). The extension commutes
with the bitwise shifts (a, b, b') -> (a^g, b^g, b'^g), so it is a direct sum of
four copies of the block on a^b^b' = 0, the plus-plus space.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np
import structlog
from numpy.typing import NDArray

from ..bell.distribution import BellDiagonalDistribution, to_density_matrix
from ..bell.lad import lad_apply
from ..bell.rcad import rcad_angle_state, rcad_cosine
from ..codes.gf2 import ParityCheckMatrix
from ..config import config
from ..errors import InvalidInputError
from ..quantum.states import DensityMatrix, partial_trace, swap_defect
from .blocks import WitnessBlock, WitnessVariant, m4_diag, m4_equal_angle

logger = structlog.get_logger(__name__)

PLUS_PLUS_ORDER: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0), (1, 1, 0), (2, 2, 0), (3, 3, 0),
    (1, 0, 1), (2, 0, 2), (3, 0, 3),
    (0, 1, 1), (0, 2, 2), (0, 3, 3),
    (1, 2, 3), (2, 3, 1), (3, 1, 2), (1, 3, 2), (2, 1, 3), (3, 2, 1),
)
_POSITION = {triple: i for i, triple in enumerate(PLUS_PLUS_ORDER)}

ANNOUNCE_ALL = ParityCheckMatrix(np.array([[1, 1, 1]], dtype=np.uint8))


def _embedding(size: int) -> NDArray[np.float64]:
    """16 x size isometry-up-to-scale from block coordinates to the plus-plus space."""
    v = np.zeros((16, size))
    v[_POSITION[(0, 0, 0)], 0] = 1.0
    for i in (1, 2, 3):
        v[_POSITION[(i, i, 0)], i] = 1.0
        v[_POSITION[(i, 0, i)], i] = 1.0
        if size == 5:
            v[_POSITION[(0, i, i)], i] = 1.0
    if size == 5:
        v[10:, 4] = 1.0
    return v


def plus_plus_block(block: WitnessBlock) -> NDArray[np.float64]:
    """16x16 restriction of the extension to a^b^b' = 0, in PLUS_PLUS_ORDER."""
    v = _embedding(block.size)
    out = block.scale * (v @ block.entries @ v.T)
    if block.size == 4:
        for i, pad in zip((1, 2, 3), block.padding, strict=True):
            out[_POSITION[(0, i, i)], _POSITION[(0, i, i)]] += pad
    return out


def reconstruct_extension(block: WitnessBlock) -> DensityMatrix:
    """Assemble the 64x64 extension on (A, B, B').

    Raises:
        InvalidInputError: the block is not positive semidefinite.
    """
    if not block.psd:
        raise InvalidInputError(f"{block.variant.value} block is not positive semidefinite")
    core = plus_plus_block(block)
    full = np.zeros((64, 64))
    for g in range(4):
        shifted = [
            (16 * (a ^ g) + 4 * (b ^ g) + (c ^ g), _POSITION[(a, b, c)])
            for a, b, c in PLUS_PLUS_ORDER
        ]
        rows = np.array([s[0] for s in shifted])
        cols = np.array([s[1] for s in shifted])
        full[np.ix_(rows, rows)] = core[np.ix_(cols, cols)]
    return DensityMatrix((4, 4, 4), full.astype(np.complex128))


def target_state(block: WitnessBlock) -> DensityMatrix:
    """Two-pair state kept by the announcement [1 1 1] on the block's angle states."""
    y_zero = block.variant is WitnessVariant.M5_ITERATIVE
    inputs = [rcad_angle_state(float(np.arccos(np.clip(c, -1.0, 1.0))), y_zero) for c in block.cosines]
    kept = lad_apply(ANNOUNCE_ALL, BellDiagonalDistribution.product_of(*inputs))
    return to_density_matrix(kept)


@dataclass(frozen=True)
class ExtensionCheck:
    """Numerical audit of a reconstructed extension."""

    min_eigenvalue: float
    reduction_residual: float
    swap_defect: float
    trace: float
    expected_trace: float

    @property
    def ok(self) -> bool:
        tol = config.spectrum_tol
        return (
            self.min_eigenvalue >= -tol
            and self.reduction_residual <= tol
            and self.swap_defect <= tol
            and abs(self.trace - self.expected_trace) <= tol
        )


def verify_witness(block: WitnessBlock) -> ExtensionCheck:
    """Rebuild the extension and compare its AB marginal with the LAD output."""
    extension = reconstruct_extension(block)
    target = target_state(block)
    marginal = partial_trace(extension, [0, 1])
    ct, cp, ca = block.cosines
    check = ExtensionCheck(
        min_eigenvalue=extension.min_eigenvalue(),
        reduction_residual=float(np.max(np.abs(marginal.entries - target.entries))),
        swap_defect=swap_defect(extension),
        trace=extension.trace,
        expected_trace=(1 + ct * cp * ca) / 2,
    )
    logger.debug("witness_verified", variant=block.variant.value, ok=check.ok)
    return check


# =============================================================================
# Blocksize splits
# =============================================================================


def split_witness(n1: int, n2: int, n3: int) -> WitnessBlock:
    """Witness for three RCAD blocks of the given sizes, cosines sorted descending."""
    sizes = sorted((n1, n2, n3), reverse=True)
    if sizes[-1] < 1:
        raise InvalidInputError(f"blocksizes must be positive, got {(n1, n2, n3)}")
    theta, phi, alpha = (float(np.arccos(rcad_cosine(n))) for n in sizes)
    if sizes[1] == 1:
        if sizes[0] <= 2:
            return m4_equal_angle(theta)
    return m4_diag(theta, phi, alpha)


def splits(total: int) -> list[tuple[int, int, int]]:
    """Nonincreasing positive triples summing to total."""
    return [
        (a, b, c)
        for a, b, c in product(range(1, total + 1), repeat=3)
        if a >= b >= c and a + b + c == total
    ]


def coverage(max_total: int = 12) -> dict[tuple[int, int, int], ExtensionCheck]:
    """Audit the witness of every split with 3 <= n1 + n2 + n3 <= max_total."""
    results: dict[tuple[int, int, int], ExtensionCheck] = {}
    for total in range(3, max_total + 1):
        for split in splits(total):
            results[split] = verify_witness(split_witness(*split))
    failed = [s for s, check in results.items() if not check.ok]
    logger.info("witness_coverage", splits=len(results), failed=len(failed))
    return results
