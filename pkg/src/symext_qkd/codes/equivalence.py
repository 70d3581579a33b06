"""
Equivalence classes of parity matrices.

Two parity matrices are equivalent when one is reached from the other by
column permutations, row permutations and pivot swaps (exchanging a data bit
with a parity bit). Classes are found by breadth-first orbit enumeration over
canonical keys.
"""

from collections import deque
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

import numpy as np
import structlog

from ..errors import InvalidInputError
from .gf2 import ParityMatrix, incidence_components, pivot_swap, row_masks

logger = structlog.get_logger(__name__)

# Column count plus the sorted tuple of row bitmasks (column j is bit j)
Key = tuple[int, tuple[int, ...]]


def _from_key(key: Key) -> np.ndarray:
    k, rows = key
    return np.array([[(r >> j) & 1 for j in range(k)] for r in rows], dtype=np.uint8)


def permutation_key(bits: np.ndarray) -> Key:
    """Least sorted row-mask tuple over all column permutations."""
    k = bits.shape[1]
    best: tuple[int, ...] | None = None
    for perm in permutations(range(k)):
        candidate = tuple(sorted(row_masks(bits[:, perm])))
        if best is None or candidate < best:
            best = candidate
    return (k, best or ())


@lru_cache(maxsize=None)
def _orbit(key: Key) -> frozenset[Key]:
    """Every permutation key reachable by pivot swaps."""
    seen = {key}
    queue = deque([key])
    while queue:
        current = queue.popleft()
        bits = _from_key(current)
        for i, j in zip(*np.nonzero(bits), strict=True):
            nxt = permutation_key(pivot_swap(bits, int(i), int(j)))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def class_key(P: ParityMatrix) -> Key:
    """Canonical key of the equivalence class: the least key in the orbit.

    Low columns carry the low bits, so weight-one rows gather on the left and
    a lone data-bit announcement reads 100.
    """
    return min(_orbit(permutation_key(P.bits)))


def canonical_form(P: ParityMatrix) -> ParityMatrix:
    """Lexicographically least orbit member."""
    return ParityMatrix(_from_key(class_key(P)))


def equivalent(P1: ParityMatrix, P2: ParityMatrix) -> bool:
    """True iff P2 lies in the orbit of P1."""
    if P1.bits.shape != P2.bits.shape:
        raise InvalidInputError(f"shape mismatch: {P1.bits.shape} vs {P2.bits.shape}")
    return permutation_key(P2.bits) in _orbit(permutation_key(P1.bits))


def is_irreducible(P: ParityMatrix) -> bool:
    """No zero column and no orbit member splits into a direct sum."""
    if not P.bits.any(axis=0).all() or not P.bits.any(axis=1).all():
        return False
    orbit = _orbit(permutation_key(P.bits))
    return all(len(incidence_components(_from_key(key))) == 1 for key in orbit)


def enumerate_classes(n: int, k: int, irreducible_only: bool = False) -> list[ParityMatrix]:
    """Canonical representatives of every class of (n - k) x k parity matrices.

    Rows are nonzero (a zero row of P reveals a parity bit outright).
    Representatives are sorted by their canonical key.
    """
    if not 1 <= k < n:
        raise InvalidInputError(f"need 1 <= k < n, got n={n}, k={k}")
    m = n - k
    classes: dict[Key, ParityMatrix] = {}
    covered: set[Key] = set()
    for rows in combinations_with_replacement(range(1, 2**k), m):
        key = permutation_key(_from_key((k, rows)))
        if key in covered:
            continue
        orbit = _orbit(key)
        covered |= orbit
        canonical = min(orbit)
        classes[canonical] = ParityMatrix(_from_key(canonical))
    representatives = [classes[key] for key in sorted(classes)]
    if irreducible_only:
        representatives = [P for P in representatives if is_irreducible(P)]
    logger.debug("classes_enumerated", n=n, k=k, count=len(representatives))
    return representatives


# =============================================================================
# Row-multiset labels
# =============================================================================


def header_order(k: int) -> list[int]:
    """Nonzero k-bit rows in table-header order.

    Weight-one rows first, then by descending weight, ties by descending value.
    For k = 3: 100 010 001 111 110 101 011.
    """
    rows = range(1, 2**k)
    singles = sorted((r for r in rows if bin(r).count("1") == 1), reverse=True)
    rest = sorted(
        (r for r in rows if bin(r).count("1") > 1),
        key=lambda r: (-bin(r).count("1"), -r),
    )
    return singles + rest


def header_labels(k: int) -> list[str]:
    return [format(r, f"0{k}b") for r in header_order(k)]


def row_label(P: ParityMatrix) -> tuple[int, ...]:
    """Count of rows equal to each nonzero pattern, in header order."""
    rows = P.row_strings()
    return tuple(rows.count(label) for label in header_labels(P.k))
