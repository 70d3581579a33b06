"""
GF(2) parity-check algebra for linear advantage-distillation announcements.

Row reduction, systematic form, reduction of an announcement to irreducible
direct-sum blocks, and the check that announcing (r, Hd) is equivalent to
announcing a single error-pattern word.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import product

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import InvalidInputError

logger = structlog.get_logger(__name__)

BitMatrix = NDArray[np.uint8]

MAX_COLUMNS = 64
MAX_EXHAUSTIVE_COLUMNS = 12


# =============================================================================
# Types
# =============================================================================


def row_masks(bits: BitMatrix) -> list[int]:
    """Each row as an integer, column j in bit j."""
    return [sum(int(b) << j for j, b in enumerate(row)) for row in bits]


@dataclass(frozen=True)
class ParityCheckMatrix:
    """m x n binary matrix H defining the announcement a = H d."""

    bits: BitMatrix

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=np.uint8) % 2
        if bits.ndim != 2:
            raise InvalidInputError(f"parity check matrix must be 2-D, got shape {bits.shape}")
        if bits.shape[1] > MAX_COLUMNS:
            raise InvalidInputError(f"at most {MAX_COLUMNS} columns supported, got {bits.shape[1]}")
        object.__setattr__(self, "bits", bits)

    @property
    def m(self) -> int:
        return int(self.bits.shape[0])

    @property
    def n(self) -> int:
        return int(self.bits.shape[1])

    @classmethod
    def from_text(cls, text: str) -> "ParityCheckMatrix":
        """Parse rows of '0'/'1' characters, one row per line."""
        rows = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if not rows or any(set(r) - {"0", "1"} for r in rows):
            raise InvalidInputError("parity check text must be rows of 0/1 characters")
        if len({len(r) for r in rows}) != 1:
            raise InvalidInputError("parity check rows have different lengths")
        return cls(np.array([[int(c) for c in r] for r in rows], dtype=np.uint8))

    def to_text(self) -> str:
        return "\n".join("".join(str(int(b)) for b in row) for row in self.bits)

    @classmethod
    def from_row_masks(cls, masks: list[int], n: int) -> "ParityCheckMatrix":
        """Rows given as integer bitmasks, column j in bit j."""
        if not 0 < n <= MAX_COLUMNS:
            raise InvalidInputError(f"need 0 < n <= {MAX_COLUMNS}, got {n}")
        if any(not 0 <= r < 1 << n for r in masks):
            raise InvalidInputError(f"row masks must lie in [0, 2^{n})")
        return cls(np.array([[(r >> j) & 1 for j in range(n)] for r in masks], dtype=np.uint8).reshape(len(masks), n))

    def row_masks(self) -> list[int]:
        return row_masks(self.bits)

    def announce(self, data: BitMatrix) -> BitMatrix:
        """H d over GF(2)."""
        return np.asarray((self.bits.astype(np.int64) @ np.asarray(data, dtype=np.int64)) % 2, dtype=np.uint8)


@dataclass(frozen=True)
class ParityMatrix:
    """The m x k block P of a systematic parity check matrix [P | 1_m]."""

    bits: BitMatrix

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=np.uint8) % 2
        if bits.ndim != 2:
            raise InvalidInputError(f"parity matrix must be 2-D, got shape {bits.shape}")
        object.__setattr__(self, "bits", bits)

    @property
    def m(self) -> int:
        return int(self.bits.shape[0])

    @property
    def k(self) -> int:
        return int(self.bits.shape[1])

    def check_matrix(self) -> ParityCheckMatrix:
        """[P | 1_m]."""
        return ParityCheckMatrix(np.hstack([self.bits, np.eye(self.m, dtype=np.uint8)]))

    def row_strings(self) -> list[str]:
        return ["".join(str(int(b)) for b in row) for row in self.bits]


@dataclass
class ReductionReport:
    """What reduce() removed and how the remainder splits."""

    removed_zero_rows: int = 0
    removed_zero_columns: list[int] = field(default_factory=list)
    revealed_bits: list[int] = field(default_factory=list)
    direct_sum_blocks: list[list[int]] = field(default_factory=list)


# =============================================================================
# Row reduction
# =============================================================================


def _rref_bits(bits: BitMatrix, right_to_left: bool = False) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form and pivot columns (in row order)."""
    a = np.array(bits, dtype=np.uint8, copy=True)
    m, n = a.shape
    columns = range(n - 1, -1, -1) if right_to_left else range(n)
    pivots: list[int] = []
    row = 0
    for col in columns:
        if row >= m:
            break
        candidates = np.flatnonzero(a[row:, col])
        if candidates.size == 0:
            continue
        pivot_row = row + int(candidates[0])
        if pivot_row != row:
            a[[row, pivot_row]] = a[[pivot_row, row]]
        others = np.flatnonzero(a[:, col])
        others = others[others != row]
        a[others] ^= a[row]
        pivots.append(col)
        row += 1
    return a, pivots


def rref(H: ParityCheckMatrix) -> ParityCheckMatrix:
    """Unique reduced row echelon form; zero rows stay at the bottom."""
    reduced, _ = _rref_bits(H.bits)
    return ParityCheckMatrix(reduced)


def gf2_rank(bits: BitMatrix) -> int:
    return len(_rref_bits(bits)[1])


def to_systematic(H: ParityCheckMatrix) -> tuple[ParityMatrix, list[int]]:
    """Systematic form [P | 1_m] of a full-row-rank H.

    Pivots are chosen from the right so that a matrix already in systematic
    form comes back with the identity permutation.

    Returns:
        (P, permutation) where column j of [P | 1_m] is original column
        permutation[j]; H[:, permutation] is row-equivalent to [P | 1_m].
    """
    reduced, pivots = _rref_bits(H.bits, right_to_left=True)
    if len(pivots) < H.m:
        raise InvalidInputError(f"H has rank {len(pivots)} < {H.m} rows; run rref and drop zero rows")
    order = np.argsort(pivots, kind="stable")
    reduced = reduced[order]
    pivot_cols = sorted(pivots)
    free_cols = [c for c in range(H.n) if c not in set(pivot_cols)]
    return ParityMatrix(reduced[:, free_cols]), free_cols + pivot_cols


# =============================================================================
# Reduction to irreducible blocks
# =============================================================================


def incidence_components(P: BitMatrix) -> list[tuple[list[int], list[int]]]:
    """Connected components of the bipartite row/column incidence graph.

    Returns (rows, columns) per component with at least one row.
    """
    m, k = P.shape
    rows, cols = np.nonzero(P)
    graph = coo_matrix(
        (np.ones(rows.size), (rows, m + cols)), shape=(m + k, m + k)
    )
    _, labels = connected_components(graph, directed=False)
    result = []
    for label in sorted(set(labels[:m].tolist()), key=lambda lb: int(np.flatnonzero(labels == lb)[0])):
        result.append(
            (
                [i for i in range(m) if labels[i] == label],
                [j for j in range(k) if labels[m + j] == label],
            )
        )
    return result


def pivot_swap(P: BitMatrix, i: int, j: int) -> BitMatrix:
    """Exchange data column j with the parity column of row i (requires P[i, j] = 1).

    Every other row with a 1 in column j has row i added to it, except in column j.
    """
    out = np.array(P, copy=True)
    targets = np.flatnonzero(P[:, j])
    for r in targets:
        if r == i:
            continue
        keep = out[r, j]
        out[r] ^= P[i]
        out[r, j] = keep
    return out


def _split_once(
    P: BitMatrix, data_labels: list[int], parity_labels: list[int]
) -> tuple[BitMatrix, list[int], list[int]] | None:
    """Search the pivot-swap orbit for a member whose incidence graph is disconnected."""
    start = (P.tobytes(), P.shape)
    seen = {start}
    queue = deque([(P, data_labels, parity_labels)])
    while queue:
        current, dl, pl = queue.popleft()
        if len(incidence_components(current)) > 1:
            return current, dl, pl
        for i, j in zip(*np.nonzero(current), strict=True):
            nxt = pivot_swap(current, int(i), int(j))
            key = (nxt.tobytes(), nxt.shape)
            if key in seen:
                continue
            seen.add(key)
            ndl, npl = list(dl), list(pl)
            ndl[j], npl[i] = pl[i], dl[j]
            queue.append((nxt, ndl, npl))
    return None


def _split_blocks(
    P: BitMatrix, data_labels: list[int], parity_labels: list[int]
) -> list[tuple[BitMatrix, list[int]]]:
    found = _split_once(P, data_labels, parity_labels)
    if found is None:
        return [(P, data_labels + parity_labels)]
    member, dl, pl = found
    blocks = []
    for rows, cols in incidence_components(member):
        sub = member[np.ix_(rows, cols)]
        blocks.extend(_split_blocks(sub, [dl[c] for c in cols], [pl[r] for r in rows]))
    return blocks


def reduce(H: ParityCheckMatrix) -> tuple[list[ParityCheckMatrix], ReductionReport]:
    """Strip zero rows, zero columns and revealed bits, then split into direct sums.

    Each returned block is systematic, [P_b | 1], over the original columns
    listed in the matching entry of report.direct_sum_blocks.
    """
    report = ReductionReport()
    reduced, pivots = _rref_bits(H.bits)
    report.removed_zero_rows = H.m - len(pivots)
    reduced = reduced[: len(pivots)]

    report.removed_zero_columns = [int(c) for c in np.flatnonzero(~H.bits.any(axis=0))]
    weight_one = [r for r in range(reduced.shape[0]) if int(reduced[r].sum()) == 1]
    report.revealed_bits = sorted(pivots[r] for r in weight_one)

    keep_rows = [r for r in range(reduced.shape[0]) if r not in set(weight_one)]
    dropped = set(report.removed_zero_columns) | set(report.revealed_bits)
    keep_cols = [c for c in range(H.n) if c not in dropped]
    blocks: list[ParityCheckMatrix] = []
    if keep_rows:
        remainder = ParityCheckMatrix(reduced[np.ix_(keep_rows, keep_cols)])
        P, perm = to_systematic(remainder)
        labels = [keep_cols[c] for c in perm]
        split = _split_blocks(P.bits, labels[: P.k], labels[P.k :])
        for sub, cols in split:
            blocks.append(ParityMatrix(sub).check_matrix())
            report.direct_sum_blocks.append(cols)
    logger.debug(
        "announcement_reduced",
        n=H.n,
        m=H.m,
        zero_rows=report.removed_zero_rows,
        zero_columns=report.removed_zero_columns,
        revealed=report.revealed_bits,
        blocks=[b.bits.shape for b in blocks],
    )
    return blocks, report


def recompose(
    blocks: list[ParityCheckMatrix], report: ReductionReport, n: int
) -> ParityCheckMatrix:
    """Reassemble an n-column announcement with the same row space as the reduced input."""
    rows: list[BitMatrix] = []
    for block, cols in zip(blocks, report.direct_sum_blocks, strict=True):
        for row in block.bits:
            full = np.zeros(n, dtype=np.uint8)
            full[cols] = row
            rows.append(full)
    for bit in report.revealed_bits:
        full = np.zeros(n, dtype=np.uint8)
        full[bit] = 1
        rows.append(full)
    if not rows:
        return ParityCheckMatrix(np.zeros((0, n), dtype=np.uint8))
    return ParityCheckMatrix(np.array(rows, dtype=np.uint8))


# =============================================================================
# Announcement equivalence
# =============================================================================


def _word_value(word: BitMatrix) -> int:
    """Integer value of a bit vector, bit 0 most significant."""
    return int("".join(str(int(b)) for b in word) or "0", 2)


def _bits_of(value: int, length: int) -> BitMatrix:
    return np.array([(value >> (length - 1 - i)) & 1 for i in range(length)], dtype=np.uint8)


def _codewords(P: ParityMatrix, perm: list[int]) -> list[BitMatrix]:
    """Codewords c_r of ker H, indexed by the k-bit message r (bit 0 most significant)."""
    n = P.k + P.m
    words = []
    for r in range(2**P.k):
        u = _bits_of(r, P.k)
        systematic = np.concatenate([u, (P.bits.astype(np.int64) @ u) % 2]).astype(np.uint8)
        word = np.zeros(n, dtype=np.uint8)
        word[perm] = systematic
        words.append(word)
    return words


def _smallest_solution(codewords: list[BitMatrix], particular: BitMatrix) -> BitMatrix:
    """Numerically smallest d with H d = H particular."""
    return min((c ^ particular for c in codewords), key=_word_value)


def maurer_equivalent(H: ParityCheckMatrix, data: BitMatrix, r: BitMatrix) -> bool:
    """Check that announcing (r, Hd) and the word m = c_r xor c_j xor d determine each other.

    c_j is the codeword closest (numerically smallest xor) to d, so m is
    c_r xor d0 with d0 the smallest word carrying the syndrome a = Hd. Both
    directions are reconstructed explicitly by exhaustive search.
    """
    if H.n > MAX_EXHAUSTIVE_COLUMNS:
        raise InvalidInputError(f"exhaustive check supports n <= {MAX_EXHAUSTIVE_COLUMNS}")
    if gf2_rank(H.bits) < H.m:
        raise InvalidInputError("H must have full row rank")
    data = np.asarray(data, dtype=np.uint8) % 2
    r = np.asarray(r, dtype=np.uint8) % 2
    P, perm = to_systematic(H)
    if data.shape != (H.n,) or r.shape != (P.k,):
        raise InvalidInputError(f"expected data of length {H.n} and r of length {P.k}")
    codewords = _codewords(P, perm)
    index = _word_value(r)

    # Announcement 1 -> announcement 2
    a = H.announce(data)
    d0 = _smallest_solution(codewords, data)
    c_j = d0 ^ data
    word = codewords[index] ^ c_j ^ data

    # Announcement 2 -> announcement 1
    a_back = H.announce(word)
    d0_back = _smallest_solution(codewords, word)
    c_r_back = word ^ d0_back
    matches = [i for i, c in enumerate(codewords) if np.array_equal(c, c_r_back)]
    r_back = matches[0] if matches else -1

    return bool(np.array_equal(a_back, a) and r_back == index and np.array_equal(d0_back, d0))


def consistent_words(H: ParityCheckMatrix, announcement: BitMatrix) -> set[int]:
    """All n-bit words d (as integers) with H d = announcement."""
    target = np.asarray(announcement, dtype=np.uint8)
    return {
        value
        for value, word in enumerate(product((0, 1), repeat=H.n))
        if np.array_equal(H.announce(np.array(word, dtype=np.uint8)), target)
    }
