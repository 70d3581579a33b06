"""
Pauli triples that survive the symmetries of an extended Bell-diagonal pair.

On one pair (A, B, B') an extension invariant under xxx and zzz can only
contain the identity, the three permutations of I s_i s_i, and the six
permutations of x y z. Restricting to the +1 eigenspace of zzz, spanned by
|000>, |011>, |101>, |110>, turns each triple into a two-qubit Pauli product.
The phase-gate symmetry S^dag S S merges these sixteen triples into ten
combinations. Both tables are checked against direct projection when first loaded.
"""

from dataclasses import dataclass
from functools import cache

import numpy as np
from numpy.typing import NDArray

from ..errors import SymextError
from ..quantum.paulis import ComplexMatrix, pauli_string

PLUS_SPACE = np.zeros((8, 4), dtype=np.complex128)
PLUS_SPACE[[0, 3, 5, 6], [0, 1, 2, 3]] = 1.0

_SWAP_BB = np.zeros((8, 8), dtype=np.complex128)
for _a in range(2):
    for _b in range(2):
        for _c in range(2):
            _SWAP_BB[4 * _a + 2 * _c + _b, 4 * _a + 2 * _b + _c] = 1.0

# (triple, sign and two-qubit projection)
P_TRIPLES = (
    ("III", 1, "II"),
    ("Ixx", 1, "Ix"),
    ("Iyy", -1, "zx"),
    ("Izz", 1, "zI"),
    ("xxI", 1, "xx"),
    ("yyI", 1, "yy"),
    ("zzI", 1, "zz"),
    ("xIx", 1, "xI"),
    ("yIy", -1, "xz"),
    ("zIz", 1, "Iz"),
    ("xyz", 1, "yx"),
    ("yzx", 1, "yz"),
    ("zxy", 1, "Iy"),
    ("xzy", 1, "yI"),
    ("yxz", 1, "xy"),
    ("zyx", 1, "zy"),
)

# combinations of triples (coefficient, triple index) and their projections
R_COMBINATIONS = (
    ((1, 0),),
    ((1, 1), (1, 2)),
    ((1, 3),),
    ((1, 4), (-1, 5)),
    ((1, 6),),
    ((1, 7), (-1, 8)),
    ((1, 9),),
    ((1, 10), (1, 14)),
    ((1, 11), (1, 13)),
    ((1, 12), (-1, 15)),
)
T_PROJECTIONS = (
    ((1, "II"),),
    ((1, "Ix"), (-1, "zx")),
    ((1, "zI"),),
    ((1, "xx"), (-1, "yy")),
    ((1, "zz"),),
    ((1, "xI"), (1, "xz")),
    ((1, "Iz"),),
    ((1, "yx"), (1, "xy")),
    ((1, "yz"), (1, "yI")),
    ((1, "Iy"), (-1, "zy")),
)


@dataclass(frozen=True)
class TermSet:
    """Single-pair operator basis for one symmetry mode.

    Attributes:
        name: "P" (sixteen triples) or "R" (ten phase-symmetric combinations).
        full: (K, 8, 8) operators on A B B'.
        projected: (K, 4, 4) restrictions to the zzz = +1 space.
        expansion: Each term as (coefficient, triple index) pairs.
        fixed: Terms set by the trace condition.
        odd: Terms that flip sign under transposition.
        swap: Partner index under B <-> B'.
        swap_sign: Sign picked up under B <-> B'.
    """

    name: str
    full: NDArray[np.complex128]
    projected: NDArray[np.complex128]
    expansion: tuple[tuple[tuple[int, int], ...], ...]
    fixed: frozenset[int]
    odd: frozenset[int]
    swap: tuple[int, ...]
    swap_sign: tuple[int, ...]

    @property
    def size(self) -> int:
        return int(self.full.shape[0])

    def label(self, term: int) -> str:
        return f"{self.name}{term + 1}"


def _combine(parts: tuple[tuple[int, str], ...]) -> ComplexMatrix:
    return sum(coef * pauli_string(label) for coef, label in parts)  # type: ignore[return-value]


def _swap_partner(ops: NDArray[np.complex128], i: int) -> tuple[int, int]:
    swapped = _SWAP_BB @ ops[i] @ _SWAP_BB
    for j, op in enumerate(ops):
        for sign in (1, -1):
            if np.allclose(swapped, sign * op, atol=1e-12):
                return j, sign
    raise SymextError(f"term {i} has no partner under the B/B' swap")


def _check_projection(full: ComplexMatrix, expected: ComplexMatrix, label: str) -> None:
    projected = PLUS_SPACE.conj().T @ full @ PLUS_SPACE
    if not np.allclose(projected, expected, atol=1e-12):
        raise SymextError(f"projection of {label} does not match its tabulated form")


@cache
def triple_terms() -> TermSet:
    """The sixteen triples P_1..P_16."""
    full = np.array([pauli_string(t) for t, _, _ in P_TRIPLES])
    projected = np.array([s * pauli_string(q) for _, s, q in P_TRIPLES])
    for (triple, _, _), f, q in zip(P_TRIPLES, full, projected, strict=True):
        _check_projection(f, q, triple)
    partners = [_swap_partner(full, i) for i in range(16)]
    return TermSet(
        name="P",
        full=full,
        projected=projected,
        expansion=tuple(((1, i),) for i in range(16)),
        fixed=frozenset({0, 4, 5, 6}),
        odd=frozenset(range(10, 16)),
        swap=tuple(p for p, _ in partners),
        swap_sign=tuple(s for _, s in partners),
    )


@cache
def phase_symmetric_terms() -> TermSet:
    """The ten combinations R_1..R_10 invariant under S^dag S S."""
    triples = triple_terms()
    full = np.array(
        [sum(c * triples.full[i] for c, i in combo) for combo in R_COMBINATIONS]
    )
    projected = np.array([_combine(parts) for parts in T_PROJECTIONS])
    for k, (f, t) in enumerate(zip(full, projected, strict=True)):
        _check_projection(f, t, f"R{k + 1}")
    partners = [_swap_partner(full, i) for i in range(10)]
    return TermSet(
        name="R",
        full=full,
        projected=projected,
        expansion=R_COMBINATIONS,
        fixed=frozenset({0, 3, 4}),
        odd=frozenset({7, 8, 9}),
        swap=tuple(p for p, _ in partners),
        swap_sign=tuple(s for _, s in partners),
    )


# Pauli index on AB of the triples that survive tracing out B'
REDUCED_INDEX = {0: 0, 4: 1, 5: 2, 6: 3}
