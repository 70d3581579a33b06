"""
Symmetric-extension SDPs for multi-pair Bell-diagonal states.

The extension is expanded in products of single-pair terms. Products with an
odd number of transposition-odd terms vanish, products of trace-condition
terms are fixed by the state, and the rest pair up under the B/B' swap into
open variables. Minimizing t in

    sum_fixed xi T  +  sum_open x_v (T_s + sign T_swap(s))  +  t 1  >= 0

gives t <= 0 exactly when the state is extendible. The LMI lives on the zzz = +1
space of every pair (side 4^N) or, unprojected, on the full 8^N space.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import prod

import numpy as np
import structlog
from numpy.typing import NDArray

from ..bell.distribution import BellDiagonalDistribution, normalize
from ..config import config
from ..decide.models import Decision, Verdict
from ..errors import InvalidInputError, SolverError, SymextError, SymmetryModeError
from ..quantum.paulis import BELL_R_SIGNS, kron_all
from ..sdp.problems import LmiBlock, SdpInequality, SdpSolution, sparsity_blocks
from ..sdp.solver import solve_inequality
from .pauli_terms import REDUCED_INDEX, TermSet, phase_symmetric_terms, triple_terms

logger = structlog.get_logger(__name__)

TermString = tuple[int, ...]

IMAGINARY_TOL = 1e-12
XY_SYMMETRY_TOL = 1e-12


class SymmetryMode(str, Enum):
    """Which single-pair basis parametrizes the extension."""

    GENERIC = "generic"
    S_SYMMETRIC = "s_symmetric"


def term_set(mode: SymmetryMode | str) -> TermSet:
    return triple_terms() if SymmetryMode(mode) is SymmetryMode.GENERIC else phase_symmetric_terms()


@dataclass(frozen=True)
class TermStructure:
    """Classification of every term string for a number of pairs.

    Attributes:
        fixed: Strings of trace-condition terms only.
        partners: (string, fixed partner, sign) for strings whose swap partner is fixed.
        orbits: Open variables, each a tuple of (string, sign) members.
    """

    fixed: tuple[TermString, ...]
    partners: tuple[tuple[TermString, TermString, int], ...]
    orbits: tuple[tuple[tuple[TermString, int], ...], ...]


def term_structure(terms: TermSet, pairs: int) -> TermStructure:
    if pairs < 1:
        raise InvalidInputError(f"need at least one pair, got {pairs}")
    fixed: list[TermString] = []
    partners: list[tuple[TermString, TermString, int]] = []
    orbits: list[tuple[tuple[TermString, int], ...]] = []
    for s in product(range(terms.size), repeat=pairs):
        if sum(t in terms.odd for t in s) % 2:
            continue
        if all(t in terms.fixed for t in s):
            fixed.append(s)
            continue
        partner = tuple(terms.swap[t] for t in s)
        sign = prod(terms.swap_sign[t] for t in s)
        if all(t in terms.fixed for t in partner):
            partners.append((s, partner, sign))
        elif partner == s:
            if sign > 0:
                orbits.append(((s, 1),))
        elif s < partner:
            orbits.append(((s, 1), (partner, sign)))
    return TermStructure(tuple(fixed), tuple(partners), tuple(orbits))


def count_open_variables(pairs: int, mode: SymmetryMode | str = SymmetryMode.GENERIC) -> int:
    """Open coefficients before the t variable is added."""
    return len(term_structure(term_set(mode), pairs).orbits)


def pauli_coefficients(state: BellDiagonalDistribution) -> NDArray[np.float64]:
    """beta_s = tr(rho sigma_s (x) sigma_s) as a (4,)*N tensor."""
    beta = state.tensor()
    for axis in range(state.pairs):
        beta = np.moveaxis(np.tensordot(beta, BELL_R_SIGNS, axes=([axis], [0])), -1, axis)
    return np.asarray(beta)


def _fixed_value(terms: TermSet, s: TermString, beta: NDArray[np.float64]) -> float:
    """xi_s from the trace condition; every triple product in s must agree."""
    values = []
    for parts in product(*(terms.expansion[t] for t in s)):
        coef = prod(c for c, _ in parts)
        index = tuple(REDUCED_INDEX[i] for _, i in parts)
        values.append(beta[index] / coef)
    if max(values) - min(values) > 1e-9 * max(1.0, max(abs(v) for v in values)):
        raise SymmetryModeError(
            f"state coefficients {values} are inconsistent with the {terms.name} terms of "
            f"{'.'.join(terms.label(t) for t in s)}"
        )
    return float(np.mean(values))


@dataclass(frozen=True)
class SymextProblem:
    """An assembled symmetric-extension SDP; variable 0 is t."""

    pairs: int
    mode: SymmetryMode
    projected: bool
    terms: TermSet
    fixed: tuple[tuple[TermString, float], ...]
    variables: tuple[tuple[tuple[TermString, int], ...], ...]
    sdp: SdpInequality
    members: tuple[NDArray[np.int64], ...]

    @property
    def open_variables(self) -> int:
        return len(self.variables)

    @property
    def side(self) -> int:
        return self.sdp.side


def _real(matrix: NDArray[np.complex128], label: str) -> NDArray[np.float64]:
    if matrix.size and float(np.max(np.abs(matrix.imag))) > IMAGINARY_TOL:
        raise SymextError(f"term {label} has an imaginary part")
    return np.ascontiguousarray(matrix.real)


def _restrict(
    s: TermString,
    choice: tuple[int, ...],
    restricted: list[list[NDArray[np.complex128]]],
    nonzero: list[list[bool]],
) -> NDArray[np.complex128] | None:
    """Product of the terms of s on one block, None when a factor vanishes there."""
    if not all(nonzero[t][c] for t, c in zip(s, choice, strict=True)):
        return None
    return kron_all(*(restricted[t][c] for t, c in zip(s, choice, strict=True)))


def build(
    state: BellDiagonalDistribution,
    mode: SymmetryMode | str = SymmetryMode.GENERIC,
    projected: bool = True,
) -> SymextProblem:
    """Assemble the min-t SDP for a Bell-diagonal state (normalized first).

    Raises:
        SymmetryModeError: S_SYMMETRIC requested for a state that is not x/y symmetric.
    """
    mode = SymmetryMode(mode)
    state = normalize(state)
    if mode is SymmetryMode.S_SYMMETRIC and not state.is_xy_symmetric(XY_SYMMETRY_TOL):
        raise SymmetryModeError("S_SYMMETRIC mode needs p_x = p_y on every pair")
    terms = term_set(mode)
    structure = term_structure(terms, state.pairs)
    beta = pauli_coefficients(state)
    n = state.pairs

    fixed_values = {s: _fixed_value(terms, s, beta) for s in structure.fixed}
    constant: list[tuple[TermString, float]] = list(fixed_values.items())
    constant += [(s, sign * fixed_values[f]) for s, f, sign in structure.partners]

    ops = terms.projected if projected else terms.full
    local = ops.shape[1]
    components = sparsity_blocks(np.any(np.abs(ops) > 0, axis=0))
    restricted = [[op[np.ix_(c, c)] for c in components] for op in ops]
    nonzero = [[bool(np.any(r)) for r in row] for row in restricted]

    weights = local ** np.arange(n - 1, -1, -1)
    blocks: list[LmiBlock] = []
    members_list: list[NDArray[np.int64]] = []
    for choice in product(range(len(components)), repeat=n):
        members = np.array(
            [int(np.dot(idx, weights)) for idx in product(*(components[c] for c in choice))],
            dtype=np.int64,
        )
        size = len(members)

        G = np.zeros((size, size), dtype=np.complex128)
        for s, value in constant:
            part = _restrict(s, choice, restricted, nonzero)
            if part is not None:
                G += value * part
        indices = [0]
        mats = [np.eye(size)]
        for v, orbit in enumerate(structure.orbits, start=1):
            acc = None
            for s, sign in orbit:
                part = _restrict(s, choice, restricted, nonzero)
                if part is not None:
                    acc = sign * part if acc is None else acc + sign * part
            if acc is not None and np.any(np.abs(acc) > 0):
                indices.append(v)
                mats.append(_real(acc, str(v)))
        blocks.append(
            LmiBlock(np.array(indices, dtype=np.int64), np.array(mats), _real(G, "G"))
        )
        members_list.append(members)

    labels = ("t",) + tuple(
        ".".join(terms.label(t) for t in orbit[0][0]) for orbit in structure.orbits
    )
    c = np.zeros(len(structure.orbits) + 1)
    c[0] = 1.0
    sdp = SdpInequality(c, tuple(blocks), labels)
    logger.debug(
        "symext_built",
        pairs=n, mode=mode.value, projected=projected, open=len(structure.orbits),
        side=sdp.side, blocks=sdp.block_sizes,
    )
    return SymextProblem(
        pairs=n,
        mode=mode,
        projected=projected,
        terms=terms,
        fixed=tuple(constant),
        variables=structure.orbits,
        sdp=sdp,
        members=tuple(members_list),
    )


@dataclass(frozen=True)
class SymextResult:
    """Solved problem: t is the optimal shift of the identity."""

    t: float
    problem: SymextProblem
    solution: SdpSolution

    @property
    def extendible(self) -> bool:
        return self.t <= config.decision_tol

    def decision(self) -> Decision:
        return Decision(
            verdict=Verdict.YES if self.extendible else Verdict.NO,
            margin=-self.t,
            rule="sdp.min_t",
            details={
                "min_t": self.t,
                "mode": self.problem.mode.value,
                "iterations": self.solution.iterations,
                "gap": self.solution.gap,
            },
        )


def solve(problem: SymextProblem, tol: float | None = None) -> SymextResult:
    """Solve the assembled SDP.

    Raises:
        SolverError: the solver did not reach an optimum.
    """
    solution = solve_inequality(problem.sdp, tol=tol)
    if not solution.optimal:
        raise SolverError(
            f"symmetric-extension SDP ended with status {solution.status.value} "
            f"after {solution.iterations} iterations"
        )
    return SymextResult(t=float(solution.x[0]), problem=problem, solution=solution)


def min_t(
    state: BellDiagonalDistribution,
    mode: SymmetryMode | str = SymmetryMode.GENERIC,
    projected: bool = True,
) -> float:
    """Smallest t with t 1/2^(3N) + rho_ABB' positive for some extension operator."""
    return solve(build(state, mode, projected)).t


def decide_sdp(
    state: BellDiagonalDistribution, mode: SymmetryMode | str = SymmetryMode.GENERIC
) -> Decision:
    """YES iff min_t <= config.decision_tol."""
    return solve(build(state, mode)).decision()
