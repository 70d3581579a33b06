"""
Semidefinite programs in inequality and standard form.

Inequality form:  minimize c^T x  subject to  F(x) = G + sum_i x_i F_i >= 0.
Standard form:    minimize tr(C X)  subject to  tr(A_i X) = b_i, X >= 0.

Inequality problems are stored block-diagonally. Each block keeps only the
variables whose F_i is nonzero on it, so problems with thousands of variables
and a 256-dim LMI never materialize the dense (m, d, d) stack.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import InvalidInputError

logger = structlog.get_logger(__name__)

SYMMETRY_TOL = 1e-14


class SolverStatus(str, Enum):
    OPTIMAL = "optimal"
    MAX_ITER = "max_iter"
    INFEASIBLE_CERTIFICATE = "infeasible_certificate"
    # standard form whose inequality dual was certified infeasible
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LmiBlock:
    """One diagonal block of the LMI.

    Attributes:
        indices: Variables active on this block, ascending.
        F: Stack of shape (len(indices), d_b, d_b).
        G: Constant part, shape (d_b, d_b).
    """

    indices: NDArray[np.int64]
    F: NDArray[np.float64]
    G: NDArray[np.float64]

    @property
    def size(self) -> int:
        return int(self.G.shape[0])

    def evaluate(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        """G + sum_i x_i F_i restricted to the block."""
        if len(self.indices) == 0:
            return self.G.copy()
        return self.G + np.tensordot(x[self.indices], self.F, axes=1)

    def adjoint(self, z: NDArray[np.float64], m: int) -> NDArray[np.float64]:
        """(tr(F_i Z))_i as a length-m vector."""
        out = np.zeros(m)
        if len(self.indices):
            out[self.indices] = np.einsum("kij,ij->k", self.F, z)
        return out


@dataclass(frozen=True)
class SdpInequality:
    """minimize c^T x subject to a block-diagonal LMI."""

    c: NDArray[np.float64]
    blocks: tuple[LmiBlock, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        c = np.asarray(self.c, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "c", c)
        for block in self.blocks:
            if block.F.shape[1:] != block.G.shape or block.F.shape[0] != len(block.indices):
                raise InvalidInputError("LMI block has inconsistent shapes")
            if np.any(block.indices >= len(c)):
                raise InvalidInputError("LMI block refers to a variable beyond len(c)")
            scale = max(1.0, float(np.max(np.abs(block.G), initial=0.0)))
            if np.max(np.abs(block.G - block.G.T), initial=0.0) > SYMMETRY_TOL * scale:
                raise InvalidInputError("G is not symmetric")
            if len(block.indices) and np.max(
                np.abs(block.F - block.F.transpose(0, 2, 1))
            ) > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(block.F)))):
                raise InvalidInputError("some F_i is not symmetric")

    @property
    def m(self) -> int:
        return int(len(self.c))

    @property
    def side(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def block_sizes(self) -> list[int]:
        return [b.size for b in self.blocks]

    @classmethod
    def from_dense(
        cls,
        c: NDArray[np.float64],
        F: NDArray[np.float64] | list[NDArray[np.float64]],
        G: NDArray[np.float64],
        labels: tuple[str, ...] = (),
    ) -> "SdpInequality":
        """Split a dense problem into the connected components of its joint sparsity."""
        G = np.asarray(G, dtype=np.float64)
        d = G.shape[0]
        stack = np.asarray(F, dtype=np.float64).reshape(-1, d, d)
        if stack.shape[0] != len(np.asarray(c).reshape(-1)):
            raise InvalidInputError(f"{stack.shape[0]} matrices F_i but len(c) = {len(c)}")
        pattern = (np.abs(G) > 0) | np.any(np.abs(stack) > 0, axis=0)
        blocks = []
        for members in sparsity_blocks(pattern):
            sub = stack[:, members][:, :, members]
            active = np.flatnonzero(np.any(np.abs(sub) > 0, axis=(1, 2)))
            blocks.append(LmiBlock(active, sub[active], G[np.ix_(members, members)]))
        return cls(np.asarray(c, dtype=np.float64), tuple(blocks), labels)

    def dense(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """(F stack, G) with blocks placed along the diagonal."""
        d = self.side
        F = np.zeros((self.m, d, d))
        G = np.zeros((d, d))
        offset = 0
        for b in self.blocks:
            s = slice(offset, offset + b.size)
            G[s, s] = b.G
            F[b.indices, s, s] = b.F
            offset += b.size
        return F, G

    def evaluate(self, x: NDArray[np.float64]) -> list[NDArray[np.float64]]:
        return [b.evaluate(x) for b in self.blocks]

    def scaled(self, factor: float) -> "SdpInequality":
        """Problem with (G, F_i) multiplied by factor."""
        return SdpInequality(
            self.c,
            tuple(LmiBlock(b.indices, b.F * factor, b.G * factor) for b in self.blocks),
            self.labels,
        )

    def to_model(self) -> Any:
        """Problem dump as a pydantic model."""
        from ..models import ProblemDump

        return ProblemDump(
            m=self.m,
            side=self.side,
            block_sizes=self.block_sizes,
            labels=list(self.labels),
            c=self.c.tolist(),
        )


def sparsity_blocks(pattern: NDArray[np.bool_]) -> list[NDArray[np.int64]]:
    """Index sets of the connected components of a symmetric sparsity pattern."""
    count, labels = connected_components(csr_matrix(pattern | pattern.T), directed=False)
    return [np.flatnonzero(labels == k) for k in range(count)]


@dataclass(frozen=True)
class SdpStandard:
    """minimize tr(C X) subject to tr(A_i X) = b_i and X >= 0."""

    C: NDArray[np.float64]
    A: NDArray[np.float64]
    b: NDArray[np.float64]

    def __post_init__(self) -> None:
        C = np.asarray(self.C, dtype=np.float64)
        d = C.shape[0]
        A = np.asarray(self.A, dtype=np.float64).reshape(-1, d, d)
        b = np.asarray(self.b, dtype=np.float64).reshape(-1)
        if A.shape[0] != len(b):
            raise InvalidInputError(f"{A.shape[0]} constraints but len(b) = {len(b)}")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def p(self) -> int:
        return int(len(self.b))

    def as_inequality(self) -> SdpInequality:
        """The dual problem in inequality form: c = -b, G = C, F_i = -A_i."""
        return SdpInequality.from_dense(-self.b, -self.A, self.C)


@dataclass
class SdpSolution:
    """Result of an interior-point solve.

    For inequality problems X holds the slack blocks F(x) and Z the dual
    blocks; for standard problems X is the primal matrix, Z the dual slack
    C - sum y_i A_i, and x the multipliers y.
    """

    x: NDArray[np.float64]
    X: list[NDArray[np.float64]]
    Z: list[NDArray[np.float64]]
    primal_obj: float
    dual_obj: float
    status: SolverStatus
    iterations: int
    primal_residual: float = 0.0
    dual_residual: float = 0.0

    @property
    def gap(self) -> float:
        return float(sum(np.vdot(x, z) for x, z in zip(self.X, self.Z, strict=True)))

    @property
    def optimal(self) -> bool:
        return self.status is SolverStatus.OPTIMAL

    def to_model(self) -> Any:
        """Diagnostics as a pydantic model."""
        from ..models import SolutionDiagnostics

        return SolutionDiagnostics(
            status=self.status.name,
            iterations=self.iterations,
            primal_obj=self.primal_obj,
            dual_obj=self.dual_obj,
            gap=self.gap,
            primal_residual=self.primal_residual,
            dual_residual=self.dual_residual,
            min_eig_primal=min((float(np.linalg.eigvalsh(b)[0]) for b in self.X), default=0.0),
            min_eig_dual=min((float(np.linalg.eigvalsh(b)[0]) for b in self.Z), default=0.0),
        )


# =============================================================================
# Generators
# =============================================================================


def _random_symmetric(rng: np.random.Generator, d: int) -> NDArray[np.float64]:
    a = rng.standard_normal((d, d))
    return (a + a.T) / 2


def random_feasible_problem(d: int, m: int, rng: np.random.Generator) -> SdpInequality:
    """Problem with known strictly feasible primal and dual points.

    A primal interior point x0 with F(x0) = S0 > 0 fixes G; a dual interior
    point Z0 > 0 fixes c_i = tr(F_i Z0). Both being strictly feasible, the
    optimum is attained with zero duality gap.
    """
    if m > d * (d + 1) // 2:
        raise InvalidInputError(f"m = {m} exceeds the dimension of {d}x{d} symmetric matrices")
    F = np.array([_random_symmetric(rng, d) for _ in range(m)]).reshape(m, d, d)
    x0 = rng.standard_normal(m)
    a = rng.standard_normal((d, d))
    s0 = a @ a.T + np.eye(d)
    b = rng.standard_normal((d, d))
    z0 = b @ b.T + np.eye(d)
    G = s0 - np.tensordot(x0, F, axes=1)
    c = np.einsum("kij,ij->k", F, z0)
    return SdpInequality.from_dense(c, F, (G + G.T) / 2)
