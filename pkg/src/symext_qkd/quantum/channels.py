"""
Quantum channels in Kraus form.

Choi states, complementary channels and minimal Kraus representations.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..config import config
from ..errors import InvalidInputError
from .paulis import PAULIS, ComplexMatrix
from .states import ZERO_EIGENVALUE, DensityMatrix, eigh_desc


@dataclass(frozen=True)
class QuantumChannel:
    """Completely positive trace-preserving map given by Kraus operators."""

    kraus_ops: tuple[ComplexMatrix, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.kraus_ops)
        if not ops:
            raise InvalidInputError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(k.shape != shape for k in ops) or len(shape) != 2:
            raise InvalidInputError(
                f"Kraus operators disagree in shape: {[k.shape for k in ops]}"
            )
        completeness = sum(k.conj().T @ k for k in ops)
        defect = float(np.max(np.abs(completeness - np.eye(shape[1]))))
        if defect > config.trace_tol:
            raise InvalidInputError(f"Kraus operators are not trace preserving (defect {defect:.3e})")
        object.__setattr__(self, "kraus_ops", ops)

    @property
    def input_dim(self) -> int:
        return int(self.kraus_ops[0].shape[1])

    @property
    def output_dim(self) -> int:
        return int(self.kraus_ops[0].shape[0])

    def apply(self, operator: NDArray[np.complex128]) -> ComplexMatrix:
        """N(operator) for any input-sized matrix."""
        return np.asarray(sum(k @ operator @ k.conj().T for k in self.kraus_ops))


def choi_state(channel: QuantumChannel) -> DensityMatrix:
    """(1/d) sum_ij |i><j| (x) N(|i><j|), the first subsystem maximally mixed."""
    d = channel.input_dim
    omega = np.eye(d, dtype=np.complex128).reshape(-1) / np.sqrt(d)
    entries = np.zeros((d * channel.output_dim,) * 2, dtype=np.complex128)
    for k in channel.kraus_ops:
        v = np.kron(np.eye(d), k) @ omega
        entries += np.outer(v, v.conj())
    return DensityMatrix((d, channel.output_dim), entries, 1.0)


def channel_from_choi(choi: DensityMatrix) -> QuantumChannel:
    """Canonical Kraus operators from the eigenvectors of a Choi state."""
    d_in, d_out = choi.dims
    values, vectors = eigh_desc(choi.entries)
    ops = []
    for value, vector in zip(values, vectors.T, strict=True):
        if value <= ZERO_EIGENVALUE:
            continue
        ops.append(np.sqrt(value * d_in) * vector.reshape(d_in, d_out).T)
    return QuantumChannel(tuple(ops))


def minimal_kraus(channel: QuantumChannel) -> QuantumChannel:
    """Equivalent channel with rank(Choi) orthogonal Kraus operators."""
    return channel_from_choi(choi_state(channel))


def environment_rank(channel: QuantumChannel) -> int:
    """Minimal environment dimension, the rank of the Choi state."""
    values = np.linalg.eigvalsh(choi_state(channel).entries)
    return int(np.sum(values > ZERO_EIGENVALUE))


def complementary_channel(channel: QuantumChannel) -> QuantumChannel:
    """Channel to the environment of a minimal Stinespring dilation.

    K^C_l = sum_m |m><l| K_m, with m running over the minimal Kraus set.
    """
    ops = minimal_kraus(channel).kraus_ops
    env = len(ops)
    stacked = np.stack(ops)  # (m, out, in)
    comp = tuple(np.asarray(stacked[:, l, :]).reshape(env, -1) for l in range(channel.output_dim))
    return QuantumChannel(comp)


def compose(outer: QuantumChannel, inner: QuantumChannel) -> QuantumChannel:
    """outer o inner."""
    if outer.input_dim != inner.output_dim:
        raise InvalidInputError(
            f"cannot compose: outer input {outer.input_dim} != inner output {inner.output_dim}"
        )
    return QuantumChannel(tuple(a @ b for a in outer.kraus_ops for b in inner.kraus_ops))


def apply_to_output(choi: DensityMatrix, channel: QuantumChannel) -> DensityMatrix:
    """(1 (x) D) applied to a bipartite operator on input (x) output."""
    d_in = choi.dims[0]
    entries = sum(
        np.kron(np.eye(d_in), k) @ choi.entries @ np.kron(np.eye(d_in), k).conj().T
        for k in channel.kraus_ops
    )
    return DensityMatrix((d_in, channel.output_dim), np.asarray(entries), choi.declared_trace)


# =============================================================================
# Qubit channel families
# =============================================================================


def pauli_channel(p_x: float, p_y: float, p_z: float) -> QuantumChannel:
    """rho -> (1 - p_x - p_y - p_z) rho + p_x X rho X + p_y Y rho Y + p_z Z rho Z."""
    weights = (1.0 - p_x - p_y - p_z, p_x, p_y, p_z)
    if min(weights) < 0.0:
        raise InvalidInputError(f"Pauli channel weights {weights} are not a distribution")
    return QuantumChannel(
        tuple(np.sqrt(w) * PAULIS[i] for i, w in enumerate(weights) if w > 0.0)
    )


def dephasing_channel(q: float) -> QuantumChannel:
    """Phase flip with probability q."""
    return pauli_channel(0.0, 0.0, q)


def depolarizing_channel(p: float) -> QuantumChannel:
    """rho -> (1 - p) rho + p 1/2; p = 1 is fully depolarizing."""
    if not 0.0 <= p <= 4.0 / 3.0:
        raise InvalidInputError(f"depolarizing parameter {p} outside [0, 4/3]")
    return pauli_channel(p / 4, p / 4, p / 4)
