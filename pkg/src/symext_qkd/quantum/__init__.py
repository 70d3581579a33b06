"""Dense finite-dimensional quantum-state primitives."""

from .channels import (
    QuantumChannel,
    apply_to_output,
    channel_from_choi,
    choi_state,
    complementary_channel,
    compose,
    dephasing_channel,
    depolarizing_channel,
    environment_rank,
    minimal_kraus,
    pauli_channel,
)
from .paulis import BELL_VECTORS, PAULIS, bell_projector, kron_all, pauli_string
from .states import (
    DensityMatrix,
    PureState,
    RMatrix,
    eigh_desc,
    from_r_matrix,
    partial_trace,
    purify,
    r_matrix,
    spectrum,
    swap_defect,
    swap_last_two,
    swap_vector,
    symmetrize_swap,
)

__all__ = [
    "BELL_VECTORS",
    "PAULIS",
    "DensityMatrix",
    "PureState",
    "QuantumChannel",
    "RMatrix",
    "apply_to_output",
    "bell_projector",
    "channel_from_choi",
    "choi_state",
    "complementary_channel",
    "compose",
    "dephasing_channel",
    "depolarizing_channel",
    "eigh_desc",
    "environment_rank",
    "from_r_matrix",
    "kron_all",
    "minimal_kraus",
    "partial_trace",
    "pauli_channel",
    "pauli_string",
    "purify",
    "r_matrix",
    "spectrum",
    "swap_defect",
    "swap_last_two",
    "swap_vector",
    "symmetrize_swap",
]
