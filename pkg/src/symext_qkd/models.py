"""Pydantic models for the JSON formats read and written by symext-qkd."""

from typing import Annotated, Any, Literal

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, model_validator

from . import __version__
from .bell.distribution import BellDiagonalDistribution
from .config import config
from .decide.models import Decision
from .quantum.channels import (
    QuantumChannel,
    dephasing_channel,
    depolarizing_channel,
    pauli_channel,
)
from .quantum.states import DensityMatrix

# =============================================================================
# Inputs
# =============================================================================


class ComplexMatrixModel(BaseModel):
    """Row-major real and imaginary parts."""

    re: list[list[float]]
    im: list[list[float]] | None = None

    @model_validator(mode="after")
    def _shapes_agree(self) -> "ComplexMatrixModel":
        if self.im is not None and np.shape(self.im) != np.shape(self.re):
            raise ValueError(f"im shape {np.shape(self.im)} differs from re shape {np.shape(self.re)}")
        return self

    def to_array(self) -> np.ndarray:
        re = np.asarray(self.re, dtype=np.float64)
        im = np.zeros_like(re) if self.im is None else np.asarray(self.im, dtype=np.float64)
        return re + 1j * im

    @classmethod
    def from_array(cls, matrix: np.ndarray) -> "ComplexMatrixModel":
        matrix = np.asarray(matrix, dtype=np.complex128)
        im = matrix.imag.tolist() if np.any(matrix.imag) else None
        return cls(re=matrix.real.tolist(), im=im)


class DensityMatrixModel(ComplexMatrixModel):
    """{"type": "density_matrix", "dims": [...], "re": [[...]], "im": [[...]]}."""

    type: Literal["density_matrix"] = "density_matrix"
    dims: list[int] = Field(min_length=1)

    def to_domain(self) -> DensityMatrix:
        return DensityMatrix(tuple(self.dims), self.to_array())

    @classmethod
    def from_domain(cls, rho: DensityMatrix) -> "DensityMatrixModel":
        base = ComplexMatrixModel.from_array(rho.entries)
        return cls(dims=list(rho.dims), re=base.re, im=base.im)


class BellDiagonalModel(BaseModel):
    """{"type": "bell_diagonal", "pairs": N, "weights": [...], "total": t}."""

    type: Literal["bell_diagonal"] = "bell_diagonal"
    pairs: int = Field(ge=1, le=12)
    weights: list[float]
    total: float | None = Field(default=None, gt=0.0, le=1.0 + 1e-12)

    @model_validator(mode="after")
    def _total_matches(self) -> "BellDiagonalModel":
        if len(self.weights) != 4**self.pairs:
            raise ValueError(f"{len(self.weights)} weights for {self.pairs} pairs (need 4^N)")
        if self.total is not None and abs(sum(self.weights) - self.total) > config.trace_tol:
            raise ValueError(f"weights sum to {sum(self.weights)}, declared total {self.total}")
        return self

    def to_domain(self) -> BellDiagonalDistribution:
        return BellDiagonalDistribution(self.pairs, np.asarray(self.weights, dtype=np.float64))

    @classmethod
    def from_domain(cls, state: BellDiagonalDistribution) -> "BellDiagonalModel":
        return cls(pairs=state.pairs, weights=state.weights.tolist(), total=state.total)


class ChannelModel(BaseModel):
    """Kraus operators, or a named qubit family with its parameter."""

    type: Literal["channel"] = "channel"
    kraus: list[ComplexMatrixModel] | None = None
    family: Literal["dephasing", "depolarizing", "pauli"] | None = None
    q: float | None = Field(default=None, ge=0.0)
    probabilities: list[float] | None = Field(default=None, min_length=3, max_length=3)

    @model_validator(mode="after")
    def _one_description(self) -> "ChannelModel":
        if (self.kraus is None) == (self.family is None):
            raise ValueError("give exactly one of 'kraus' and 'family'")
        if self.family == "pauli" and self.probabilities is None:
            raise ValueError("the pauli family needs 'probabilities' [p_x, p_y, p_z]")
        if self.family in ("dephasing", "depolarizing") and self.q is None:
            raise ValueError(f"the {self.family} family needs 'q'")
        return self

    def to_domain(self) -> QuantumChannel:
        if self.kraus is not None:
            return QuantumChannel(tuple(k.to_array() for k in self.kraus))
        if self.family == "dephasing":
            return dephasing_channel(float(self.q or 0.0))
        if self.family == "depolarizing":
            return depolarizing_channel(float(self.q or 0.0))
        p_x, p_y, p_z = self.probabilities or (0.0, 0.0, 0.0)
        return pauli_channel(p_x, p_y, p_z)


DecideInput = Annotated[
    DensityMatrixModel | BellDiagonalModel | ChannelModel, Field(discriminator="type")
]

decide_input_adapter: TypeAdapter[Any] = TypeAdapter(DecideInput)


def parse_decide_input(text: str) -> DensityMatrixModel | BellDiagonalModel | ChannelModel:
    """Validate a JSON document against the decide input union."""
    return decide_input_adapter.validate_json(text)  # type: ignore[no-any-return]


# =============================================================================
# Outputs
# =============================================================================


class DecisionModel(BaseModel):
    """Decision serialized with its provenance."""

    verdict: Literal["YES", "NO", "CONJECTURED_YES", "CONJECTURED_NO"]
    margin: float
    rule: str
    details: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_decision(cls, decision: Decision) -> "DecisionModel":
        return cls(
            verdict=decision.verdict.value,
            margin=decision.margin,
            rule=decision.rule,
            details=dict(decision.details),
        )


class WitnessExport(BaseModel):
    variant: Literal["m4_diag", "m4_equal_angle", "m5_iterative"]
    angles: list[float] = Field(min_length=3, max_length=3)
    block: list[list[float]]
    auxiliary: dict[str, float] = Field(default_factory=dict)
    psd: bool
    residuals: dict[str, float] = Field(default_factory=dict)


class SolutionDiagnostics(BaseModel):
    """Summary of an interior-point solve."""

    status: Literal["OPTIMAL", "MAX_ITER", "INFEASIBLE_CERTIFICATE", "UNBOUNDED"]
    iterations: int = Field(ge=0)
    primal_obj: float
    dual_obj: float
    gap: float
    primal_residual: float = Field(ge=0.0)
    dual_residual: float = Field(ge=0.0)
    min_eig_primal: float
    min_eig_dual: float


class ProblemDump(BaseModel):
    """Shape and objective of an inequality-form problem."""

    m: int = Field(ge=0)
    side: int = Field(ge=0)
    block_sizes: list[int]
    labels: list[str] = Field(default_factory=list)
    c: list[float]


class OutputMetadata(BaseModel):
    """Header written in front of every output file.

    Holds no timestamps so identical runs produce identical files.
    """

    command: str
    version: str = __version__
    seed: int = 0
    tolerances: dict[str, float] = Field(default_factory=config.tolerances)
    parameters: dict[str, Any] = Field(default_factory=dict)

    def header_lines(self) -> list[str]:
        lines = [f"# command: {self.command}", f"# version: {self.version}", f"# seed: {self.seed}"]
        lines += [f"# {name}: {value:g}" for name, value in sorted(self.tolerances.items())]
        lines += [f"# {name}: {value}" for name, value in sorted(self.parameters.items())]
        return lines
