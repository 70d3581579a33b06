"""
Command implementations.

Each command returns a CommandResult: flat records for CSV and a structured
payload for JSON. Records are ordered deterministically.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import structlog

from ..bell.distribution import from_density_matrix, normalize, to_density_matrix
from ..bell.statespace import curves
from ..bell.thresholds import Protocol, threshold_p, threshold_qber, thresholds, two_way_threshold_bisect
from ..codes.equivalence import enumerate_classes, header_labels, row_label
from ..decide.bell_diagonal import decide_bell_diag
from ..decide.channels import decide_bipartite, is_antidegradable, is_degradable
from ..decide.models import Decision
from ..decide.two_qubit import decide_conjecture
from ..errors import InvalidInputError, UndecidedError
from ..models import (
    BellDiagonalModel,
    ChannelModel,
    DecisionModel,
    DensityMatrixModel,
    parse_decide_input,
)
from ..symext.builder import SymmetryMode, decide_sdp
from ..symext.tables import PUBLISHED_CLASS_COUNTS, reproduce_table
from .output import Record

logger = structlog.get_logger(__name__)


@dataclass
class CommandResult:
    records: list[Record]
    payload: Any = None
    digits: int = 6
    notes: dict[str, Any] = field(default_factory=dict)

    def json_payload(self) -> Any:
        return self.records if self.payload is None else self.payload


# =============================================================================
# tables
# =============================================================================


def cmd_reproduce_tables(k: int, n_range: list[int], jobs: int = 1) -> CommandResult:
    """One row per equivalence class, sorted by increasing t within each n.

    The header notes each class count next to the published one where they differ.
    """
    records: list[Record] = []
    payload: list[dict[str, Any]] = []
    notes: dict[str, Any] = {}
    for n in n_range:
        rows = reproduce_table(k, n, jobs)
        published = PUBLISHED_CLASS_COUNTS.get((k, n))
        notes[f"classes_n{n}"] = (
            f"{len(rows)} (published {published})" if published not in (None, len(rows)) else str(len(rows))
        )
        for row in rows:
            records.append({"n": n, **row.as_record(k)})
            payload.append(
                {
                    "n": n,
                    "label": dict(zip(header_labels(k), row.label, strict=True)),
                    "rows": row.parity.row_strings(),
                    "t": row.t,
                    "diagnostics": row.diagnostics,
                }
            )
    return CommandResult(records, payload, notes=notes)


# =============================================================================
# threshold
# =============================================================================


def cmd_threshold(protocol: str, blocksize: int | None = None) -> CommandResult:
    """Closed-form two-way threshold with its bisection check, plus finite blocksizes 1..blocksize."""
    protocol_ = Protocol(protocol)
    closed = thresholds()
    closed_form = (
        closed.six_state_two_way if protocol_ is Protocol.SIX_STATE else closed.bb84_two_way
    )
    base: Record = {
        "protocol": protocol_.value,
        "closed_form": closed_form,
        "bisected": two_way_threshold_bisect(protocol_),
    }
    if protocol_ is Protocol.SIX_STATE:
        base["symext_oneway"] = closed.six_state_symext_oneway
    if blocksize is None:
        return CommandResult([base], digits=12)
    records: list[Record] = []
    for n in range(1, blocksize + 1):
        p = threshold_p(n) if protocol_ is Protocol.SIX_STATE else None
        qber = 2.0 * p if p is not None else threshold_qber(n, protocol_)
        records.append({**base, "n": n, "p_threshold": p, "qber_threshold": qber})
        logger.info("threshold_computed", protocol=protocol_.value, n=n, qber=qber)
    return CommandResult(records, digits=12)


# =============================================================================
# statespace
# =============================================================================


def cmd_statespace_csv(samples: int = 200) -> CommandResult:
    """(alpha1, alpha2) points of every state-space curve."""
    records: list[Record] = []
    for name, points in curves(samples=samples).items():
        for index, (a1, a2) in enumerate(points):
            records.append({"curve": name, "index": index, "alpha1": float(a1), "alpha2": float(a2)})
    return CommandResult(records, digits=9)


# =============================================================================
# decide
# =============================================================================


def _decide_analytic(model: DensityMatrixModel | BellDiagonalModel | ChannelModel) -> Decision:
    if isinstance(model, BellDiagonalModel):
        state = model.to_domain()
        if state.pairs != 1:
            raise InvalidInputError(
                f"the analytic route takes single-pair states, got {state.pairs} pairs; use --method sdp"
            )
        return decide_bell_diag(normalize(state))
    if isinstance(model, ChannelModel):
        return is_antidegradable(model.to_domain())
    return decide_bipartite(model.to_domain())


def _decide_conjecture(model: DensityMatrixModel | BellDiagonalModel | ChannelModel) -> Decision:
    if isinstance(model, ChannelModel):
        raise InvalidInputError("the conjecture route takes states, not channels")
    if isinstance(model, BellDiagonalModel):
        return decide_conjecture(to_density_matrix(normalize(model.to_domain())))
    return decide_conjecture(model.to_domain())


def _decide_sdp(model: DensityMatrixModel | BellDiagonalModel | ChannelModel) -> Decision:
    if isinstance(model, ChannelModel):
        raise InvalidInputError("the SDP route takes Bell-diagonal states, not channels")
    if isinstance(model, BellDiagonalModel):
        state = normalize(model.to_domain())
    else:
        rho = model.to_domain()
        if rho.dims != (2, 2):
            raise InvalidInputError(f"the SDP route takes two-qubit or Bell-diagonal input, got dims {rho.dims}")
        state = from_density_matrix(rho.normalized())
    return decide_sdp(state, SymmetryMode.GENERIC)


def _decide_channel(model: DensityMatrixModel | BellDiagonalModel | ChannelModel) -> Decision:
    if not isinstance(model, ChannelModel):
        raise InvalidInputError(f"the channel route takes a channel, got {model.type}")
    channel = model.to_domain()
    anti = is_antidegradable(channel)
    try:
        degradable = is_degradable(channel).verdict.value
    except UndecidedError as e:
        degradable = f"UNDECIDED: {e}"
    return Decision(anti.verdict, anti.margin, anti.rule, {**anti.details, "degradable": degradable})


ROUTES = {
    "analytic": _decide_analytic,
    "conjecture": _decide_conjecture,
    "sdp": _decide_sdp,
    "channel": _decide_channel,
}


def cmd_decide(path: Path, method: str) -> CommandResult:
    """Decision for the state or channel in a JSON file.

    Raises:
        InvalidInputError: unreadable input or input the method does not take.
        UndecidedError: no proven decider covers the input.
    """
    try:
        model = parse_decide_input(path.read_text(encoding="utf-8"))
    except ValueError as e:
        raise InvalidInputError(f"cannot parse {path}: {e}") from e
    decision = ROUTES[method](model)
    logger.info("decided", method=method, verdict=decision.verdict.value, rule=decision.rule)
    result = DecisionModel.from_decision(decision)
    record: Record = {"verdict": result.verdict, "margin": result.margin, "rule": result.rule}
    record.update({key: value for key, value in sorted(result.details.items())})
    return CommandResult([record], result.model_dump(), digits=12)


# =============================================================================
# enumerate
# =============================================================================


def cmd_enumerate(k: int, n_range: list[int], irreducible_only: bool = False) -> CommandResult:
    """Canonical class representatives with their row-multiset labels."""
    records: list[Record] = []
    for n in n_range:
        for P in enumerate_classes(n, k, irreducible_only):
            label = dict(zip(header_labels(k), row_label(P), strict=True))
            records.append(
                {"n": n, **{name: (c or "") for name, c in label.items()}, "rows": " ".join(P.row_strings())}
            )
    return CommandResult(records)
