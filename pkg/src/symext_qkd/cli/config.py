"""
Validated run configuration for one CLI invocation.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..bell.lad import MAX_PAIRS
from ..bell.thresholds import Protocol
from ..errors import InvalidInputError
from ..symext.tables import SUPPORTED_K

COMMANDS = ("tables", "threshold", "statespace", "decide", "enumerate")
METHODS = ("analytic", "conjecture", "sdp", "channel")
FORMATS = ("csv", "json")


@dataclass
class RunConfig:
    """Everything a command needs, checked before dispatch.

    Attributes:
        command: One of COMMANDS.
        k: Kept pairs for tables and enumeration.
        n: Blocksizes; tables run once per entry.
        protocol: QKD protocol for thresholds.
        blocksize: Optional finite blocksize for thresholds.
        input: Decide input file.
        method: Decide route.
        out: Output file, stdout when None.
        format: "csv" or "json".
        jobs: Worker processes for table rows.
        seed: Recorded in metadata.
        tol: Overrides the SDP tolerance.
        irreducible_only: Enumeration keeps irreducible classes only.
    """

    command: str
    k: int | None = None
    n: list[int] = field(default_factory=list)
    protocol: str = Protocol.SIX_STATE.value
    blocksize: int | None = None
    input: Path | None = None
    method: str = "analytic"
    out: Path | None = None
    format: str = "csv"
    jobs: int = 1
    seed: int = 0
    tol: float | None = None
    irreducible_only: bool = False

    def validate(self) -> "RunConfig":
        """Return self, raising InvalidInputError on the first bad field."""
        if self.command not in COMMANDS:
            raise InvalidInputError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise InvalidInputError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.jobs < 1:
            raise InvalidInputError(f"jobs must be positive, got {self.jobs}")
        if self.tol is not None and not 0.0 < self.tol < 1.0:
            raise InvalidInputError(f"tol must lie in (0, 1), got {self.tol}")
        if self.command == "tables":
            if self.k not in SUPPORTED_K:
                raise InvalidInputError(f"tables need --k in {SUPPORTED_K}, got {self.k}")
            self._check_blocksizes()
        elif self.command == "enumerate":
            if self.k is None or self.k < 1:
                raise InvalidInputError(f"enumerate needs a positive --k, got {self.k}")
            self._check_blocksizes()
        elif self.command == "threshold":
            try:
                Protocol(self.protocol)
            except ValueError as e:
                raise InvalidInputError(f"unknown protocol {self.protocol!r}") from e
            if self.blocksize is not None and self.blocksize < 1:
                raise InvalidInputError(f"blocksize must be at least 1, got {self.blocksize}")
        elif self.command == "decide":
            if self.method not in METHODS:
                raise InvalidInputError(f"method must be one of {METHODS}, got {self.method!r}")
            if self.input is None:
                raise InvalidInputError("decide needs --input")
            if not self.input.is_file():
                raise InvalidInputError(f"input file {self.input} does not exist")
        return self

    def _check_blocksizes(self) -> None:
        if not self.n:
            raise InvalidInputError(f"{self.command} needs at least one --n")
        for n in self.n:
            if not (self.k or 0) < n <= MAX_PAIRS:
                raise InvalidInputError(f"need k < n <= {MAX_PAIRS}, got k={self.k}, n={n}")

    def parameters(self) -> dict[str, Any]:
        """Command parameters recorded in the output header."""
        params: dict[str, Any] = {}
        if self.command in ("tables", "enumerate"):
            params["k"] = self.k
            params["n"] = ",".join(str(n) for n in self.n)
        if self.command == "enumerate":
            params["irreducible_only"] = self.irreducible_only
        if self.command == "threshold":
            params["protocol"] = self.protocol
            params["blocksize"] = self.blocksize
        if self.command == "decide":
            params["method"] = self.method
            params["input"] = self.input.name if self.input else None
        return params
