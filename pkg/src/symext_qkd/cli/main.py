"""
symext-qkd command line.

    symext-qkd tables --k 3 --n 4 5 6 --jobs 4 --out k3.csv
    symext-qkd threshold --protocol six-state --blocksize 8
    symext-qkd statespace --out curves.csv
    symext-qkd decide --input state.json --method analytic --format json
    symext-qkd enumerate --k 3 --n 6

Logs go to stderr; results go to --out or stdout.
"""

import argparse
import logging
import sys
from pathlib import Path

import structlog

from .. import __version__
from ..config import config
from ..errors import SymextError
from ..models import OutputMetadata
from .commands import (
    CommandResult,
    cmd_decide,
    cmd_enumerate,
    cmd_reproduce_tables,
    cmd_statespace_csv,
    cmd_threshold,
)
from .config import COMMANDS, FORMATS, METHODS, RunConfig
from .output import emit, render_csv, render_json

logger = structlog.get_logger(__name__)


def configure_logging(log_format: str | None = None, level: str | None = None) -> None:
    """Route structlog output to stderr."""
    log_format = config.log_format if log_format is None else log_format
    level_name = (config.log_level if level is None else level).upper()
    renderer = (
        structlog.processors.JSONRenderer()
        if log_format == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            (
                logging.getLevelNamesMapping()
                if hasattr(logging, "getLevelNamesMapping")
                else dict(logging._nameToLevel)  # Python 3.10 fallback
            ).get(level_name, logging.INFO)
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symext-qkd",
        description="Symmetric-extension deciders and advantage-distillation thresholds",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-format", choices=["console", "json"], default=None)
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None, help="Output file (default stdout)")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--seed", type=int, default=config.seed)
    common.add_argument("--tol", type=float, default=None, help="SDP tolerance override")

    sub = parser.add_subparsers(dest="command", required=True, metavar="{" + ",".join(COMMANDS) + "}")

    tables = sub.add_parser("tables", parents=[common], help="Reproduce min-t tables")
    tables.add_argument("--k", type=int, required=True)
    tables.add_argument("--n", type=int, nargs="+", required=True)
    tables.add_argument("--jobs", type=int, default=config.jobs)

    threshold = sub.add_parser("threshold", parents=[common], help="QBER thresholds")
    threshold.add_argument("--protocol", default="six-state", help="six-state or bb84")
    threshold.add_argument("--blocksize", type=int, default=None)

    sub.add_parser("statespace", parents=[common], help="State-space curves as CSV")

    decide = sub.add_parser("decide", parents=[common], help="Decide one state or channel")
    decide.add_argument("--input", type=Path, required=True)
    decide.add_argument("--method", choices=METHODS, default="analytic")

    enumerate_ = sub.add_parser("enumerate", parents=[common], help="Parity matrix classes")
    enumerate_.add_argument("--k", type=int, required=True)
    enumerate_.add_argument("--n", type=int, nargs="+", required=True)
    enumerate_.add_argument("--irreducible-only", action="store_true")
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        k=getattr(args, "k", None),
        n=list(getattr(args, "n", None) or []),
        protocol=getattr(args, "protocol", "six-state"),
        blocksize=getattr(args, "blocksize", None),
        input=getattr(args, "input", None),
        method=getattr(args, "method", "analytic"),
        out=args.out,
        format=args.format,
        jobs=getattr(args, "jobs", 1),
        seed=args.seed,
        tol=args.tol,
        irreducible_only=getattr(args, "irreducible_only", False),
    ).validate()


def dispatch(run: RunConfig) -> CommandResult:
    if run.command == "tables":
        return cmd_reproduce_tables(run.k or 0, run.n, run.jobs)
    if run.command == "threshold":
        return cmd_threshold(run.protocol, run.blocksize)
    if run.command == "statespace":
        return cmd_statespace_csv()
    if run.command == "decide":
        assert run.input is not None
        return cmd_decide(run.input, run.method)
    return cmd_enumerate(run.k or 0, run.n, run.irreducible_only)


def execute(run: RunConfig) -> str:
    """Run a validated configuration and render its output."""
    previous = config.sdp_tol
    if run.tol is not None:
        config.sdp_tol = run.tol
    try:
        result = dispatch(run)
        tolerances = config.tolerances()
    finally:
        config.sdp_tol = previous
    metadata = OutputMetadata(
        command=run.command,
        seed=run.seed,
        tolerances=tolerances,
        parameters={**run.parameters(), **result.notes},
    )
    if run.format == "json":
        return render_json(result.json_payload(), metadata)
    return render_csv(result.records, metadata, result.digits)


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_format, args.log_level)
    try:
        run = run_config(args)
        emit(execute(run), run.out)
    except SymextError as e:
        logger.error("command_failed", command=args.command, error=str(e), kind=type(e).__name__)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
