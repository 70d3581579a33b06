"""
Error taxonomy for symext-qkd.

Each error carries the process exit code the CLI maps it to.
"""


class SymextError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidInputError(SymextError, ValueError):
    """A precondition on an input value or shape is violated."""

    exit_code = 2


class SymmetryModeError(InvalidInputError):
    """The requested symmetry reduction does not match the state."""


class ZeroAcceptanceError(InvalidInputError):
    """An announcement that no error string of the state passes."""


class SolverError(SymextError, RuntimeError):
    """Numerical breakdown or non-convergence."""

    exit_code = 3


class ConvergenceError(SolverError):
    """A fixed-point iteration did not reach its tolerance.

    Attributes:
        iterations: Iterations performed.
        residual: Residual of the last iterate.
    """

    def __init__(self, message: str, iterations: int, residual: float) -> None:
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class UndecidedError(SymextError):
    """No implemented decider covers the given state."""

    exit_code = 4
