"""Configuration management for symext-qkd.

Numerical tolerances and run defaults, overridable through SYMEXT_* environment
variables.
"""

import os
from dataclasses import dataclass


@dataclass
class SymextConfig:
    """Tolerance ladder and run defaults shared by every module."""

    # Structural tolerances on dense matrices
    hermitian_tol: float = 1e-12
    psd_tol: float = 1e-10
    trace_tol: float = 1e-10
    spectrum_tol: float = 1e-9
    structure_tol: float = 1e-10

    # Interior point solver
    sdp_tol: float = 1e-9
    sdp_feas_tol: float = 1e-9
    sdp_max_iter: int = 200
    sdp_step_fraction: float = 0.98
    # max |F(x) Z| entrywise before OPTIMAL is reported
    sdp_slack_tol: float = 1e-7

    # min_t <= decision_tol means an extension exists
    decision_tol: float = 1e-7

    # Threshold search and the 5x5 witness iteration
    bisection_iterations: int = 60
    m5_max_iter: int = 200
    m5_tol: float = 1e-14

    # Runs
    jobs: int = 1
    seed: int = 0
    log_format: str = "console"  # "console" | "json"
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> "SymextConfig":
        """Create configuration from environment variables."""
        return cls(
            hermitian_tol=float(os.getenv("SYMEXT_HERMITIAN_TOL", "1e-12")),
            psd_tol=float(os.getenv("SYMEXT_PSD_TOL", "1e-10")),
            trace_tol=float(os.getenv("SYMEXT_TRACE_TOL", "1e-10")),
            spectrum_tol=float(os.getenv("SYMEXT_SPECTRUM_TOL", "1e-9")),
            structure_tol=float(os.getenv("SYMEXT_STRUCTURE_TOL", "1e-10")),
            sdp_tol=float(os.getenv("SYMEXT_SDP_TOL", "1e-9")),
            sdp_feas_tol=float(os.getenv("SYMEXT_SDP_FEAS_TOL", "1e-9")),
            sdp_max_iter=int(os.getenv("SYMEXT_SDP_MAX_ITER", "200")),
            sdp_step_fraction=float(os.getenv("SYMEXT_SDP_STEP_FRACTION", "0.98")),
            sdp_slack_tol=float(os.getenv("SYMEXT_SDP_SLACK_TOL", "1e-7")),
            decision_tol=float(os.getenv("SYMEXT_DECISION_TOL", "1e-7")),
            bisection_iterations=int(os.getenv("SYMEXT_BISECTION_ITERATIONS", "60")),
            m5_max_iter=int(os.getenv("SYMEXT_M5_MAX_ITER", "200")),
            m5_tol=float(os.getenv("SYMEXT_M5_TOL", "1e-14")),
            jobs=int(os.getenv("SYMEXT_JOBS", "1")),
            seed=int(os.getenv("SYMEXT_SEED", "0")),
            log_format=os.getenv("SYMEXT_LOG_FORMAT", "console"),
            log_level=os.getenv("SYMEXT_LOG_LEVEL", "INFO"),
        )

    def tolerances(self) -> dict[str, float]:
        """Tolerances recorded in output metadata."""
        return {
            "hermitian_tol": self.hermitian_tol,
            "psd_tol": self.psd_tol,
            "trace_tol": self.trace_tol,
            "sdp_tol": self.sdp_tol,
            "sdp_slack_tol": self.sdp_slack_tol,
            "decision_tol": self.decision_tol,
        }


# Global configuration instance
config = SymextConfig.from_env()
