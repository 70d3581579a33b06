"""Optimality certificates for solved SDPs."""

from dataclasses import asdict, dataclass

import numpy as np

from .problems import SdpInequality, SdpSolution, SdpStandard


@dataclass(frozen=True)
class CertificateReport:
    """Residuals of a candidate optimum.

    slackness is max |F(x) Z| entrywise (complementary slackness), the PSD
    margins are minimum eigenvalues, and the residuals measure the equality
    constraints of each side.
    """

    gap: float
    primal_obj: float
    slackness: float
    primal_min_eig: float
    dual_min_eig: float
    primal_residual: float
    dual_residual: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)

    def passes(self, gap_tol: float = 1e-8, slack_tol: float = 1e-6, psd_tol: float = 1e-9) -> bool:
        return (
            self.gap <= gap_tol * (1.0 + abs(self.primal_obj))
            and self.slackness <= slack_tol
            and self.primal_min_eig >= -psd_tol
            and self.dual_min_eig >= -psd_tol
        )


def _min_eig(blocks: list[np.ndarray]) -> float:
    return min((float(np.linalg.eigvalsh(b)[0]) for b in blocks), default=0.0)


def certify(solution: SdpSolution, problem: SdpInequality | SdpStandard) -> CertificateReport:
    """Recompute gap, slackness and feasibility from the problem data alone."""
    if isinstance(problem, SdpStandard):
        X = solution.X[0]
        Z = problem.C - np.tensordot(solution.x, problem.A, axes=1) if problem.p else problem.C.copy()
        eq = np.einsum("kij,ij->k", problem.A, X) - problem.b if problem.p else np.zeros(0)
        primal, dual = [X], [Z]
        primal_obj = float(np.vdot(problem.C, X))
        dual_obj = float(problem.b @ solution.x)
        primal_res = float(np.max(np.abs(eq), initial=0.0))
        dual_res = float(np.max(np.abs(Z - solution.Z[0]), initial=0.0))
    else:
        primal = problem.evaluate(solution.x)
        dual = solution.Z
        adj = sum(
            (b.adjoint(z, problem.m) for b, z in zip(problem.blocks, dual, strict=True)),
            np.zeros(problem.m),
        )
        primal_obj = float(problem.c @ solution.x)
        dual_obj = -sum(float(np.vdot(b.G, z)) for b, z in zip(problem.blocks, dual, strict=True))
        primal_res = max(
            (float(np.max(np.abs(f - s))) for f, s in zip(primal, solution.X, strict=True)),
            default=0.0,
        )
        dual_res = float(np.max(np.abs(adj - problem.c), initial=0.0))
    return CertificateReport(
        gap=abs(primal_obj - dual_obj),
        primal_obj=primal_obj,
        slackness=max(
            (float(np.max(np.abs(p @ d))) for p, d in zip(primal, dual, strict=True)), default=0.0
        ),
        primal_min_eig=_min_eig(primal),
        dual_min_eig=_min_eig(dual),
        primal_residual=primal_res,
        dual_residual=dual_res,
    )
