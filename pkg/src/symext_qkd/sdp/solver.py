"""
Primal-dual interior-point solver for block-diagonal SDPs.

Path following with Nesterov-Todd scaling and a Mehrotra predictor-corrector
step. Each iteration forms the m x m Schur complement
H_ij = tr(F_i W^-1 F_j W^-1) block by block, rescales it to unit diagonal and
factors it with a Cholesky, shifted when rounding has made it indefinite. The
start S = Z = tau*I, x = 0 is infeasible in general; primal and dual residuals
shrink with the step lengths.

Off the central path S Z = R diag(lam)^2 R^-1 has entries far above mu once R is
ill-conditioned, so a small gap alone does not bound complementary slackness.
Once the gap has converged the solver takes pure centering steps until
max |F(x) Z| is below sdp_slack_tol as well.
"""

from collections.abc import Callable

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.linalg import (
    LinAlgError,
    cho_factor,
    cho_solve,
    cholesky,
    eigvalsh,
    lstsq,
    solve_triangular,
    svd,
)

from ..config import config
from ..errors import SolverError
from .problems import SdpInequality, SdpSolution, SdpStandard, SolverStatus, sparsity_blocks

logger = structlog.get_logger(__name__)

Blocks = list[NDArray[np.float64]]
LinearSolve = Callable[[NDArray[np.float64]], NDArray[np.float64]]

INFEASIBILITY_MARGIN = 1e-6
Z_GROWTH_LIMIT = 1e12
# Diagonal shifts tried on the unit-diagonal Schur complement before least squares
SCHUR_SHIFTS = (0.0, 1e-14, 1e-12, 1e-10, 1e-8)
# Both step lengths below this count as no progress
STALL_STEP = 1e-12
STALL_LIMIT = 3


def _sym(a: NDArray[np.float64]) -> NDArray[np.float64]:
    return (a + a.T) / 2


def _max_step(lam: NDArray[np.float64], direction: NDArray[np.float64]) -> float:
    """Largest a with diag(lam) + a*direction >= 0 (inf when unbounded)."""
    inv_sqrt = 1.0 / np.sqrt(lam)
    lowest = float(eigvalsh(direction * np.outer(inv_sqrt, inv_sqrt))[0])
    return float("inf") if lowest >= 0 else -1.0 / lowest


class _Scaling:
    """Nesterov-Todd scaling R with R^-1 S R^-T = R^T Z R = diag(lam)."""

    def __init__(self, S: NDArray[np.float64], Z: NDArray[np.float64]):
        try:
            ls = cholesky(S, lower=True)
            lz = cholesky(Z, lower=True)
        except LinAlgError as e:
            raise SolverError("iterate lost positive definiteness") from e
        u, lam, vt = svd(lz.T @ ls)
        self.lam = lam
        self.R = (ls @ vt.T) / np.sqrt(lam)
        self.R_inv = (np.sqrt(lam)[:, None] * vt) @ solve_triangular(
            ls, np.eye(len(lam)), lower=True
        )

    def inward(self, a: NDArray[np.float64]) -> NDArray[np.float64]:
        """R^-1 A R^-T, vectorized over leading axes."""
        return self.R_inv @ a @ self.R_inv.T

    def primal_out(self, a: NDArray[np.float64]) -> NDArray[np.float64]:
        return _sym(self.R @ a @ self.R.T)

    def dual_out(self, a: NDArray[np.float64]) -> NDArray[np.float64]:
        return _sym(self.R_inv.T @ a @ self.R_inv)


def _certificate(problem: SdpInequality, Z: Blocks, feas_tol: float) -> bool:
    """Z / tr Z is a Farkas certificate: tr(F_i Z) ~ 0 and tr(G Z) < 0."""
    trace = sum(float(np.trace(z)) for z in Z)
    if trace <= 0:
        return False
    adj = sum((b.adjoint(z / trace, problem.m) for b, z in zip(problem.blocks, Z, strict=True)), np.zeros(problem.m))
    g_dot = sum(float(np.vdot(b.G, z)) / trace for b, z in zip(problem.blocks, Z, strict=True))
    g_scale = 1.0 + max((float(np.max(np.abs(b.G))) for b in problem.blocks), default=0.0)
    return float(np.max(np.abs(adj), initial=0.0)) <= feas_tol and g_dot < -INFEASIBILITY_MARGIN * g_scale


def _schur_solver(H: NDArray[np.float64], iteration: int) -> LinearSolve:
    """Solve H dx = rhs through a unit-diagonal rescaling of H.

    Raises:
        SolverError: H has non-finite entries.
    """
    if not np.all(np.isfinite(H)):
        raise SolverError(f"Schur complement has non-finite entries at iteration {iteration}")
    scale = np.sqrt(np.abs(np.diag(H)))
    scale[scale == 0.0] = 1.0
    Hs = H / np.outer(scale, scale)
    identity = np.eye(len(scale))
    for shift in SCHUR_SHIFTS:
        try:
            factor = cho_factor(Hs + shift * identity, check_finite=False)
        except LinAlgError:
            continue
        if shift:
            logger.debug("schur_shifted", iteration=iteration, shift=shift)
        return lambda rhs, f=factor: cho_solve(f, rhs / scale, check_finite=False) / scale
    logger.debug("schur_least_squares", iteration=iteration)
    return lambda rhs: lstsq(Hs, rhs / scale, cond=1e-15, check_finite=False)[0] / scale


def _slackness(Fx: Blocks, Z: Blocks) -> float:
    """max |F(x) Z| entrywise."""
    return max((float(np.max(np.abs(f @ z))) for f, z in zip(Fx, Z, strict=True)), default=0.0)


def solve_inequality(
    problem: SdpInequality,
    tol: float | None = None,
    max_iter: int | None = None,
    feas_tol: float | None = None,
    step_fraction: float | None = None,
    slack_tol: float | None = None,
) -> SdpSolution:
    """minimize c^T x subject to G + sum_i x_i F_i >= 0.

    Returns OPTIMAL when both residuals are below feas_tol, the duality gap
    is below tol * (1 + |c^T x|) and max |F(x) Z| is below slack_tol;
    INFEASIBLE_CERTIFICATE when the dual iterate proves the LMI infeasible;
    MAX_ITER with the last iterate when the budget runs out or steps stall.

    Raises:
        SolverError: an iterate lost definiteness or the Schur complement
            overflowed.
    """
    tol = config.sdp_tol if tol is None else tol
    max_iter = config.sdp_max_iter if max_iter is None else max_iter
    feas_tol = config.sdp_feas_tol if feas_tol is None else feas_tol
    step_fraction = config.sdp_step_fraction if step_fraction is None else step_fraction
    slack_tol = config.sdp_slack_tol if slack_tol is None else slack_tol

    m = problem.m
    d = problem.side
    blocks = problem.blocks
    g_norm = max((float(np.max(np.abs(b.G))) for b in blocks), default=0.0)
    c_norm = float(np.max(np.abs(problem.c), initial=0.0))
    tau = 1.0 + g_norm

    x = np.zeros(m)
    S: Blocks = [tau * np.eye(b.size) for b in blocks]
    Z: Blocks = [tau * np.eye(b.size) for b in blocks]
    status = SolverStatus.MAX_ITER
    iteration = 0
    stalled = 0
    centering_steps = 0
    p_res = d_res = float("inf")

    while True:
        Fx = problem.evaluate(x)
        r_p = [s - f for s, f in zip(S, Fx, strict=True)]
        r_d = sum((b.adjoint(z, m) for b, z in zip(blocks, Z, strict=True)), np.zeros(m)) - problem.c
        gap = sum(float(np.vdot(s, z)) for s, z in zip(S, Z, strict=True))
        mu = gap / d
        p_obj = float(problem.c @ x)
        d_obj = -sum(float(np.vdot(b.G, z)) for b, z in zip(blocks, Z, strict=True))
        p_res = max((float(np.max(np.abs(r))) for r in r_p), default=0.0) / (1.0 + g_norm)
        d_res = float(np.max(np.abs(r_d), initial=0.0)) / (1.0 + c_norm)
        slack = _slackness(Fx, Z)
        logger.debug(
            "sdp_iteration",
            iteration=iteration, p_obj=p_obj, d_obj=d_obj, gap=gap, mu=mu,
            p_res=p_res, d_res=d_res, slack=slack,
        )

        bound = tol * (1.0 + abs(p_obj))
        converged = p_res <= feas_tol and d_res <= feas_tol and gap <= bound and abs(p_obj - d_obj) <= bound
        if converged and slack <= slack_tol:
            status = SolverStatus.OPTIMAL
            break
        if p_res > feas_tol and _certificate(problem, Z, feas_tol):
            status = SolverStatus.INFEASIBLE_CERTIFICATE
            break
        if iteration >= max_iter:
            break
        if stalled >= STALL_LIMIT:
            logger.warning("sdp_stalled", iteration=iteration, gap=gap, slack=slack)
            break
        if max(float(np.max(np.abs(z))) for z in Z) > Z_GROWTH_LIMIT * tau:
            if _certificate(problem, Z, feas_tol):
                status = SolverStatus.INFEASIBLE_CERTIFICATE
            break
        iteration += 1

        scalings = [_Scaling(s, z) for s, z in zip(S, Z, strict=True)]
        F_hat = [sc.inward(b.F) for sc, b in zip(scalings, blocks, strict=True)]
        rp_hat = [sc.inward(r) for sc, r in zip(scalings, r_p, strict=True)]

        H = np.zeros((m, m))
        for b, fh in zip(blocks, F_hat, strict=True):
            if len(b.indices):
                flat = fh.reshape(len(b.indices), -1)
                H[np.ix_(b.indices, b.indices)] += flat @ flat.T
        schur = _schur_solver(H, iteration) if m else None

        def direction(targets: Blocks) -> tuple[NDArray[np.float64], Blocks, Blocks]:
            rhs = r_d.copy()
            for b, fh, t, rp in zip(blocks, F_hat, targets, rp_hat, strict=True):
                if len(b.indices):
                    rhs[b.indices] += np.einsum("kij,ij->k", fh, t + rp)
            dx = schur(rhs) if schur is not None else np.zeros(0)
            ds = [
                -rp + (np.tensordot(dx[b.indices], fh, axes=1) if len(b.indices) else 0.0)
                for b, fh, rp in zip(blocks, F_hat, rp_hat, strict=True)
            ]
            dz = [t - s for t, s in zip(targets, ds, strict=True)]
            return dx, ds, dz

        def steps(ds: Blocks, dz: Blocks) -> tuple[float, float]:
            a_p = min(_max_step(sc.lam, s) for sc, s in zip(scalings, ds, strict=True))
            a_d = min(_max_step(sc.lam, z) for sc, z in zip(scalings, dz, strict=True))
            return a_p, a_d

        targets = []
        if converged:
            # centering: lam^2 -> target pulls S Z back to a multiple of 1
            centering_steps += 1
            target = min(mu, 0.1 * slack_tol)
            for sc in scalings:
                lam = sc.lam
                rhs = target * np.eye(len(lam)) - np.diag(lam**2)
                targets.append(2 * rhs / (lam[:, None] + lam[None, :]))
        else:
            # predictor
            _, ds_a, dz_a = direction([-np.diag(sc.lam) for sc in scalings])
            a_p, a_d = steps(ds_a, dz_a)
            a_p, a_d = min(1.0, a_p), min(1.0, a_d)
            mu_aff = sum(
                float(np.vdot(np.diag(sc.lam) + a_p * s, np.diag(sc.lam) + a_d * z))
                for sc, s, z in zip(scalings, ds_a, dz_a, strict=True)
            ) / d
            sigma = float(np.clip((mu_aff / mu) ** 3, 0.0, 1.0)) if mu > 0 else 0.0

            # corrector
            for sc, s, z in zip(scalings, ds_a, dz_a, strict=True):
                lam = sc.lam
                rhs = sigma * mu * np.eye(len(lam)) - np.diag(lam**2) - _sym(s @ z)
                targets.append(2 * rhs / (lam[:, None] + lam[None, :]))
        dx, ds, dz = direction(targets)
        a_p, a_d = steps(ds, dz)
        a_p = min(1.0, step_fraction * a_p)
        a_d = min(1.0, step_fraction * a_d)
        stalled = stalled + 1 if max(a_p, a_d) < STALL_STEP else 0

        x = x + a_p * dx
        S = [s + a_p * sc.primal_out(v) for s, sc, v in zip(S, scalings, ds, strict=True)]
        Z = [z + a_d * sc.dual_out(v) for z, sc, v in zip(Z, scalings, dz, strict=True)]

    solution = SdpSolution(
        x=x,
        X=problem.evaluate(x),
        Z=Z,
        primal_obj=float(problem.c @ x),
        dual_obj=-sum(float(np.vdot(b.G, z)) for b, z in zip(blocks, Z, strict=True)),
        status=status,
        iterations=iteration,
        primal_residual=p_res,
        dual_residual=d_res,
    )
    logger.info(
        "sdp_solved",
        status=status.value, iterations=iteration, centering=centering_steps, m=m, side=d,
        blocks=len(blocks), primal_obj=solution.primal_obj, gap=solution.gap,
    )
    return solution


def solve_standard(
    problem: SdpStandard,
    tol: float | None = None,
    max_iter: int | None = None,
    feas_tol: float | None = None,
) -> SdpSolution:
    """minimize tr(C X) subject to tr(A_i X) = b_i, X >= 0.

    Solved through its inequality-form dual; X is the dual matrix of that
    problem, reassembled densely.
    """
    dual_problem = problem.as_inequality()
    inner = solve_inequality(dual_problem, tol, max_iter, feas_tol)
    d = problem.C.shape[0]
    X = np.zeros((d, d))
    Z = np.zeros((d, d))
    for members, x_block, z_block in zip(_block_members(problem), inner.Z, inner.X, strict=True):
        X[np.ix_(members, members)] = x_block
        Z[np.ix_(members, members)] = z_block
    status = inner.status
    if status is SolverStatus.INFEASIBLE_CERTIFICATE:
        status = SolverStatus.UNBOUNDED
    return SdpSolution(
        x=inner.x,
        X=[X],
        Z=[Z],
        primal_obj=float(np.vdot(problem.C, X)),
        dual_obj=float(problem.b @ inner.x),
        status=status,
        iterations=inner.iterations,
        primal_residual=inner.dual_residual,
        dual_residual=inner.primal_residual,
    )


def _block_members(problem: SdpStandard) -> list[NDArray[np.int64]]:
    """Index sets matching the blocks of problem.as_inequality()."""
    pattern = (np.abs(problem.C) > 0) | np.any(np.abs(problem.A) > 0, axis=0)
    return sparsity_blocks(pattern)
