"""
Explicit witness blocks for two-pair LAD outputs.

The state kept by the announcement [1 1 1] on three D_C = 0 pairs with angles
(theta, phi, alpha) has a symmetric extension whose content is fixed by a small
real block: a 4x4 matrix in the basis 000, 110+101, 220+202, 330+303 of the
(A, B, B') index triples, or for inputs with p_y = 0 a 5x5 matrix that adds the
123 permutation class. Entries are given in units of 1/32 (4x4) or absolute (5x5).

Products such as (+--) stand for (1 + cos theta)(1 - cos phi)(1 - cos alpha).
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
import structlog
from numpy.typing import NDArray

from ..config import config
from ..errors import ConvergenceError, InvalidInputError

logger = structlog.get_logger(__name__)

SQRT5 = float(np.sqrt(5.0))

# Below this cosine the equal-angle block loses positivity
EQUAL_ANGLE_ROOT = (3 * SQRT5 - 4 - 2 * np.sqrt(2 * SQRT5 - 3)) / (4 - SQRT5)

# RCAD outputs of the D_C = 0 state never have a smaller cosine
M5_MIN_COSINE = 1 / SQRT5


class WitnessVariant(str, Enum):
    """Construction that produced a witness block."""

    M4_DIAG = "m4_diag"
    M4_EQUAL_ANGLE = "m4_equal_angle"
    M5_ITERATIVE = "m5_iterative"


@dataclass(frozen=True)
class WitnessBlock:
    """Small real symmetric block that determines a full symmetric extension.

    Attributes:
        variant: Construction used.
        entries: The block, 4x4 scaled by 32 or 5x5 unscaled.
        cosines: (cos theta, cos phi, cos alpha).
        auxiliary: Named constants of the construction.
        padding: Diagonal at 011, 022, 033 needed by 4x4 blocks (unscaled).
        residuals: Constraint residuals and, for the iteration, its last step.
    """

    variant: WitnessVariant
    entries: NDArray[np.float64]
    cosines: tuple[float, float, float]
    auxiliary: dict[str, float] = field(default_factory=dict)
    padding: tuple[float, float, float] = (0.0, 0.0, 0.0)
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])

    @property
    def scale(self) -> float:
        return 1.0 / 32.0 if self.size == 4 else 1.0

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])

    @property
    def psd(self) -> bool:
        if self.variant is WitnessVariant.M5_ITERATIVE:
            return bool(min(self.auxiliary[f"d{i}"] for i in (1, 2, 3)) >= -config.psd_tol)
        eig_ok = self.min_eigenvalue() * self.scale >= -config.psd_tol
        return bool(eig_ok and min(self.padding) >= -config.psd_tol)

    def to_model(self) -> Any:
        """Block and diagnostics as a pydantic model."""
        from ..models import WitnessExport

        return WitnessExport(
            variant=self.variant.value,
            angles=[float(np.arccos(np.clip(c, -1.0, 1.0))) for c in self.cosines],
            block=self.entries.tolist(),
            auxiliary={key: float(value) for key, value in self.auxiliary.items()},
            psd=bool(self.psd),
            residuals={key: float(value) for key, value in self.residuals.items()},
        )


# =============================================================================
# Angle products
# =============================================================================


def _sin(c: float) -> float:
    return float(np.sqrt(max(0.0, 1.0 - c * c)))


def sign_product(cosines: tuple[float, float, float], signs: str) -> float:
    """Product of (1 +- cos) for a sign string such as "+--"."""
    out = 1.0
    for c, sign in zip(cosines, signs, strict=True):
        out *= 1.0 + c if sign == "+" else 1.0 - c
    return out


def _check_cosines(cosines: tuple[float, float, float]) -> None:
    if any(not -1e-12 <= c <= 1.0 + 1e-12 for c in cosines):
        raise InvalidInputError(f"angles must lie in [0, pi/2], got cosines {cosines}")


def _m4_residuals(m: NDArray[np.float64], cosines: tuple[float, float, float]) -> dict[str, float]:
    """Trace-condition mismatches of a 4x4 block, in units of 1/32."""
    ct, cp, ca = cosines
    st, sp, sa = (_sin(c) for c in cosines)
    targets = [sign_product(cosines, s) for s in ("+--", "-+-", "--+")]
    return {
        "diag_sum": abs(m[0, 0] + m[1, 1] + m[2, 2] + m[3, 3] - sign_product(cosines, "+++")),
        "coherence_1": abs(2 * (m[0, 1] + m[2, 3]) - (1 + ct) * sp * sa),
        "coherence_2": abs(2 * (m[0, 2] + m[1, 3]) - st * (1 + cp) * sa),
        "coherence_3": abs(2 * (m[0, 3] + m[1, 2]) - st * sp * (1 + ca)),
        "saturation": max(abs(m[i + 1, i + 1] - targets[i]) for i in range(3)),
    }


def _padding(m: NDArray[np.float64], cosines: tuple[float, float, float]) -> tuple[float, float, float]:
    targets = [sign_product(cosines, s) for s in ("+--", "-+-", "--+")]
    pad = [(targets[i] - m[i + 1, i + 1]) / 32.0 for i in range(3)]
    return (pad[0], pad[1], pad[2])


# =============================================================================
# 4x4 blocks
# =============================================================================


def positivity_function(ct: float, cp: float, ca: float) -> float:
    """(1/4)(+++) - (-+-) - (--+) - (+--); the diagonal block is PSD iff this is positive."""
    c = (ct, cp, ca)
    return (
        sign_product(c, "+++") / 4.0
        - sign_product(c, "-+-")
        - sign_product(c, "--+")
        - sign_product(c, "+--")
    )


def m4_diag(theta: float, phi: float, alpha: float) -> WitnessBlock:
    """Block with a bordered diagonal lower part.

    B = (+++) - (-+-) - (--+) - (+--), a = (1/2)(1 + ct) sp sa and cyclic,
    and the diagonal saturated at (+--), (-+-), (--+).
    """
    cosines = (float(np.cos(theta)), float(np.cos(phi)), float(np.cos(alpha)))
    _check_cosines(cosines)
    ct, cp, ca = cosines
    st, sp, sa = (_sin(c) for c in cosines)
    big_b = (
        sign_product(cosines, "+++")
        - sign_product(cosines, "-+-")
        - sign_product(cosines, "--+")
        - sign_product(cosines, "+--")
    )
    a = 0.5 * (1 + ct) * sp * sa
    b = 0.5 * st * (1 + cp) * sa
    c = 0.5 * st * sp * (1 + ca)
    x, y, z = (sign_product(cosines, s) for s in ("+--", "-+-", "--+"))
    m = np.array([[big_b, a, b, c], [a, x, 0, 0], [b, 0, y, 0], [c, 0, 0, z]], dtype=np.float64)
    return WitnessBlock(
        variant=WitnessVariant.M4_DIAG,
        entries=m,
        cosines=cosines,
        auxiliary={
            "B": big_b, "a": a, "b": b, "c": c, "x": x, "y": y, "z": z,
            "f": positivity_function(ct, cp, ca),
        },
        padding=_padding(m, cosines),
        residuals=_m4_residuals(m, cosines),
    )


def equal_angle_determinant(c: float) -> float:
    """Determinant of the leading 3x3 block of m4_equal_angle, scaled by 32."""
    return (32.0 / 125.0) * (1 - c) * (
        (SQRT5 - 4) * c * c + (6 * SQRT5 - 8) * c + (5 * SQRT5 - 12)
    )


def m4_equal_angle(theta: float) -> WitnessBlock:
    """Block for cos phi = cos alpha = 1/sqrt5 with equal third and fourth rows."""
    c = float(np.cos(theta))
    _check_cosines((c, 1 / SQRT5, 1 / SQRT5))
    s = _sin(c)
    big_b = 0.8 * (SQRT5 * (1 + c) - 2 * (1 - c))
    a = 0.4 * (3 * c - 1)
    b = (SQRT5 + 1) * s / 5
    x = 0.4 * (3 - SQRT5) * (1 + c)
    y = 0.8 * (1 - c)
    m = np.array([[big_b, a, b, b], [a, x, 0, 0], [b, 0, y, y], [b, 0, y, y]], dtype=np.float64)
    cosines = (c, 1 / SQRT5, 1 / SQRT5)
    return WitnessBlock(
        variant=WitnessVariant.M4_EQUAL_ANGLE,
        entries=m,
        cosines=cosines,
        auxiliary={
            "B": big_b, "a": a, "b": b, "x": x, "y": y,
            "det3": equal_angle_determinant(c),
        },
        padding=_padding(m, cosines),
        residuals=_m4_residuals(m, cosines),
    )


# =============================================================================
# 5x5 block
# =============================================================================


def m5_iterative(
    theta: float,
    phi: float,
    alpha: float,
    max_iter: int | None = None,
    tol: float | None = None,
) -> WitnessBlock:
    """Block |psi1><psi1| + |psi2><psi2| + D for inputs with p_y = 0.

    t = (---)/64 sets the 123 class, psi1 = (0, k/sqrt t, sqrt t) couples it to
    the single-flip columns, and psi2 = (sqrt B, r, s, u)/sqrt B solves the
    coupled coherence conditions by fixed-point iteration starting from the
    uncoupled values. D absorbs the remaining diagonal.

    Every cosine must be at least 1/sqrt5. Below that the iteration can
    diverge or leave a negative d_i.

    Raises:
        InvalidInputError: a cosine lies below 1/sqrt5.
        ConvergenceError: the iteration did not reach tol within max_iter.
    """
    max_iter = config.m5_max_iter if max_iter is None else max_iter
    tol = config.m5_tol if tol is None else tol
    cosines = (float(np.cos(theta)), float(np.cos(phi)), float(np.cos(alpha)))
    _check_cosines(cosines)
    if min(cosines) < M5_MIN_COSINE - 1e-12:
        raise InvalidInputError(f"5x5 block needs every cosine >= 1/sqrt5, got {cosines}")
    ct, cp, ca = cosines
    st, sp, sa = (_sin(c) for c in cosines)
    ppp, pmm, mpm, mmp, mmm = (
        sign_product(cosines, s) for s in ("+++", "+--", "-+-", "--+", "---")
    )

    t = mmm / 64.0
    if t > 0:
        k = np.array(
            [st * (1 - cp) * (1 - ca), sp * (1 - ct) * (1 - ca), sa * (1 - ct) * (1 - cp)]
        ) / 128.0
        psi1 = np.concatenate([[0.0], k / np.sqrt(t), [np.sqrt(t)]])
        cross = np.array([k[1] * k[2], k[0] * k[2], k[0] * k[1]]) / t
        k_sq = k**2 / t
    else:
        k = np.zeros(3)
        psi1 = np.zeros(5)
        cross = np.zeros(3)
        k_sq = np.zeros(3)

    big_b = (2 * ppp - pmm - mpm - mmp + 3 * mmm) / 64.0
    base = np.array(
        [(1 + ct) * sp * sa, st * (1 + cp) * sa, st * sp * (1 + ca)]
    ) / 64.0 - cross

    v = base.copy()
    residual = float("inf")
    iterations = 0
    for iterations in range(1, max_iter + 1):
        r, s, u = v
        nxt = base - np.array([s * u, r * u, r * s]) / big_b
        residual = float(np.max(np.abs(nxt - v)))
        v = nxt
        if residual < tol:
            break
    else:
        raise ConvergenceError(
            f"5x5 iteration did not converge in {max_iter} steps (residual {residual:.3e})",
            iterations=max_iter,
            residual=residual,
        )

    psi2 = np.concatenate([[np.sqrt(big_b)], v / np.sqrt(big_b), [0.0]])
    d = np.array([pmm, mpm, mmp]) / 64.0 - t - k_sq - v**2 / big_b
    m = np.outer(psi1, psi1) + np.outer(psi2, psi2) + np.diag(np.concatenate([[0.0], d, [0.0]]))
    logger.debug("m5_converged", iterations=iterations, residual=residual, d=d.tolist())
    return WitnessBlock(
        variant=WitnessVariant.M5_ITERATIVE,
        entries=m,
        cosines=cosines,
        auxiliary={
            "B": big_b, "t": t,
            "k1": float(k[0]), "k2": float(k[1]), "k3": float(k[2]),
            "r": float(v[0]), "s": float(v[1]), "u": float(v[2]),
            "d1": float(d[0]), "d2": float(d[1]), "d3": float(d[2]),
        },
        residuals={"iteration": residual, "iterations": float(iterations)},
    )
