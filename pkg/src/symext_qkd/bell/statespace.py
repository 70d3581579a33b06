"""
Curves in the (alpha1, alpha2) plane of single-pair Bell-diagonal states.

All curves lie in the alpha3 = 0 section, where the valid states form the
triangle with corners (-1, 0) and (1, +-sqrt2).
"""

import numpy as np
from numpy.typing import NDArray

SQRT2 = float(np.sqrt(2.0))

Curve = NDArray[np.float64]


def dc_level_set(level: float, samples: int = 200) -> Curve:
    """Points with D_C = level: alpha1^2 + 2 * 2^-level * alpha2^2 = 1, alpha2 >= 0.

    Only points inside the state triangle are kept.
    """
    u = np.linspace(0.0, np.pi, samples)
    a1 = np.cos(u)
    a2 = np.sqrt(2.0**level / 2.0) * np.sin(u)
    inside = a2 <= (1.0 + a1) / SQRT2 + 1e-12
    return np.column_stack([a1[inside], a2[inside]])


def outer_ellipse(samples: int = 200) -> Curve:
    """4 (alpha1 - 1/2)^2 + alpha2^2 = 1, the extendibility boundary for alpha3 = 0."""
    u = np.linspace(0.0, 2.0 * np.pi, samples)
    return np.column_stack([0.5 + 0.5 * np.cos(u), np.sin(u)])


def inner_ellipse(samples: int = 200) -> Curve:
    """(9/4)(alpha1 - 1/3)^2 + (3/2) alpha2^2 = 1."""
    u = np.linspace(0.0, 2.0 * np.pi, samples)
    return np.column_stack([1.0 / 3.0 + (2.0 / 3.0) * np.cos(u), np.sqrt(2.0 / 3.0) * np.sin(u)])


def tetrahedron_section() -> Curve:
    """Closed polygon of the state triangle."""
    return np.array([[-1.0, 0.0], [1.0, SQRT2], [1.0, -SQRT2], [-1.0, 0.0]])


def curves(levels: tuple[float, ...] = (-2.0, -1.0, 0.0, 1.0, 2.0), samples: int = 200) -> dict[str, Curve]:
    """Every curve keyed by name."""
    result = {f"dc_{level:g}": dc_level_set(level, samples) for level in levels}
    result["outer_ellipse"] = outer_ellipse(samples)
    result["inner_ellipse"] = inner_ellipse(samples)
    result["tetrahedron"] = tetrahedron_section()
    return result
