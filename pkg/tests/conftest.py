"""Pytest configuration and shared fixtures for symext-qkd tests."""

import numpy as np
import pytest
import structlog

from symext_qkd.bell.distribution import BellDiagonalDistribution
from symext_qkd.quantum.paulis import BELL_VECTORS
from symext_qkd.quantum.states import DensityMatrix


def make_bell_state(*weights: float) -> BellDiagonalDistribution:
    """Single-pair distribution (p_I, p_x, p_y, p_z)."""
    return BellDiagonalDistribution(1, np.array(weights, dtype=np.float64))


def make_random_bell_state(rng: np.random.Generator) -> BellDiagonalDistribution:
    """Uniform sample from the simplex."""
    return BellDiagonalDistribution(1, rng.dirichlet(np.ones(4)))


def make_density_matrix(entries: np.ndarray, dims: tuple[int, ...] = (2, 2)) -> DensityMatrix:
    return DensityMatrix(dims, np.asarray(entries, dtype=np.complex128))


@pytest.fixture(autouse=True)
def _reset_structlog():
    """Undo global structlog config (e.g. from CLI main) bound to a captured stream."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator; every test gets the same stream."""
    return np.random.default_rng(20240611)


@pytest.fixture
def phi_plus() -> DensityMatrix:
    """|Phi+><Phi+|."""
    v = BELL_VECTORS[0]
    return make_density_matrix(np.outer(v, v.conj()))


@pytest.fixture
def maximally_mixed() -> DensityMatrix:
    return make_density_matrix(np.eye(4) / 4)


@pytest.fixture
def isotropic_weights() -> BellDiagonalDistribution:
    """Isotropic state at p = 0.1."""
    return make_bell_state(0.7, 0.1, 0.1, 0.1)
