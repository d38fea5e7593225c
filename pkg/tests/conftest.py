import numpy as np
import pytest

from kerrchain import HilbertSpace, SystemParams, resonant_epsilon

ALPHA = 0.001


@pytest.fixture
def qubit_space():
    return HilbertSpace(1)


@pytest.fixture
def minus_params():
    return SystemParams(alpha=ALPHA, epsilon=resonant_epsilon(ALPHA, "minus"))


@pytest.fixture
def plus_params():
    return SystemParams(alpha=ALPHA, epsilon=resonant_epsilon(ALPHA, "plus"))


def random_pure_density(rng: np.random.Generator, dim: int = 8) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_mixed_density(rng: np.random.Generator, dim: int = 8, rank: int = 4) -> np.ndarray:
    rho = np.zeros((dim, dim), dtype=complex)
    weights = rng.dirichlet(np.ones(rank))
    for w in weights:
        rho += w * random_pure_density(rng, dim)
    return rho
