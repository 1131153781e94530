import numpy as np
import pytest

from blochframes import DenseOperator


def random_density(rng: np.random.Generator, qubits: int) -> DenseOperator:
    """Full-rank random density operator via a Ginibre matrix."""
    dim = 2**qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DenseOperator(m, qubits, hermitian=True)


def random_hermitian(rng: np.random.Generator, qubits: int) -> DenseOperator:
    dim = 2**qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return DenseOperator(g + g.conj().T, qubits, hermitian=True)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260816)
