import numpy as np
import pytest

from negmeter import states as st


@pytest.fixture(scope="session")
def random_mixed_states():
    rng = np.random.default_rng(2024)
    return [st.random_mixed(rng) for _ in range(100)]


@pytest.fixture(scope="session")
def random_pure_states():
    rng = np.random.default_rng(777)
    return [st.random_pure(rng) for _ in range(100)]


def random_qubit(rng):
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_separable(rng, n_terms=4):
    """Random mixture of product states (PPT by construction)."""
    w = rng.dirichlet(np.ones(n_terms))
    rho = np.zeros((4, 4), dtype=complex)
    for k in range(n_terms):
        rho += w[k] * np.kron(random_qubit(rng), random_qubit(rng))
    return rho
