"""Shared fixtures: the committed dataset and small reusable operators."""

import numpy as np
import pytest

from hqcnn_pes import default_dataset_path, load_dataset
from hqcnn_pes.pauli import PauliString, PauliSum


@pytest.fixture(scope="session")
def dataset():
    return load_dataset(default_dataset_path())


@pytest.fixture(scope="session")
def h_equilibrium(dataset):
    """The 4-qubit Hamiltonian at the grid point nearest equilibrium."""
    return dataset.hamiltonian_at(0.75)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260824)


def random_pauli_sum(rng, n, n_terms):
    """A random Hermitian operator as a weighted Pauli sum."""
    strings = [
        PauliString("".join(rng.choice(list("IXYZ"), size=n)))
        for _ in range(n_terms)
    ]
    coeffs = rng.normal(size=n_terms)
    return PauliSum(list(zip(coeffs, strings)), n)


def random_state(rng, n):
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return amps / np.linalg.norm(amps)
