"""Shared fixtures and oracles for the generator tests."""

import numpy as np
import pytest

from hamgen import restricted_hartree_fock

PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_from_terms(terms):
    """Dense matrix of (label, coeff) pairs, little-endian labels."""
    n = len(terms[0][0])
    out = np.zeros((1 << n, 1 << n), dtype=complex)
    for label, coeff in terms:
        op = np.eye(1, dtype=complex)
        for ch in reversed(label):
            op = np.kron(op, PAULI_1Q[ch])
        out += coeff * op
    return out


@pytest.fixture(scope="session")
def mo735():
    return restricted_hartree_fock(0.735)


@pytest.fixture(scope="session")
def mo075():
    return restricted_hartree_fock(0.75)
