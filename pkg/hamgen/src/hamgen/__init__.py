"""H2 qubit-Hamiltonian dataset generator (STO-3G, Jordan-Wigner)."""

__version__ = "0.1.0"

from .generate import GenSpec, generate, qubit_hamiltonian_terms
from .qubit import determinant_fci_ground, fock_matrix, pauli_decompose
from .scf import MolecularIntegrals, restricted_hartree_fock
