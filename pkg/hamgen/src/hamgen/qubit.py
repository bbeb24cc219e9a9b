"""Second quantization and the qubit mapping to weighted Pauli strings.

Spatial molecular orbitals are expanded into interleaved spin orbitals
(even index = alpha, odd = beta on orbital index // 2); each spin
orbital maps to one qubit, occupancy to the qubit's bit in a
little-endian basis index.  Fermionic operators carry the occupation
parity sign of all lower-indexed orbitals, which is exactly the
Jordan-Wigner convention, so projecting the resulting Fock-space matrix
onto the Pauli-string basis yields the Jordan-Wigner qubit Hamiltonian.

An independent determinant-basis configuration-interaction solver
(Slater-Condon rules on the two-electron determinants) provides the
exact ground energy used to cross-check the mapping.
"""

from __future__ import annotations

import itertools

import numpy as np

from .scf import MolecularIntegrals

COEFF_PRUNE = 1e-12

_PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def spin_orbital_integrals(mo: MolecularIntegrals) -> tuple[np.ndarray, np.ndarray, float]:
    """Expand MO integrals over interleaved spin orbitals.

    Returns ``(h, g, e_nuc)`` with ``h[p, q]`` the one-body element and
    ``g[p, q, r, s]`` the physicist-notation <pq|rs> element.
    """
    n_spatial = mo.one_body.shape[0]
    n = 2 * n_spatial
    h = np.zeros((n, n))
    g = np.zeros((n, n, n, n))
    for p in range(n):
        for q in range(n):
            if p % 2 == q % 2:
                h[p, q] = mo.one_body[p // 2, q // 2]
    for p, q, r, s in itertools.product(range(n), repeat=4):
        if p % 2 == r % 2 and q % 2 == s % 2:
            # <pq|rs> = (pr|qs) in chemist notation, spin-diagonal pairs
            g[p, q, r, s] = mo.two_body[p // 2, r // 2, q // 2, s // 2]
    return h, g, mo.nuclear_repulsion


def _annihilation_matrices(n: int) -> list[np.ndarray]:
    dim = 1 << n
    ops = []
    for p in range(n):
        a = np.zeros((dim, dim))
        bit = 1 << p
        lower_mask = bit - 1
        for k in range(dim):
            if k & bit:
                sign = -1.0 if bin(k & lower_mask).count("1") % 2 else 1.0
                a[k ^ bit, k] = sign
        ops.append(a)
    return ops


def fock_matrix(mo: MolecularIntegrals) -> np.ndarray:
    """The full second-quantized Hamiltonian on the 2^n Fock space."""
    h, g, e_nuc = spin_orbital_integrals(mo)
    n = h.shape[0]
    dim = 1 << n
    a = _annihilation_matrices(n)
    adag = [m.T for m in a]
    out = e_nuc * np.eye(dim)
    for p, q in itertools.product(range(n), repeat=2):
        if h[p, q] != 0.0:
            out += h[p, q] * adag[p] @ a[q]
    for p, q, r, s in itertools.product(range(n), repeat=4):
        if g[p, q, r, s] != 0.0:
            out += 0.5 * g[p, q, r, s] * adag[p] @ adag[q] @ a[s] @ a[r]
    return out


def pauli_decompose(matrix: np.ndarray) -> list[tuple[str, float]]:
    """Project a Hermitian Fock-space matrix onto the Pauli-string basis.

    Returns (label, coefficient) pairs with little-endian labels
    (character i of the label addresses qubit i); coefficients are real
    for a Hermitian input and near-zero ones are pruned.
    """
    dim = matrix.shape[0]
    n = dim.bit_length() - 1
    terms = []
    for labels in itertools.product("IXYZ", repeat=n):
        # labels[i] acts on qubit i; dense realization is P[n-1] x ... x P[0]
        op = np.eye(1, dtype=complex)
        for ch in reversed(labels):
            op = np.kron(op, _PAULI_1Q[ch])
        coeff = np.trace(op.conj().T @ matrix) / dim
        if abs(coeff.imag) > 1e-10:
            raise ValueError(f"non-real Pauli coefficient {coeff} for {labels}")
        if abs(coeff.real) >= COEFF_PRUNE:
            terms.append(("".join(labels), float(coeff.real)))
    return terms


def determinant_fci_ground(mo: MolecularIntegrals) -> float:
    """Exact two-electron ground energy by determinant-basis CI.

    Builds the Hamiltonian over all two-electron Slater determinants
    with Slater-Condon rules; independent of the qubit mapping.
    """
    h, g, e_nuc = spin_orbital_integrals(mo)
    n = h.shape[0]
    dets = [tuple(d) for d in itertools.combinations(range(n), 2)]

    def anti(p, q, r, s):
        return g[p, q, r, s] - g[p, q, s, r]

    dim = len(dets)
    ham = np.zeros((dim, dim))
    for i, (p, q) in enumerate(dets):
        for j, (r, s) in enumerate(dets):
            common = set((p, q)) & set((r, s))
            if i == j:
                ham[i, j] = h[p, p] + h[q, q] + anti(p, q, p, q)
            elif len(common) == 1:
                c = common.pop()
                d = p if q == c else q
                e = r if s == c else s
                sign = 1.0
                if (p, q).index(d) != (r, s).index(e):
                    sign = -1.0
                ham[i, j] = sign * (h[d, e] + anti(c, d, c, e))
            else:
                ham[i, j] = anti(p, q, r, s)
    return float(np.linalg.eigvalsh(ham)[0] + e_nuc)
