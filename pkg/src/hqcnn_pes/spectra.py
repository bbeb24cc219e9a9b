"""Exact reference energies by dense diagonalization.

The exact ground and first-excited reference curves are the two lowest
eigenvalues of the qubit Hamiltonian restricted to the subspace with the
molecule's electron count (two for H2).  Each qubit encodes one spin
orbital's occupancy, so the restriction keeps exactly the basis states
whose index has that many set bits.  The restriction matters: the full
Fock-space spectrum interleaves ionized (one- and three-electron)
levels below the molecule's first excited state at short bond lengths,
and those are not part of the dissociation curves being inferred.

A self-contained cyclic Jacobi eigensolver for complex Hermitian
matrices is implemented here; the matrices involved are tiny (at most
16 x 16 for the 4-qubit hydrogen problem), so no external linear
algebra is bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliSum, dense_matrix

#: Accepted residual ||H v - lambda v|| per eigenpair.
RESIDUAL_TOLERANCE = 1e-8

_MAX_SWEEPS = 60


@dataclass(frozen=True)
class Spectrum:
    """All eigenvalues of a qubit Hamiltonian, ascending (hartree)."""

    eigenvalues: np.ndarray
    bond_length: float | None = None

    @property
    def ground(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def first_excited(self) -> float:
        return float(self.eigenvalues[1])


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] with a unitary plane rotation, updating a and v."""
    apq = a[p, q]
    mag = abs(apq)
    if mag == 0.0:
        return
    phase = apq / mag
    tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
    c = 1.0 / np.hypot(1.0, t)
    s = t * c
    # Plane rotation R embedding [[c, s], [-s/phase, c/phase]] at (p, q).
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - (s / phase) * col_q
    a[:, q] = s * col_p + (c / phase) * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - (s * phase) * row_q
    a[q, :] = s * row_p + (c * phase) * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    col_p = v[:, p].copy()
    col_q = v[:, q].copy()
    v[:, p] = c * col_p - (s / phase) * col_q
    v[:, q] = s * col_p + (c / phase) * col_q


def eigh_hermitian(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a complex Hermitian matrix by cyclic Jacobi sweeps.

    Returns ascending eigenvalues and the matching eigenvector columns.
    Intended for small dense matrices; cost is O(m^3) per sweep.
    """
    a = np.array(matrix, dtype=complex)
    m = a.shape[0]
    if a.shape != (m, m):
        raise ValueError("matrix must be square")
    if np.max(np.abs(a - a.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(a))):
        raise ValueError("matrix is not Hermitian")
    v = np.eye(m, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a))))
    for _ in range(_MAX_SWEEPS):
        off = np.sqrt(sum(abs(a[i, j]) ** 2 for i in range(m) for j in range(i + 1, m)))
        if off <= 1e-14 * scale:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                if abs(a[p, q]) > 1e-16 * scale:
                    _jacobi_rotate(a, v, p, q)
    else:
        raise RuntimeError("Jacobi iteration failed to converge")
    values = a.diagonal().real.copy()
    order = np.argsort(values)
    return values[order], v[:, order]


def eigenvalues(h: PauliSum) -> Spectrum:
    """All eigenvalues of a Pauli sum's dense matrix, ascending.

    Verifies the residual ||H v - lambda v|| < 1e-8 for every pair.
    """
    matrix = dense_matrix(h)
    values, vectors = eigh_hermitian(matrix)
    residual = np.max(np.abs(matrix @ vectors - vectors * values))
    if residual > RESIDUAL_TOLERANCE:
        raise RuntimeError(f"eigenpair residual {residual} exceeds tolerance")
    return Spectrum(values)


def sector_eigenvalues(h: PauliSum, n_particles: int) -> np.ndarray:
    """Ascending eigenvalues within one occupation-number sector.

    The sector is spanned by the computational basis states whose index
    has exactly ``n_particles`` set bits (occupied spin orbitals).  The
    Hamiltonian must conserve particle number; coupling out of the
    sector beyond numerical noise raises ``ValueError``.
    """
    if not 0 <= n_particles <= h.n:
        raise ValueError(
            f"particle count {n_particles} out of range for {h.n} qubits"
        )
    matrix = dense_matrix(h)
    occupancy = np.array([int(k).bit_count() for k in range(1 << h.n)])
    inside = np.flatnonzero(occupancy == n_particles)
    outside = np.flatnonzero(occupancy != n_particles)
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if outside.size and np.max(np.abs(matrix[np.ix_(outside, inside)])) > 1e-10 * scale:
        raise ValueError("Hamiltonian does not conserve particle number")
    values, _ = eigh_hermitian(matrix[np.ix_(inside, inside)])
    return values


def reference_energies(h: PauliSum, n_particles: int = 2) -> tuple[float, float]:
    """Exact ground and first-excited energy of the molecular sector.

    Both values come from the ``n_particles``-electron block of the
    Hamiltonian (two electrons for H2): the ground energy is its lowest
    eigenvalue and the first excited energy its second-lowest.
    """
    values = sector_eigenvalues(h, n_particles)
    if values.size < 2:
        raise ValueError(
            f"sector with {n_particles} particles has fewer than two states"
        )
    return float(values[0]), float(values[1])
