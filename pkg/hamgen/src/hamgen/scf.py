"""Restricted Hartree-Fock and integral transforms for H2 in STO-3G.

Two contracted basis functions, two electrons; the SCF is a textbook
closed-shell loop with symmetric orthogonalization.  Outputs are the
molecular-orbital one- and two-electron integrals plus the nuclear
repulsion, which fully determine the second-quantized Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .integrals import (
    ANGSTROM_TO_BOHR,
    ContractedS,
    electron_repulsion,
    hydrogen_1s,
    kinetic,
    nuclear_attraction,
    overlap,
)

SCF_CONVERGENCE = 1e-12
SCF_MAX_CYCLES = 200


class ScfError(RuntimeError):
    """SCF failed to converge."""


@dataclass(frozen=True)
class MolecularIntegrals:
    """MO-basis integrals for a closed-shell 2-orbital problem.

    ``one_body[p, q]`` is the core-Hamiltonian matrix element and
    ``two_body[p, q, r, s]`` the chemist-notation (pq|rs) repulsion
    integral, both over spatial molecular orbitals.
    """

    one_body: np.ndarray
    two_body: np.ndarray
    nuclear_repulsion: float
    hf_energy: float
    orbital_energies: np.ndarray


def h2_basis(bond_length_angstrom: float) -> tuple[list[ContractedS], np.ndarray]:
    r = bond_length_angstrom * ANGSTROM_TO_BOHR
    centers = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, r]])
    return [hydrogen_1s(c) for c in centers], centers


def _ao_integrals(basis, centers):
    m = len(basis)
    s = np.empty((m, m))
    hcore = np.empty((m, m))
    eri = np.empty((m, m, m, m))
    for i in range(m):
        for j in range(m):
            s[i, j] = overlap(basis[i], basis[j])
            v = sum(
                nuclear_attraction(basis[i], basis[j], center, 1.0)
                for center in centers
            )
            hcore[i, j] = kinetic(basis[i], basis[j]) + v
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    eri[i, j, k, l] = electron_repulsion(
                        basis[i], basis[j], basis[k], basis[l]
                    )
    return s, hcore, eri


def restricted_hartree_fock(bond_length_angstrom: float) -> MolecularIntegrals:
    """Solve RHF for H2 at the given bond length and transform to MOs."""
    basis, centers = h2_basis(bond_length_angstrom)
    s, hcore, eri = _ao_integrals(basis, centers)
    r_bohr = bond_length_angstrom * ANGSTROM_TO_BOHR
    e_nuc = 1.0 / r_bohr

    # symmetric orthogonalization
    s_vals, s_vecs = np.linalg.eigh(s)
    if np.min(s_vals) < 1e-10:
        raise ScfError("overlap matrix is near-singular")
    x = s_vecs @ np.diag(s_vals**-0.5) @ s_vecs.T

    density = np.zeros_like(s)
    energy = 0.0
    for _ in range(SCF_MAX_CYCLES):
        g = np.einsum("ls,mnsl->mn", density, eri) - 0.5 * np.einsum(
            "ls,mlsn->mn", density, eri
        )
        fock = hcore + g
        f_prime = x.T @ fock @ x
        eps, c_prime = np.linalg.eigh(f_prime)
        c = x @ c_prime
        occupied = c[:, :1]
        new_density = 2.0 * occupied @ occupied.T
        new_energy = 0.5 * np.sum(new_density * (hcore + fock))
        if np.max(np.abs(new_density - density)) < SCF_CONVERGENCE:
            density, energy = new_density, new_energy
            break
        density, energy = new_density, new_energy
    else:
        raise ScfError(
            f"SCF did not converge at b = {bond_length_angstrom} angstrom"
        )

    one_body = c.T @ hcore @ c
    two_body = np.einsum("mp,nq,mnls,lr,st->pqrt", c, c, eri, c, c, optimize=True)
    return MolecularIntegrals(
        one_body=one_body,
        two_body=two_body,
        nuclear_repulsion=e_nuc,
        hf_energy=energy + e_nuc,
        orbital_energies=eps,
    )
