"""Pauli-string algebra for qubit Hamiltonians.

A molecular Hamiltonian in qubit form is a real-weighted sum of tensor
products of single-qubit Pauli operators,

    H = sum_P  h_P * P,     P in {I, X, Y, Z}^n,  h_P real.

Qubit ordering is little-endian throughout: position ``i`` of a label
string addresses qubit ``i``, which is bit ``i`` of a computational-basis
index.  The dense realization of a string is therefore
``P[n-1] (x) ... (x) P[0]``.

Exact expectation values are computed term by term via the sparse action
of each Pauli string on the state (one permutation plus a phase per
term), never through the dense matrix.  ``dense_matrix`` exists as a test
oracle and for small spectra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

#: Coefficients with magnitude below this are dropped during canonicalization.
COEFF_PRUNE_THRESHOLD = 1e-14

#: Largest qubit count for which a dense matrix may be materialized.
DENSE_QUBIT_LIMIT = 12

#: Tolerance on the norm of a state passed to ``expectation``.
NORM_TOLERANCE = 1e-8

_PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """A tensor product of single-qubit Pauli operators.

    Parameters
    ----------
    ops : str
        Label sequence over {I, X, Y, Z}; character ``i`` acts on qubit
        ``i`` (little-endian).
    """

    ops: str

    def __post_init__(self):
        if not self.ops:
            raise ValueError("Pauli string must act on at least one qubit")
        for ch in self.ops:
            if ch not in "IXYZ":
                raise ValueError(f"invalid Pauli label {ch!r} in {self.ops!r}")

    @property
    def n(self) -> int:
        """Number of qubits the string acts on."""
        return len(self.ops)

    @property
    def is_identity(self) -> bool:
        return set(self.ops) == {"I"}

    @property
    def support(self) -> tuple[int, ...]:
        """Qubit indices with a non-identity operator."""
        return tuple(i for i, ch in enumerate(self.ops) if ch != "I")

    def __str__(self) -> str:
        return self.ops


def parse_pauli_string(text: str, n: int) -> PauliString:
    """Parse a label sequence into a ``PauliString`` on ``n`` qubits.

    Raises
    ------
    ValueError
        If ``text`` does not have length ``n`` or contains a character
        outside {I, X, Y, Z}.
    """
    if len(text) != n:
        raise ValueError(
            f"Pauli string {text!r} has length {len(text)}, expected {n}"
        )
    return PauliString(text)


class PauliSum:
    """A real-weighted sum of Pauli strings on a fixed qubit count.

    Terms are canonicalized on construction: duplicate strings are merged
    by adding coefficients and terms with magnitude below
    ``COEFF_PRUNE_THRESHOLD`` are dropped.  Instances are immutable.

    Parameters
    ----------
    terms : iterable of (float, PauliString) pairs
    n : int
        Qubit count; every string must have this length.
    """

    def __init__(self, terms, n: int):
        if n < 1:
            raise ValueError("qubit count must be >= 1")
        merged: dict[str, float] = {}
        for coeff, string in terms:
            coeff = float(coeff)
            if not np.isfinite(coeff):
                raise ValueError(f"non-finite coefficient for {string}")
            if string.n != n:
                raise ValueError(
                    f"string {string} has {string.n} qubits, expected {n}"
                )
            merged[string.ops] = merged.get(string.ops, 0.0) + coeff
        self._n = n
        self._terms = tuple(
            (c, PauliString(ops))
            for ops, c in merged.items()
            if abs(c) >= COEFF_PRUNE_THRESHOLD
        )

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> tuple[tuple[float, PauliString], ...]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"{c:.6g}*{s}" for c, s in self._terms[:4])
        more = " + ..." if len(self._terms) > 4 else ""
        return f"PauliSum({body}{more}, n={self._n})"


@lru_cache(maxsize=4096)
def _string_action(ops: str) -> tuple[np.ndarray, np.ndarray]:
    """Precompute the action P|k> = phase[k] |perm[k]> of a Pauli string.

    X and Y flip the addressed bit; Y and Z contribute phases.  For basis
    index k:  P|k> = i^{#Y} * (-1)^{popcount(k & zy_mask)} |k ^ flip_mask>.
    Returned arrays give, for each output index j, the source index
    ``perm[j] = j ^ flip_mask`` and the amplitude factor ``phase[j]``
    applied to it.
    """
    n = len(ops)
    dim = 1 << n
    flip_mask = 0
    zy_mask = 0
    n_y = 0
    for i, ch in enumerate(ops):
        if ch in "XY":
            flip_mask |= 1 << i
        if ch in "ZY":
            zy_mask |= 1 << i
        if ch == "Y":
            n_y += 1
    idx = np.arange(dim)
    perm = idx ^ flip_mask
    parity = np.zeros(dim, dtype=np.int64)
    for b in range(n):
        if zy_mask >> b & 1:
            parity ^= (perm >> b) & 1
    phase = (1j ** n_y) * np.where(parity, -1.0, 1.0)
    return perm, phase.astype(complex)


def apply_pauli(string: PauliString, amplitudes: np.ndarray) -> np.ndarray:
    """Apply a Pauli string to amplitude array(s) along the last axis."""
    perm, phase = _string_action(string.ops)
    return amplitudes[..., perm] * phase


def dense_matrix(h: PauliSum, limit: int = DENSE_QUBIT_LIMIT) -> np.ndarray:
    """Materialize the 2^n x 2^n matrix of a Pauli sum.

    The realization is ``sum_P h_P * P[n-1] (x) ... (x) P[0]`` (little-
    endian).  Intended as an oracle and for small spectra only; refuses
    qubit counts above ``limit``.
    """
    if h.n > limit:
        raise ValueError(f"qubit count {h.n} exceeds dense limit {limit}")
    dim = 1 << h.n
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, string in h.terms:
        term = np.eye(1, dtype=complex)
        for ch in reversed(string.ops):
            term = np.kron(term, _PAULI_1Q[ch])
        out += coeff * term
    return out


def expectation_amps(h: PauliSum, amplitudes: np.ndarray) -> np.ndarray:
    """Batched <s|H|s> over the last axis, without validation.

    Returns the real part of the quadratic form for each leading index;
    used by the trainer's hot path where states are known normalized.
    """
    acc = np.zeros(amplitudes.shape[:-1])
    conj = amplitudes.conj()
    for coeff, string in h.terms:
        perm, phase = _string_action(string.ops)
        acc = acc + coeff * np.einsum(
            "...k,...k->...", conj, amplitudes[..., perm] * phase
        ).real
    return acc


def expectation(h: PauliSum, state) -> float:
    """Exact expectation value <s|H|s> of a Pauli sum, in hartree.

    Parameters
    ----------
    h : PauliSum
    state : State
        Normalized state on the same qubit count.

    Raises
    ------
    ValueError
        On dimension mismatch, or if the state norm deviates from 1 by
        more than ``NORM_TOLERANCE``.
    """
    amps = state.amplitudes
    if state.n != h.n:
        raise ValueError(f"state has {state.n} qubits, Hamiltonian has {h.n}")
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise ValueError(f"state is not normalized (norm={norm!r})")
    value = 0.0 + 0.0j
    for coeff, string in h.terms:
        value += coeff * np.vdot(amps, apply_pauli(string, amps))
    if abs(value.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {value.imag!r}")
    return float(value.real)
