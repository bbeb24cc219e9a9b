"""Exact n-qubit statevector simulation.

States are complex amplitude vectors of length 2^n with little-endian
qubit ordering (qubit 0 is the least significant bit of the basis
index).  Gate application uses in-place stride kernels over amplitude
pairs, O(2^n) per gate, with no matrix construction.

The low-level ``apply_*`` kernels act on the last axis of an arbitrary
amplitude array, so batches of states (shape ``(..., 2^n)``) evolve in
one call; the rotation kernel additionally broadcasts per-batch angles.
The public ``State``/``apply`` API wraps a single vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Largest supported qubit count.
MAX_QUBITS = 20

#: Gate kinds understood by ``apply``.
HADAMARD = "h"
ROTATION_Y = "ry"
CONTROLLED_X = "cx"
S_ADJOINT = "sdg"

_SQRT_HALF = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class Gate:
    """A single gate: Hadamard, Ry rotation, controlled-X, or S-adjoint.

    ``qubits`` holds the target index, or ``(control, target)`` for CX.
    ``angle`` is only meaningful for Ry (radians).
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in (HADAMARD, ROTATION_Y, CONTROLLED_X, S_ADJOINT):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == CONTROLLED_X:
            if len(self.qubits) != 2:
                raise ValueError("controlled-X takes (control, target)")
            if self.qubits[0] == self.qubits[1]:
                raise ValueError("controlled-X needs control != target")
        elif len(self.qubits) != 1:
            raise ValueError(f"{self.kind} gate takes one qubit")
        if self.kind == ROTATION_Y:
            if self.angle is None or not np.isfinite(self.angle):
                raise ValueError("Ry needs a finite angle")

    def inverse(self) -> "Gate":
        if self.kind == ROTATION_Y:
            return Gate(ROTATION_Y, self.qubits, -self.angle)
        if self.kind == S_ADJOINT:
            raise ValueError("S-adjoint inverse (S) is not in the gate set")
        return self


def hadamard(qubit: int) -> Gate:
    return Gate(HADAMARD, (qubit,))


def rotation_y(qubit: int, angle: float) -> Gate:
    return Gate(ROTATION_Y, (qubit,), float(angle))


def controlled_x(control: int, target: int) -> Gate:
    return Gate(CONTROLLED_X, (control, target))


def s_adjoint(qubit: int) -> Gate:
    return Gate(S_ADJOINT, (qubit,))


@dataclass(frozen=True)
class State:
    """An n-qubit pure state as a complex amplitude vector of length 2^n."""

    amplitudes: np.ndarray
    n: int = field(default=0)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        n = self.n or int(amps.size).bit_length() - 1
        if amps.ndim != 1 or amps.size != 1 << n:
            raise ValueError(
                f"amplitude vector of size {amps.size} does not match n={n}"
            )
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "n", n)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def basis_state(n: int, index: int) -> State:
    """The computational basis state |index> on n qubits.

    Little-endian: ``basis_state(4, 1)`` excites qubit 0.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count {n} outside [1, {MAX_QUBITS}]")
    if not 0 <= index < 1 << n:
        raise ValueError(f"basis index {index} out of range for n={n}")
    amps = np.zeros(1 << n, dtype=complex)
    amps[index] = 1.0
    return State(amps, n)


def _split(amps: np.ndarray, n: int, qubit: int):
    """View the last axis as (upper, 2, lower) with lower = 2^qubit."""
    lead = amps.shape[:-1]
    return amps.reshape(*lead, 1 << (n - qubit - 1), 2, 1 << qubit)


def apply_hadamard(amps: np.ndarray, n: int, qubit: int) -> None:
    a = _split(amps, n, qubit)
    lo = a[..., 0, :].copy()
    hi = a[..., 1, :]
    a[..., 0, :] = (lo + hi) * _SQRT_HALF
    a[..., 1, :] = (lo - hi) * _SQRT_HALF


def apply_rotation_y(amps: np.ndarray, n: int, qubit: int, angle) -> None:
    """Ry(angle) kernel; ``angle`` may be a scalar or a batch-shaped array."""
    half = np.asarray(angle) / 2.0
    c, s = np.cos(half), np.sin(half)
    if c.ndim:  # per-batch angles broadcast over the amplitude axes
        c = c.reshape(*c.shape, 1, 1)
        s = s.reshape(*s.shape, 1, 1)
    a = _split(amps, n, qubit)
    lo = a[..., 0, :].copy()
    hi = a[..., 1, :]
    a[..., 0, :] = c * lo - s * hi
    a[..., 1, :] = s * lo + c * hi


def apply_controlled_x(amps: np.ndarray, n: int, control: int, target: int) -> None:
    dim = 1 << n
    idx = np.arange(dim)
    sel = (idx >> control & 1).astype(bool)
    swapped = np.where(sel, idx ^ (1 << target), idx)
    amps[...] = amps[..., swapped]


def apply_s_adjoint(amps: np.ndarray, n: int, qubit: int) -> None:
    a = _split(amps, n, qubit)
    a[..., 1, :] *= -1j


def apply_gate_inplace(amps: np.ndarray, n: int, gate: Gate) -> None:
    """Apply one gate to amplitude array(s) in place (last axis)."""
    for q in gate.qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for n={n}")
    if gate.kind == HADAMARD:
        apply_hadamard(amps, n, gate.qubits[0])
    elif gate.kind == ROTATION_Y:
        apply_rotation_y(amps, n, gate.qubits[0], gate.angle)
    elif gate.kind == CONTROLLED_X:
        apply_controlled_x(amps, n, *gate.qubits)
    else:
        apply_s_adjoint(amps, n, gate.qubits[0])


def apply(state: State, gate: Gate) -> State:
    """Apply a gate to a state, returning the new state."""
    amps = state.amplitudes.copy()
    apply_gate_inplace(amps, state.n, gate)
    return State(amps, state.n)


def apply_all(state: State, gates) -> State:
    """Apply an ordered gate sequence to a state."""
    amps = state.amplitudes.copy()
    for gate in gates:
        apply_gate_inplace(amps, state.n, gate)
    return State(amps, state.n)


def z_expectation_amps(amps: np.ndarray, n: int, qubit: int) -> np.ndarray:
    """Batched <Z_qubit>: sum of (-1)^bit |amplitude|^2 over the last axis."""
    if not 0 <= qubit < n:
        raise ValueError(f"qubit index {qubit} out of range for n={n}")
    probs = np.abs(amps) ** 2
    signs = 1.0 - 2.0 * (np.arange(1 << n) >> qubit & 1)
    return probs @ signs


def z_expectation(state: State, qubit: int) -> float:
    """Expectation value of Pauli-Z on one qubit, in [-1, 1]."""
    return float(z_expectation_amps(state.amplitudes, state.n, qubit))
