"""Circuit constructors: encode layers and the RealAmplitudes ansatz.

Three circuit families are built here:

* ``encode0(b, n)`` — per-qubit Hadamard then Ry(b), the single-input
  encode layer feeding a bond length to every qubit.
* ``encode(angles)`` — per-qubit Hadamard then Ry(angles[i]), the
  general encode layer used to re-upload intermediate measurements.
* ``real_amplitudes(n, depth, params)`` — D repetitions of a block made
  of a staggered CX entangling layer followed by per-qubit Ry rotations.

The entangler wiring alternates nearest-neighbour pairs: for even n the
first sublayer is CX(0,1), CX(2,3), ..., CX(n-2,n-1) and the second is
CX(1,2), ..., CX(n-3,n-2); for odd n the second sublayer extends to
CX(n-2,n-1).  Rotation angle on qubit i of block d (1-based) is
``params[i + n*(d-1)]``, so a depth-D circuit carries exactly n*D
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevector import Gate, controlled_x, hadamard, rotation_y


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list on a fixed qubit count."""

    n: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < self.n:
                    raise ValueError(
                        f"gate {gate} addresses qubit {q} on {self.n}-qubit circuit"
                    )

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise ValueError("cannot concatenate circuits of different width")
        return Circuit(self.n, self.gates + other.gates)


@dataclass(frozen=True)
class PqcParams:
    """Rotation angles for a depth-D ansatz: exactly n*D values (radians)."""

    values: np.ndarray
    n: int
    depth: int

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if values.ndim != 1 or values.size != self.n * self.depth:
            raise ValueError(
                f"expected {self.n * self.depth} parameters "
                f"(n={self.n}, depth={self.depth}), got {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("parameters must be finite")
        object.__setattr__(self, "values", values)


def encode0(b: float, n: int) -> Circuit:
    """Single-input encode layer: Hadamard then Ry(b) on every qubit."""
    if n < 1:
        raise ValueError("need at least one qubit")
    if not np.isfinite(b):
        raise ValueError(f"bond-length angle must be finite, got {b!r}")
    return encode([b] * n)


def encode(angles) -> Circuit:
    """General encode layer: Hadamard then Ry(angles[i]) on each qubit i."""
    angles = np.asarray(angles, dtype=float)
    if angles.ndim != 1 or angles.size < 1:
        raise ValueError("angles must be a non-empty vector")
    if not np.all(np.isfinite(angles)):
        raise ValueError("encode angles must be finite")
    gates = []
    for i, a in enumerate(angles):
        gates.append(hadamard(i))
        gates.append(rotation_y(i, a))
    return Circuit(angles.size, tuple(gates))


def entangler_pairs(n: int) -> list[tuple[int, int]]:
    """The staggered CX wiring of one block, as (control, target) pairs."""
    first = [(i, i + 1) for i in range(0, n - 1, 2)]
    second = [(i, i + 1) for i in range(1, n - 1, 2)]
    return first + second


def real_amplitudes(n: int, depth: int, params: PqcParams) -> Circuit:
    """The alternating CX/Ry ansatz with ``depth`` repeated blocks.

    Each block applies the staggered entangling layer, then one Ry per
    qubit; there is no trailing rotation layer beyond the D blocks.
    """
    if n < 2:
        raise ValueError("ansatz needs at least 2 qubits")
    if params.n != n or params.depth != depth:
        raise ValueError(
            f"parameters sized for (n={params.n}, depth={params.depth}), "
            f"circuit wants (n={n}, depth={depth})"
        )
    pairs = entangler_pairs(n)
    gates = []
    for d in range(depth):
        for control, target in pairs:
            gates.append(controlled_x(control, target))
        for i in range(n):
            gates.append(rotation_y(i, params.values[i + n * d]))
    return Circuit(n, tuple(gates))
