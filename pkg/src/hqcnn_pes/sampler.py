"""Shot-based estimation of Pauli expectations and energies.

Instead of reading observables off the statevector, outcomes are drawn
from the measurement distribution and expectations are estimated as
means of +-1 parities.  Each non-identity Pauli term is measured in its
own run with its own shot budget (no commuting-term grouping); identity
terms are exact and consume no shots.

Measurement bases: an X factor is rotated into the Z basis by a
Hadamard, a Y factor by S-adjoint followed by Hadamard, Z and I need
nothing.

Randomness comes from numpy's counter-based Philox generator, so every
estimate is reproducible from its seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit
from .hqcnn import Model, _first_layer_circuit, _second_layer_circuit
from .circuits import PqcParams
from .pauli import PauliString, PauliSum
from .statevector import Gate, State, apply_all, basis_state, hadamard, s_adjoint


@dataclass(frozen=True)
class ShotPlan:
    """Shot budget for one energy estimate.

    ``shots_per_term`` is the number of measurements for each
    non-identity Pauli term (and for the intermediate Z-basis run);
    ``repetitions`` is how many independent estimates a study averages.
    """

    shots_per_term: int
    seed: int = 0
    repetitions: int = 1

    def __post_init__(self):
        if self.shots_per_term < 1:
            raise ValueError("shots_per_term must be >= 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


def make_rng(seed) -> np.random.Generator:
    """Seeded counter-based generator (Philox) used for all sampling."""
    return np.random.Generator(np.random.Philox(seed))


def sample_counts(state: State, shots: int, rng: np.random.Generator) -> dict[int, int]:
    """Multinomial draw of computational-basis outcomes.

    Returns a map basis index -> count over the observed outcomes;
    counts sum to ``shots``.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = state.probabilities()
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    return {int(k): int(c) for k, c in enumerate(counts) if c}


def _measurement_rotation(term: PauliString) -> list[Gate]:
    gates = []
    for i, ch in enumerate(term.ops):
        if ch == "X":
            gates.append(hadamard(i))
        elif ch == "Y":
            gates.append(s_adjoint(i))
            gates.append(hadamard(i))
    return gates


def _parity_signs(n: int, support_mask: int) -> np.ndarray:
    idx = np.arange(1 << n)
    parity = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        if support_mask >> b & 1:
            parity ^= (idx >> b) & 1
    return np.where(parity, -1.0, 1.0)


def estimate_pauli(
    prep: Circuit,
    term: PauliString,
    shots: int,
    rng: np.random.Generator,
    initial: State | None = None,
) -> float:
    """Shot estimate of <P> after running ``prep`` from ``initial``.

    Identity terms return exactly 1.0 with no sampling.  Otherwise the
    term's basis rotations are appended, ``shots`` outcomes are drawn,
    and the mean +-1 parity over the term's support is returned.
    """
    if term.n != prep.n:
        raise ValueError(f"term on {term.n} qubits, circuit on {prep.n}")
    if term.is_identity:
        return 1.0
    initial = initial or basis_state(prep.n, 0)
    rotated = apply_all(initial, prep.gates + tuple(_measurement_rotation(term)))
    probs = rotated.probabilities()
    counts = rng.multinomial(shots, probs / probs.sum())
    mask = 0
    for q in term.support:
        mask |= 1 << q
    signs = _parity_signs(prep.n, mask)
    return float(counts @ signs) / shots


def estimate_energy(
    prep: Circuit,
    h: PauliSum,
    plan: ShotPlan,
    rng: np.random.Generator | None = None,
    initial: State | None = None,
) -> float:
    """Shot estimate of the energy: sum of h_P * estimate_pauli(P).

    Every non-identity term receives ``plan.shots_per_term`` fresh shots.
    """
    rng = make_rng(plan.seed) if rng is None else rng
    total = 0.0
    for coeff, term in h.terms:
        if term.is_identity:
            total += coeff
        else:
            total += coeff * estimate_pauli(
                prep, term, plan.shots_per_term, rng, initial
            )
    return total


def sampled_z_expectations(
    prep: Circuit,
    shots: int,
    rng: np.random.Generator,
    initial: State | None = None,
) -> np.ndarray:
    """Per-qubit <Z> estimates from a single Z-basis measurement run."""
    initial = initial or basis_state(prep.n, 0)
    final = apply_all(initial, prep.gates)
    probs = final.probabilities()
    counts = rng.multinomial(shots, probs / probs.sum())
    idx = np.arange(probs.size)
    z = np.empty(prep.n)
    for q in range(prep.n):
        signs = 1.0 - 2.0 * (idx >> q & 1)
        z[q] = float(counts @ signs) / shots
    return z


class SampledEvaluator:
    """Shot-based expectation backend for the network's forward pass.

    The intermediate Z expectations come from one Z-basis run serving
    all qubits simultaneously; the final energy gets one run per
    Hamiltonian term.
    """

    def __init__(self, shots_per_term: int, rng: np.random.Generator):
        if shots_per_term < 1:
            raise ValueError("shots_per_term must be >= 1")
        self.shots_per_term = shots_per_term
        self.rng = rng

    def z_expectations(self, circuit: Circuit, initial: State) -> np.ndarray:
        return sampled_z_expectations(
            circuit, self.shots_per_term, self.rng, initial
        )

    def energy(self, circuit: Circuit, initial: State, h: PauliSum) -> float:
        plan = ShotPlan(self.shots_per_term)
        return estimate_energy(circuit, h, plan, self.rng, initial)


def noisy_inference(
    b: float,
    model: Model,
    j: int,
    h: PauliSum,
    plan: ShotPlan,
    rng: np.random.Generator | None = None,
) -> float:
    """Full inference with sampling noise in both network layers.

    The intermediate z-vector is estimated from shots on the first
    circuit, then each Pauli term of the final energy is estimated from
    its own shots.
    """
    cfg = model.config
    if not cfg.classical_layer:
        raise ValueError("noisy inference needs the classical-layer variant")
    if not 0 <= j < len(cfg.reference_states):
        raise ValueError(f"branch index {j} out of range")
    rng = make_rng(plan.seed) if rng is None else rng
    theta = PqcParams(model.theta, cfg.n, cfg.depth)
    theta_cap = PqcParams(model.theta_cap, cfg.n, cfg.depth)
    first = _first_layer_circuit(b, theta, cfg)
    z = sampled_z_expectations(first, plan.shots_per_term, rng)
    second = _second_layer_circuit(z, theta_cap, cfg)
    ref = basis_state(cfg.n, cfg.reference_states[j])
    return estimate_energy(second, h, plan, rng, ref)
