"""The two-layer quantum network with an intermediate classical layer.

The surrogate maps a bond length ``b`` to energies of the ground and
first-excited branch without any optimization at inference time:

1. first layer: ``U(theta) . encode0(b) |0...0>``; measure per-qubit
   Pauli-Z expectations ``z_i`` (the classical nonlinearity),
2. second layer: ``U(Theta) . encode(pi * z) |ref_j>`` for each of the
   mutually orthogonal basis reference states,
3. energy: expectation of the qubit Hamiltonian at ``b`` in each branch.

Training minimizes the weighted sum over branches of mean energies over
the training bond lengths; weights are strictly ordered so branch j
converges to the j-th eigenstate (the subspace-search scheme).

The ``classical_layer=False`` variant removes the intermediate
measurement: a single ansatz of doubled depth acts directly on the
encoded state, with one parameter vector of length 2*n*D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .circuits import (
    Circuit,
    PqcParams,
    encode,
    encode0,
    entangler_pairs,
    real_amplitudes,
)
from .pauli import PauliSum, expectation, expectation_amps
from .statevector import (
    State,
    apply_all,
    apply_controlled_x,
    apply_hadamard,
    apply_rotation_y,
    basis_state,
    z_expectation,
    z_expectation_amps,
)


@dataclass(frozen=True)
class ModelConfig:
    """Architecture and training-setup metadata for the surrogate.

    ``weights`` must be non-increasing with a positive first entry;
    trailing zeros reduce the model to fewer active branches (a single
    ``(1, 0)`` branch reproduces the ground-state-only network).
    ``reference_states`` are pairwise-distinct computational basis
    indices, orthogonal by construction.
    """

    n: int
    depth: int
    weights: tuple[float, ...] = (1.0, 0.5)
    reference_states: tuple[int, ...] = (0, 1)
    classical_layer: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 qubits")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        w = self.weights
        if not w or w[0] <= 0 or any(x < 0 for x in w):
            raise ValueError("weights need a positive leading entry, none negative")
        if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
            raise ValueError("weights must be non-increasing")
        refs = self.reference_states
        if len(refs) < len(w):
            raise ValueError("need a reference state per weight")
        if len(set(refs)) != len(refs):
            raise ValueError("reference states must be pairwise distinct")
        if any(not 0 <= r < 1 << self.n for r in refs):
            raise ValueError("reference state index out of range")

    @property
    def layer_params(self) -> int:
        """Parameter count per quantum layer."""
        return self.n * self.depth

    @property
    def total_params(self) -> int:
        """Total trainable parameters (2nD, with or without classical layer)."""
        return 2 * self.n * self.depth

    @property
    def active_branches(self) -> int:
        """Number of branches with non-zero weight."""
        return sum(1 for w in self.weights if w > 0)


@dataclass(frozen=True)
class Model:
    """A trained surrogate: parameter vectors plus their configuration.

    With a classical layer, ``theta`` and ``theta_cap`` each hold n*D
    angles for the first and second ansatz.  Without one, ``theta``
    holds the single 2nD-angle vector and ``theta_cap`` is empty.
    """

    config: ModelConfig
    theta: np.ndarray
    theta_cap: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        theta_cap = np.asarray(self.theta_cap, dtype=float)
        cfg = self.config
        if cfg.classical_layer:
            if theta.size != cfg.layer_params or theta_cap.size != cfg.layer_params:
                raise ValueError(
                    f"expected two parameter vectors of length {cfg.layer_params}"
                )
        else:
            if theta.size != cfg.total_params or theta_cap.size != 0:
                raise ValueError(
                    f"expected one parameter vector of length {cfg.total_params}"
                )
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "theta_cap", theta_cap)


class Evaluator(Protocol):
    """Expectation backend: exact statevector or shot-sampled."""

    def z_expectations(self, circuit: Circuit, initial: State) -> np.ndarray: ...

    def energy(self, circuit: Circuit, initial: State, h: PauliSum) -> float: ...


class ExactEvaluator:
    """Noise-free backend reading observables off the statevector."""

    def z_expectations(self, circuit: Circuit, initial: State) -> np.ndarray:
        final = apply_all(initial, circuit.gates)
        return np.array(
            [z_expectation(final, q) for q in range(circuit.n)]
        )

    def energy(self, circuit: Circuit, initial: State, h: PauliSum) -> float:
        final = apply_all(initial, circuit.gates)
        return expectation(h, final)


def _first_layer_circuit(b: float, theta: PqcParams, cfg: ModelConfig) -> Circuit:
    return encode0(b, cfg.n) + real_amplitudes(cfg.n, cfg.depth, theta)


def _second_layer_circuit(
    z: np.ndarray, theta_cap: PqcParams, cfg: ModelConfig
) -> Circuit:
    return encode(np.pi * z) + real_amplitudes(cfg.n, cfg.depth, theta_cap)


def _ablation_circuit(b: float, theta: np.ndarray, cfg: ModelConfig) -> Circuit:
    params = PqcParams(theta, cfg.n, 2 * cfg.depth)
    return encode0(b, cfg.n) + real_amplitudes(cfg.n, 2 * cfg.depth, params)


def first_layer_z(
    b: float,
    theta: PqcParams,
    cfg: ModelConfig,
    evaluator: Evaluator | None = None,
) -> np.ndarray:
    """Per-qubit Z expectations of the first layer at bond length ``b``."""
    if not cfg.classical_layer:
        raise ValueError("model variant has no classical layer")
    evaluator = evaluator or ExactEvaluator()
    circuit = _first_layer_circuit(b, theta, cfg)
    return evaluator.z_expectations(circuit, basis_state(cfg.n, 0))


def forward_energy(
    b: float,
    theta: PqcParams | np.ndarray,
    theta_cap: PqcParams | None,
    ref: int,
    h: PauliSum,
    cfg: ModelConfig,
    evaluator: Evaluator | None = None,
) -> float:
    """Energy of one branch of the network at bond length ``b``.

    ``ref`` is the computational-basis index of the branch's reference
    state.  Without a classical layer, ``theta`` is the single 2nD
    vector and ``theta_cap`` is ignored.
    """
    evaluator = evaluator or ExactEvaluator()
    if not 0 <= ref < 1 << cfg.n:
        raise ValueError(f"reference index {ref} out of range")
    if cfg.classical_layer:
        z = first_layer_z(b, theta, cfg, evaluator)
        circuit = _second_layer_circuit(z, theta_cap, cfg)
    else:
        circuit = _ablation_circuit(b, np.asarray(theta, dtype=float), cfg)
    return evaluator.energy(circuit, basis_state(cfg.n, ref), h)


def split_params(x: np.ndarray, cfg: ModelConfig) -> tuple[np.ndarray, np.ndarray]:
    """Split a flat optimization vector into (theta, theta_cap)."""
    x = np.asarray(x, dtype=float)
    if x.size != cfg.total_params:
        raise ValueError(f"expected {cfg.total_params} parameters, got {x.size}")
    if not cfg.classical_layer:
        return x, np.empty(0)
    half = cfg.layer_params
    return x[:half], x[half:]


def _apply_ansatz_many(
    amps: np.ndarray, n: int, depth: int, theta_all: np.ndarray
) -> None:
    """Apply the ansatz with per-batch parameter rows.

    ``amps`` has shape ``(*lead, M, 2^n)`` and ``theta_all`` shape
    ``(*lead, n*depth)``; each leading index evolves under its own
    angles, shared across the M bond-length rows.
    """
    pairs = entangler_pairs(n)
    for d in range(depth):
        for control, target in pairs:
            apply_controlled_x(amps, n, control, target)
        for i in range(n):
            angle = theta_all[..., i + n * d]
            apply_rotation_y(amps, n, i, angle[..., np.newaxis])


def _encode_many(amps: np.ndarray, n: int, angles: np.ndarray) -> None:
    """Hadamard + Ry encode with per-qubit angle arrays.

    ``angles`` has shape broadcastable to ``(*batch, n)`` where batch is
    ``amps.shape[:-1]``.
    """
    for q in range(n):
        apply_hadamard(amps, n, q)
        apply_rotation_y(amps, n, q, angles[..., q])


def network_branch_amps(
    theta_all: np.ndarray,
    theta_cap_all: np.ndarray | None,
    bs: np.ndarray,
    cfg: ModelConfig,
) -> list[np.ndarray]:
    """Final branch amplitudes, shape ``(*lead, M, 2^n)`` per branch.

    ``theta_all`` may carry arbitrary leading batch dimensions (used for
    finite-difference gradients, where every row is a perturbed
    parameter vector); ``bs`` is the vector of M bond lengths.
    """
    n = cfg.n
    dim = 1 << n
    lead = theta_all.shape[:-1]
    m = bs.size
    ones = (1,) * len(lead)
    refs = cfg.reference_states[: cfg.active_branches]
    b_angles = np.broadcast_to(bs[:, np.newaxis], (*ones, m, n))
    if not cfg.classical_layer:
        out = []
        for ref in refs:
            amps = np.zeros((*lead, m, dim), dtype=complex)
            amps[..., ref] = 1.0
            _encode_many(amps, n, b_angles)
            _apply_ansatz_many(amps, n, 2 * cfg.depth, theta_all)
            out.append(amps)
        return out
    amps = np.zeros((*lead, m, dim), dtype=complex)
    amps[..., 0] = 1.0
    _encode_many(amps, n, b_angles)
    _apply_ansatz_many(amps, n, cfg.depth, theta_all)
    z = np.stack(
        [z_expectation_amps(amps, n, q) for q in range(n)], axis=-1
    )  # (*lead, M, n)
    out = []
    for ref in refs:
        branch = np.zeros((*lead, m, dim), dtype=complex)
        branch[..., ref] = 1.0
        _encode_many(branch, n, np.pi * z)
        _apply_ansatz_many(branch, n, cfg.depth, theta_cap_all)
        out.append(branch)
    return out


def branch_energies(
    theta: np.ndarray,
    theta_cap: np.ndarray,
    dataset_items,
    cfg: ModelConfig,
) -> np.ndarray:
    """Exact branch energies over training points, shape (points, branches).

    Batched over bond lengths; this is the trainer's hot path.
    """
    items = list(dataset_items)
    if not items:
        raise ValueError("empty training set")
    bs = np.array([b for b, _ in items], dtype=float)
    theta = np.asarray(theta, dtype=float)
    theta_cap = None if theta_cap is None else np.asarray(theta_cap, dtype=float)
    branch_amps = network_branch_amps(theta, theta_cap, bs, cfg)
    out = np.empty((len(items), len(branch_amps)))
    for m, (_, h) in enumerate(items):
        for j, amps in enumerate(branch_amps):
            out[m, j] = expectation_amps(h, amps[m])
    return out


def cost(
    theta: np.ndarray,
    theta_cap: np.ndarray,
    dataset_items,
    cfg: ModelConfig,
) -> float:
    """The weighted training cost: sum_j w_j * mean_m E_j(b_m)."""
    energies = branch_energies(theta, theta_cap, dataset_items, cfg)
    means = energies.mean(axis=0)
    weights = np.array(cfg.weights[: cfg.active_branches])
    return float(weights @ means)


def cost_many(xs: np.ndarray, dataset_items, cfg: ModelConfig) -> np.ndarray:
    """Training cost at many flat parameter vectors at once.

    ``xs`` has shape ``(..., total_params)``; one batched statevector
    pass serves every row, which makes finite-difference gradients about
    as cheap as a handful of single cost evaluations.
    """
    xs = np.asarray(xs, dtype=float)
    items = list(dataset_items)
    if not items:
        raise ValueError("empty training set")
    bs = np.array([b for b, _ in items], dtype=float)
    if cfg.classical_layer:
        half = cfg.layer_params
        theta_all, theta_cap_all = xs[..., :half], xs[..., half:]
    else:
        theta_all, theta_cap_all = xs, None
    branch_amps = network_branch_amps(theta_all, theta_cap_all, bs, cfg)
    weights = cfg.weights[: cfg.active_branches]
    acc = np.zeros(xs.shape[:-1])
    for m, (_, h) in enumerate(items):
        for w, amps in zip(weights, branch_amps):
            acc = acc + w * expectation_amps(h, amps[..., m, :])
    return acc / len(items)


def infer(
    b: float,
    model: Model,
    j: int,
    h: PauliSum,
    evaluator: Evaluator | None = None,
) -> float:
    """Surrogate energy of branch ``j`` at bond length ``b`` (no training)."""
    cfg = model.config
    if not 0 <= j < len(cfg.reference_states):
        raise ValueError(f"branch index {j} out of range")
    if not cfg.classical_layer and j > 0:
        raise ValueError("variant without classical layer has a single branch")
    ref = cfg.reference_states[j]
    if cfg.classical_layer:
        theta = PqcParams(model.theta, cfg.n, cfg.depth)
        theta_cap = PqcParams(model.theta_cap, cfg.n, cfg.depth)
        return forward_energy(b, theta, theta_cap, ref, h, cfg, evaluator)
    return forward_energy(b, model.theta, None, ref, h, cfg, evaluator)
