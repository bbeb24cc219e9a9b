"""Surrogate-model inference of H2 potential energy surfaces.

A two-layer quantum network with an intermediate classical measurement
layer is trained against exact statevector simulation to reproduce the
ground- and first-excited-state dissociation curve of molecular
hydrogen, and can then be evaluated exactly or under simulated
measurement shot noise.
"""

__version__ = "0.1.0"

from .circuits import Circuit, PqcParams, encode, encode0, real_amplitudes
from .hqcnn import (
    ExactEvaluator,
    Model,
    ModelConfig,
    cost,
    first_layer_z,
    forward_energy,
    infer,
)
from .pauli import PauliString, PauliSum, dense_matrix, expectation, parse_pauli_string
from .persistence import (
    Dataset,
    default_dataset_path,
    load_dataset,
    load_model,
    save_model,
)
from .sampler import ShotPlan, estimate_energy, estimate_pauli, noisy_inference
from .spectra import Spectrum, eigenvalues, reference_energies
from .statevector import Gate, State, apply, basis_state, z_expectation
from .trainer import OptimizerSettings, TrainReport, bfgs_minimize, train
from .workflows import CHEMICAL_ACCURACY, DEFAULT_TRAIN_POINTS
