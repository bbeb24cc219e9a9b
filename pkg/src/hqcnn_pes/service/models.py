"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class DatasetRef(BaseModel):
    """A dataset referenced by file path (the service runs co-located)."""

    dataset_path: str | None = Field(
        default=None,
        description="Dataset JSON path; defaults to the committed H2 dataset",
    )


class DatasetSummary(BaseModel):
    molecule: str
    basis: str
    mapping: str
    n_qubits: int
    entries: int
    bond_length_min: float
    bond_length_max: float
    fingerprint: str


class FciRow(BaseModel):
    bond_length: float
    e0_ref: float
    e1_ref: float


class FciResponse(BaseModel):
    dataset_fingerprint: str
    rows: list[FciRow]


class OptimizerSettingsModel(BaseModel):
    max_iterations: int = 1000
    gradient_norm_tolerance: float = 1e-5
    finite_difference_step: float = 1e-6
    restarts: int = 5
    seed: int = 0


class TrainRequest(DatasetRef):
    depth: int = 6
    weights: list[float] = [1.0, 0.5]
    train_points: list[float] = [0.45, 0.85, 1.25, 1.65, 2.05, 2.45]
    classical_layer: bool = True
    settings: OptimizerSettingsModel = OptimizerSettingsModel()


class ModelDocument(BaseModel):
    """A trained model in the model-file schema (JSON-portable)."""

    schema_version: int = 1
    kind: str = "model"
    config: dict
    theta: list[float]
    theta_cap: list[float]
    metadata: dict = {}
    dataset_fingerprint: str | None = None


class TrainResponse(BaseModel):
    model: ModelDocument
    final_cost: float
    iterations: int
    restart_index: int


class InferRequest(DatasetRef):
    model: ModelDocument
    grid: list[float] | None = None


class PesRow(BaseModel):
    bond_length: float
    e0_ref: float
    e1_ref: float
    energies: list[float]
    errors: list[float]


class InferResponse(BaseModel):
    rows: list[PesRow]
    max_error: float


class NoiseSweepRequest(DatasetRef):
    model: ModelDocument
    shots: list[int] = [1_000, 5_000, 10_000, 40_000, 100_000]
    repetitions: int = 10
    seed: int = 0
    grid: list[float] | None = None
    jobs: int = 1


class NoiseAggregateRow(BaseModel):
    shots: int
    repetitions: int
    mean_delta_e: list[float]
    std_delta_e: list[float]


class NoiseSweepResponse(BaseModel):
    aggregates: list[NoiseAggregateRow]


class ErrorResponse(BaseModel):
    detail: str
