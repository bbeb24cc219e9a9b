"""FastAPI service wrapping the core package.

Endpoints mirror the CLI subcommands; models travel inline as JSON
documents in the model-file schema, datasets are referenced by path on
the service host.  Run with::

    uvicorn hqcnn_pes.service.app:app
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__, workflows
from ..hqcnn import Model, ModelConfig
from ..persistence import FileFormatError, default_dataset_path, load_dataset
from ..trainer import OptimizerSettings
from .models import (
    DatasetRef,
    DatasetSummary,
    FciResponse,
    FciRow,
    InferRequest,
    InferResponse,
    ModelDocument,
    NoiseAggregateRow,
    NoiseSweepRequest,
    NoiseSweepResponse,
    PesRow,
    TrainRequest,
    TrainResponse,
)

app = FastAPI(
    title="hqcnn-pes",
    version=__version__,
    description="Surrogate-model inference of H2 potential energy surfaces",
)


def _load_dataset(ref: DatasetRef):
    path = ref.dataset_path or default_dataset_path()
    try:
        return load_dataset(path)
    except FileNotFoundError as err:
        raise HTTPException(status_code=404, detail=str(err)) from err
    except FileFormatError as err:
        raise HTTPException(status_code=422, detail=str(err)) from err


def _model_from_document(doc: ModelDocument) -> Model:
    try:
        cfg = ModelConfig(
            n=int(doc.config["n"]),
            depth=int(doc.config["depth"]),
            weights=tuple(doc.config["weights"]),
            reference_states=tuple(doc.config["reference_states"]),
            classical_layer=bool(doc.config.get("classical_layer", True)),
            seed=int(doc.config.get("seed", 0)),
        )
        return Model(
            config=cfg,
            theta=np.asarray(doc.theta, dtype=float),
            theta_cap=np.asarray(doc.theta_cap, dtype=float),
            metadata=doc.metadata,
        )
    except (KeyError, TypeError, ValueError) as err:
        raise HTTPException(status_code=422, detail=f"invalid model: {err}") from err


def _model_to_document(model: Model, fingerprint: str | None) -> ModelDocument:
    cfg = model.config
    return ModelDocument(
        config={
            "n": cfg.n,
            "depth": cfg.depth,
            "weights": list(cfg.weights),
            "reference_states": list(cfg.reference_states),
            "classical_layer": cfg.classical_layer,
            "seed": cfg.seed,
        },
        theta=[float(v) for v in model.theta],
        theta_cap=[float(v) for v in model.theta_cap],
        metadata=model.metadata,
        dataset_fingerprint=fingerprint,
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/dataset/validate", response_model=DatasetSummary)
def validate_dataset(request: DatasetRef) -> DatasetSummary:
    dataset = _load_dataset(request)
    return DatasetSummary(
        molecule=dataset.molecule,
        basis=dataset.basis,
        mapping=dataset.mapping,
        n_qubits=dataset.n,
        entries=len(dataset.entries),
        bond_length_min=float(dataset.bond_lengths[0]),
        bond_length_max=float(dataset.bond_lengths[-1]),
        fingerprint=dataset.fingerprint,
    )


@app.post("/fci", response_model=FciResponse)
def fci(request: DatasetRef) -> FciResponse:
    dataset = _load_dataset(request)
    rows = [FciRow(**row) for row in workflows.fci_curve(dataset)]
    return FciResponse(dataset_fingerprint=dataset.fingerprint, rows=rows)


@app.post("/train", response_model=TrainResponse)
def train(request: TrainRequest) -> TrainResponse:
    dataset = _load_dataset(request)
    settings = OptimizerSettings(
        max_iterations=request.settings.max_iterations,
        gradient_norm_tolerance=request.settings.gradient_norm_tolerance,
        finite_difference_step=request.settings.finite_difference_step,
        restarts=request.settings.restarts,
        seed=request.settings.seed,
    )
    try:
        model = workflows.train_model(
            dataset,
            depth=request.depth,
            weights=tuple(request.weights),
            train_points=tuple(request.train_points),
            settings=settings,
            classical_layer=request.classical_layer,
        )
    except (KeyError, ValueError) as err:
        raise HTTPException(status_code=422, detail=str(err)) from err
    return TrainResponse(
        model=_model_to_document(model, dataset.fingerprint),
        final_cost=model.metadata["final_cost"],
        iterations=model.metadata["iterations"],
        restart_index=model.metadata["restart_index"],
    )


@app.post("/infer", response_model=InferResponse)
def infer(request: InferRequest) -> InferResponse:
    dataset = _load_dataset(request)
    model = _model_from_document(request.model)
    try:
        rows = workflows.pes_table(model, dataset, request.grid)
    except (KeyError, ValueError) as err:
        raise HTTPException(status_code=422, detail=str(err)) from err
    branches = model.config.active_branches if model.config.classical_layer else 1
    out = [
        PesRow(
            bond_length=row["bond_length"],
            e0_ref=row["e0_ref"],
            e1_ref=row["e1_ref"],
            energies=[row[f"e{j}"] for j in range(branches)],
            errors=[row[f"delta_e{j}"] for j in range(branches)],
        )
        for row in rows
    ]
    max_error = max(max(r.errors) for r in out)
    return InferResponse(rows=out, max_error=max_error)


@app.post("/noise-sweep", response_model=NoiseSweepResponse)
def noise_sweep(request: NoiseSweepRequest) -> NoiseSweepResponse:
    dataset = _load_dataset(request)
    model = _model_from_document(request.model)
    try:
        _, aggregates = workflows.noise_sweep(
            model,
            dataset,
            shots_list=tuple(request.shots),
            repetitions=request.repetitions,
            seed=request.seed,
            grid=request.grid,
            jobs=request.jobs,
        )
    except (KeyError, ValueError) as err:
        raise HTTPException(status_code=422, detail=str(err)) from err
    branches = model.config.active_branches
    rows = [
        NoiseAggregateRow(
            shots=agg["shots"],
            repetitions=agg["repetitions"],
            mean_delta_e=[agg[f"mean_delta_e{j}"] for j in range(branches)],
            std_delta_e=[
                agg[f"std_delta_e{j}"]
                if not math.isnan(agg[f"std_delta_e{j}"])
                else -1.0
                for j in range(branches)
            ],
        )
        for agg in aggregates
    ]
    return NoiseSweepResponse(aggregates=rows)
