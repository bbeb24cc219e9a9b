"""High-level operations shared by the CLI and the HTTP service.

Each function takes plain data in and returns plain rows/objects out;
output formatting (CSV, JSON responses) lives with the callers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import hqcnn, sampler, spectra, trainer
from .persistence import Dataset

#: The six training bond lengths used throughout (angstrom).
DEFAULT_TRAIN_POINTS = (0.45, 0.85, 1.25, 1.65, 2.05, 2.45)

#: 1 kcal/mol in hartree, the chemical-accuracy target.
CHEMICAL_ACCURACY = 0.001593

DEFAULT_SHOTS_SWEEP = (1_000, 5_000, 10_000, 40_000, 100_000)


def fci_curve(dataset: Dataset) -> list[dict]:
    """Exact reference energies for every dataset entry."""
    rows = []
    for b, h in dataset.entries:
        e0_ref, e1_ref = spectra.reference_energies(h)
        rows.append({"bond_length": b, "e0_ref": e0_ref, "e1_ref": e1_ref})
    return rows


def train_model(
    dataset: Dataset,
    depth: int,
    weights: tuple[float, ...],
    train_points=DEFAULT_TRAIN_POINTS,
    settings: trainer.OptimizerSettings | None = None,
    classical_layer: bool = True,
    reference_states: tuple[int, ...] | None = None,
) -> hqcnn.Model:
    """Fit a surrogate on the dataset's entries at the training points."""
    refs = reference_states
    if refs is None:
        refs = tuple(range(max(len(weights), 2)))
    cfg = hqcnn.ModelConfig(
        n=dataset.n,
        depth=depth,
        weights=tuple(weights),
        reference_states=refs,
        classical_layer=classical_layer,
        seed=(settings or trainer.OptimizerSettings()).seed,
    )
    items = dataset.subset(train_points)
    return trainer.train(cfg, items, settings)


def pes_table(model: hqcnn.Model, dataset: Dataset, grid=None) -> list[dict]:
    """Inferred and reference energies over a bond-length grid.

    Every grid point must be a dataset entry; there is no interpolation.
    Branches beyond the model's active ones are omitted.
    """
    grid = dataset.bond_lengths if grid is None else np.asarray(grid, dtype=float)
    branches = model.config.active_branches if model.config.classical_layer else 1
    rows = []
    for b in grid:
        h = dataset.hamiltonian_at(float(b))
        e0_ref, e1_ref = spectra.reference_energies(h)
        row = {"bond_length": float(b), "e0_ref": e0_ref, "e1_ref": e1_ref}
        for j in range(branches):
            energy = hqcnn.infer(float(b), model, j, h)
            row[f"e{j}"] = energy
            row[f"delta_e{j}"] = abs(energy - (e0_ref, e1_ref)[j])
        rows.append(row)
    return rows


def max_inference_error(model: hqcnn.Model, dataset: Dataset, grid=None) -> float:
    """Largest |inferred - reference| over the grid, across branches."""
    rows = pes_table(model, dataset, grid)
    branches = model.config.active_branches if model.config.classical_layer else 1
    return max(row[f"delta_e{j}"] for row in rows for j in range(branches))


def _noisy_point(args):
    model, b, h, refs, shots, rep_seed = args
    rng = sampler.make_rng(rep_seed)
    plan = sampler.ShotPlan(shots_per_term=shots)
    energies = [
        sampler.noisy_inference(b, model, j, h, plan, rng)
        for j in range(len(refs))
    ]
    return energies


def noise_sweep(
    model: hqcnn.Model,
    dataset: Dataset,
    shots_list=DEFAULT_SHOTS_SWEEP,
    repetitions: int = 10,
    seed: int = 0,
    grid=None,
    jobs: int = 1,
) -> tuple[list[dict], list[dict]]:
    """Shot-noise study over the grid.

    Returns (detail_rows, aggregate_rows): one detail row per
    (shots, bond length, repetition) with branch estimates and absolute
    errors, and one aggregate row per shot count with the mean/std of
    the errors pooled over grid points and repetitions.

    Seeds are derived per (shots, repetition, point), so results are
    deterministic for a fixed ``seed`` and independent of ``jobs``.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    grid = dataset.bond_lengths if grid is None else np.asarray(grid, dtype=float)
    branches = model.config.active_branches
    refs = model.config.reference_states[:branches]
    points = [(float(b), dataset.hamiltonian_at(float(b))) for b in grid]
    references = {
        b: spectra.reference_energies(h)[:branches] for b, h in points
    }
    detail_rows = []
    aggregate_rows = []
    for shots in shots_list:
        tasks = []
        for rep in range(repetitions):
            for p_index, (b, h) in enumerate(points):
                rep_seed = np.random.SeedSequence(
                    entropy=[int(seed), int(shots), rep, p_index]
                )
                tasks.append((model, b, h, refs, int(shots), rep_seed))
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_noisy_point, tasks))
        else:
            results = [_noisy_point(t) for t in tasks]
        deltas = [[] for _ in range(branches)]
        task_index = 0
        for rep in range(repetitions):
            for b, h in points:
                energies = results[task_index]
                task_index += 1
                row = {
                    "shots": int(shots),
                    "bond_length": b,
                    "repetition": rep,
                }
                for j, energy in enumerate(energies):
                    delta = abs(energy - references[b][j])
                    row[f"e{j}_est"] = energy
                    row[f"delta_e{j}"] = delta
                    deltas[j].append(delta)
                detail_rows.append(row)
        aggregate = {"shots": int(shots), "repetitions": repetitions}
        for j in range(branches):
            values = np.array(deltas[j])
            aggregate[f"mean_delta_e{j}"] = float(values.mean())
            aggregate[f"std_delta_e{j}"] = (
                float(values.std(ddof=1)) if values.size > 1 else float("nan")
            )
        aggregate_rows.append(aggregate)
    return detail_rows, aggregate_rows
