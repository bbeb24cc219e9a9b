"""Command-line front end.

Subcommands::

    validate-dataset   check a Hamiltonian dataset file
    fci                exact reference energies as CSV
    train              fit a surrogate, write model file + cost trace CSV
    infer              inferred PES vs reference as CSV
    noise-sweep        shot-noise study, detail + aggregate CSV

Every command accepts ``--config FILE`` (JSON) whose keys match the long
flag names; explicit flags override the file.  The default dataset path
comes from the ``HQCNN_PES_DATASET`` environment variable, falling back
to the committed hydrogen dataset.  Exit codes: 0 success, 1 runtime
error, 2 usage error.

All outputs are deterministic under a fixed ``--seed``; CSVs carry a
header row and a leading comment line with the tool version and a hash
of the effective configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import __version__, workflows
from .persistence import (
    FileFormatError,
    canonical_fingerprint,
    default_dataset_path,
    load_dataset,
    load_model,
    save_model,
)
from .trainer import OptimizerSettings

ENV_DATASET = "HQCNN_PES_DATASET"


class UsageError(Exception):
    pass


def _dataset_path(args) -> Path:
    if args.dataset:
        return Path(args.dataset)
    env = os.environ.get(ENV_DATASET)
    if env:
        return Path(env)
    return default_dataset_path()


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as err:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from err


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as err:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from err


def _apply_config_file(args: argparse.Namespace, parser_defaults: dict) -> None:
    """Overlay JSON config values under explicit command-line flags."""
    if not args.config:
        return
    try:
        doc = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise UsageError(f"cannot read config file {args.config}: {err}") from err
    if not isinstance(doc, dict):
        raise UsageError("config file must hold a JSON object")
    for key, value in doc.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise UsageError(f"unknown config key {key!r}")
        # flags given on the command line win over the file
        if getattr(args, attr) == parser_defaults.get(attr):
            setattr(args, attr, value)


def _write_csv(path, fieldnames, rows, config: dict) -> None:
    comment = (
        f"# hqcnn-pes {__version__} config={canonical_fingerprint(config)}\n"
    )
    out = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        out.write(comment)
        writer = csv.DictWriter(out, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _format_value(row.get(k)) for k in fieldnames})
    finally:
        if out is not sys.stdout:
            out.close()


def _format_value(value):
    if isinstance(value, float):
        return repr(value)
    return value


def _settings_from_args(args) -> OptimizerSettings:
    return OptimizerSettings(
        max_iterations=args.max_iterations,
        gradient_norm_tolerance=args.gradient_norm_tolerance,
        finite_difference_step=args.finite_difference_step,
        restarts=args.restarts,
        seed=args.seed,
    )


def cmd_validate_dataset(args) -> int:
    dataset = load_dataset(_dataset_path(args))
    print(
        f"ok: {dataset.molecule or 'dataset'} "
        f"({dataset.basis}, {dataset.mapping}), "
        f"{len(dataset.entries)} entries, n={dataset.n}, "
        f"bond lengths {dataset.bond_lengths[0]:g}-{dataset.bond_lengths[-1]:g} A, "
        f"fingerprint {dataset.fingerprint}"
    )
    return 0


def cmd_fci(args) -> int:
    dataset = load_dataset(_dataset_path(args))
    rows = workflows.fci_curve(dataset)
    config = {"command": "fci", "dataset": dataset.fingerprint}
    _write_csv(args.output, ["bond_length", "e0_ref", "e1_ref"], rows, config)
    return 0


def cmd_train(args) -> int:
    dataset = load_dataset(_dataset_path(args))
    weights = _parse_floats(args.weights)
    train_points = _parse_floats(args.train_points)
    settings = _settings_from_args(args)
    model = workflows.train_model(
        dataset,
        depth=args.depth,
        weights=weights,
        train_points=train_points,
        settings=settings,
        classical_layer=not args.no_classical_layer,
    )
    save_model(model, args.output_model, dataset_fingerprint=dataset.fingerprint)
    print(
        f"trained depth={args.depth} weights={weights} "
        f"final_cost={model.metadata['final_cost']:.9f} "
        f"iterations={model.metadata['iterations']} "
        f"restart={model.metadata['restart_index']} -> {args.output_model}"
    )
    if args.trace:
        rows = [
            {"iteration": i, "cost": c}
            for i, c in enumerate(model.metadata["cost_trace"])
        ]
        config = {
            "command": "train-trace",
            "dataset": dataset.fingerprint,
            "depth": args.depth,
            "weights": list(weights),
            "seed": args.seed,
        }
        _write_csv(args.trace, ["iteration", "cost"], rows, config)
    return 0


def cmd_infer(args) -> int:
    dataset = load_dataset(_dataset_path(args))
    model, fingerprint = load_model(args.model)
    if fingerprint and fingerprint != dataset.fingerprint:
        print(
            "warning: model was trained against a different dataset "
            f"({fingerprint} != {dataset.fingerprint})",
            file=sys.stderr,
        )
    grid = _parse_floats(args.grid) if args.grid else None
    rows = workflows.pes_table(model, dataset, grid)
    branches = model.config.active_branches if model.config.classical_layer else 1
    fields = ["bond_length"]
    for j in range(branches):
        fields += [f"e{j}", f"delta_e{j}"]
    fields += ["e0_ref", "e1_ref"]
    config = {
        "command": "infer",
        "dataset": dataset.fingerprint,
        "model": canonical_fingerprint(
            {"theta": list(map(float, model.theta)),
             "theta_cap": list(map(float, model.theta_cap))}
        ),
    }
    _write_csv(args.output, fields, rows, config)
    return 0


def cmd_noise_sweep(args) -> int:
    dataset = load_dataset(_dataset_path(args))
    model, _ = load_model(args.model)
    shots_list = _parse_ints(args.shots)
    grid = _parse_floats(args.grid) if args.grid else None
    detail, aggregate = workflows.noise_sweep(
        model,
        dataset,
        shots_list=shots_list,
        repetitions=args.repetitions,
        seed=args.seed,
        grid=grid,
        jobs=args.jobs,
    )
    branches = model.config.active_branches
    config = {
        "command": "noise-sweep",
        "dataset": dataset.fingerprint,
        "shots": list(shots_list),
        "repetitions": args.repetitions,
        "seed": args.seed,
    }
    detail_fields = ["shots", "bond_length", "repetition"]
    for j in range(branches):
        detail_fields += [f"e{j}_est", f"delta_e{j}"]
    _write_csv(args.output_detail, detail_fields, detail, config)
    aggregate_fields = ["shots", "repetitions"]
    for j in range(branches):
        aggregate_fields += [f"mean_delta_e{j}", f"std_delta_e{j}"]
    if args.repetitions == 1:
        for row in aggregate:
            for j in range(branches):
                row[f"std_delta_e{j}"] = ""
    _write_csv(args.output, aggregate_fields, aggregate, config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hqcnn-pes",
        description="Surrogate-model training and inference of H2 potential "
        "energy surfaces (ground and first excited state).",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--dataset", help="dataset JSON path")
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("validate-dataset", help="check a dataset file")
    common(p)
    p.set_defaults(func=cmd_validate_dataset)

    p = sub.add_parser("fci", help="exact reference energies as CSV")
    common(p)
    p.add_argument("--output", default="-", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_fci)

    p = sub.add_parser("train", help="fit a surrogate model")
    common(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--weights", default="1,0.5")
    p.add_argument(
        "--train-points",
        default=",".join(str(b) for b in workflows.DEFAULT_TRAIN_POINTS),
    )
    p.add_argument("--no-classical-layer", action="store_true")
    p.add_argument("--max-iterations", type=int, default=1000)
    p.add_argument("--gradient-norm-tolerance", type=float, default=1e-5)
    p.add_argument("--finite-difference-step", type=float, default=1e-6)
    p.add_argument("--restarts", type=int, default=5)
    p.add_argument("--output-model", required=True)
    p.add_argument("--trace", help="optional per-iteration cost CSV")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("infer", help="inferred PES vs reference as CSV")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--grid", help="comma-separated bond lengths (default: all)")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("noise-sweep", help="shot-noise study as CSV")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument(
        "--shots", default=",".join(str(s) for s in workflows.DEFAULT_SHOTS_SWEEP)
    )
    p.add_argument("--repetitions", type=int, default=10)
    p.add_argument("--grid")
    p.add_argument("--output", default="-", help="aggregate CSV")
    p.add_argument("--output-detail", default=os.devnull, help="detail CSV")
    p.set_defaults(func=cmd_noise_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    defaults = {
        action.dest: action.default
        for action in parser._subparsers._group_actions[0].choices[
            args.command
        ]._actions
    }
    try:
        _apply_config_file(args, defaults)
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except (FileFormatError, FileNotFoundError, KeyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
