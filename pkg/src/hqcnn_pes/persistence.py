"""File formats: Hamiltonian datasets and trained models.

Both formats are JSON with an explicit ``schema_version`` so they stay
human-inspectable and diff-friendly.  Floats are serialized as Python's
shortest round-trip decimals, so save/load reproduces every numeric
field exactly.  Content fingerprints are SHA-256 over canonicalized
JSON bytes (sorted keys, no whitespace).

Dataset schema (version 1)::

    {
      "schema_version": 1, "kind": "dataset",
      "molecule": "H2", "basis": "STO-3G", "mapping": "jordan-wigner",
      "n_qubits": 4,
      "entries": [
        {"bond_length_angstrom": 0.3,
         "terms": [{"pauli": "IIII", "coeff": -0.123}, ...]},
        ...
      ]
    }

Model schema (version 1)::

    {
      "schema_version": 1, "kind": "model",
      "config": {"n": 4, "depth": 6, "weights": [1.0, 0.5],
                 "reference_states": [0, 1], "classical_layer": true,
                 "seed": 0},
      "theta": [...], "theta_cap": [...],
      "metadata": {...},
      "dataset_fingerprint": "sha256:..."
    }
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .hqcnn import Model, ModelConfig
from .pauli import PauliSum, parse_pauli_string

SCHEMA_VERSION = 1

#: Bond lengths are matched against dataset entries within this slack.
BOND_LENGTH_MATCH_TOLERANCE = 1e-9


class FileFormatError(ValueError):
    """A dataset or model file violates its schema."""


class FingerprintMismatch(UserWarning):
    """A model is being used against a dataset it was not trained on."""


def default_dataset_path() -> Path:
    """Path of the committed hydrogen dataset shipped with the package."""
    return Path(resources.files("hqcnn_pes").joinpath("data/h2_sto3g_jw.json"))


@dataclass(frozen=True)
class Dataset:
    """A bond-length-indexed collection of qubit Hamiltonians."""

    molecule: str
    basis: str
    mapping: str
    n: int
    entries: tuple[tuple[float, PauliSum], ...]
    fingerprint: str

    @property
    def bond_lengths(self) -> np.ndarray:
        return np.array([b for b, _ in self.entries])

    def hamiltonian_at(self, b: float) -> PauliSum:
        """The Hamiltonian entry at bond length ``b`` (no interpolation)."""
        for length, h in self.entries:
            if abs(length - b) <= BOND_LENGTH_MATCH_TOLERANCE:
                return h
        raise KeyError(f"no dataset entry at bond length {b}")

    def subset(self, bond_lengths) -> list[tuple[float, PauliSum]]:
        """(b, Hamiltonian) pairs for the requested bond lengths."""
        return [(float(b), self.hamiltonian_at(b)) for b in bond_lengths]


def canonical_fingerprint(obj) -> str:
    """SHA-256 over canonicalized JSON bytes of ``obj``."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def _read_json(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise FileFormatError(
            f"{path}: invalid JSON at byte offset {err.pos}: {err.msg}"
        ) from err
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top level must be a JSON object")
    return doc


def _check_version(doc: dict, path, kind: str) -> None:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FileFormatError(
            f"{path}: unsupported schema_version {version!r} (supported: {SCHEMA_VERSION})"
        )
    if doc.get("kind", kind) != kind:
        raise FileFormatError(f"{path}: expected kind {kind!r}, got {doc.get('kind')!r}")


def load_dataset(path) -> Dataset:
    """Load and validate a dataset file.

    Raises
    ------
    FileFormatError
        Naming the offending field and entry index on any schema
        violation: bad labels, ragged qubit counts, duplicate or
        non-increasing bond lengths, non-finite coefficients.
    """
    doc = _read_json(path)
    _check_version(doc, path, "dataset")
    entries_doc = doc.get("entries")
    if not isinstance(entries_doc, list) or not entries_doc:
        raise FileFormatError(f"{path}: 'entries' must be a non-empty list")
    n = doc.get("n_qubits")
    if not isinstance(n, int) or n < 1:
        raise FileFormatError(f"{path}: 'n_qubits' must be a positive integer")
    entries = []
    previous_b = -np.inf
    for index, entry in enumerate(entries_doc):
        if not isinstance(entry, dict):
            raise FileFormatError(f"{path}: entry {index} must be an object")
        b = entry.get("bond_length_angstrom")
        if not isinstance(b, (int, float)) or not np.isfinite(b):
            raise FileFormatError(
                f"{path}: entry {index}: 'bond_length_angstrom' must be finite"
            )
        if b <= previous_b:
            raise FileFormatError(
                f"{path}: entry {index}: bond lengths must be strictly increasing"
            )
        previous_b = b
        terms_doc = entry.get("terms")
        if not isinstance(terms_doc, list) or not terms_doc:
            raise FileFormatError(
                f"{path}: entry {index}: 'terms' must be a non-empty list"
            )
        terms = []
        for t_index, term in enumerate(terms_doc):
            if not isinstance(term, dict):
                raise FileFormatError(
                    f"{path}: entry {index}, term {t_index}: must be an object"
                )
            label = term.get("pauli")
            coeff = term.get("coeff")
            if not isinstance(label, str):
                raise FileFormatError(
                    f"{path}: entry {index}, term {t_index}: 'pauli' must be a string"
                )
            if not isinstance(coeff, (int, float)) or not np.isfinite(coeff):
                raise FileFormatError(
                    f"{path}: entry {index}, term {t_index}: 'coeff' must be finite"
                )
            try:
                string = parse_pauli_string(label, n)
            except ValueError as err:
                raise FileFormatError(
                    f"{path}: entry {index}, term {t_index}: {err}"
                ) from err
            terms.append((float(coeff), string))
        entries.append((float(b), PauliSum(terms, n)))
    return Dataset(
        molecule=str(doc.get("molecule", "")),
        basis=str(doc.get("basis", "")),
        mapping=str(doc.get("mapping", "")),
        n=n,
        entries=tuple(entries),
        fingerprint=canonical_fingerprint(doc),
    )


def dataset_to_doc(
    molecule: str,
    basis: str,
    mapping: str,
    entries,
) -> dict:
    """Build a schema-conforming dataset document from (b, PauliSum) pairs."""
    entries = list(entries)
    if not entries:
        raise ValueError("dataset needs at least one entry")
    n = entries[0][1].n
    doc_entries = []
    for b, h in entries:
        doc_entries.append(
            {
                "bond_length_angstrom": float(b),
                "terms": [
                    {"pauli": string.ops, "coeff": float(coeff)}
                    for coeff, string in h.terms
                ],
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "dataset",
        "molecule": molecule,
        "basis": basis,
        "mapping": mapping,
        "n_qubits": n,
        "entries": doc_entries,
    }


def save_dataset(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def save_model(model: Model, path, dataset_fingerprint: str | None = None) -> None:
    """Write a trained model; load reproduces all numeric fields exactly."""
    cfg = model.config
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "model",
        "config": {
            "n": cfg.n,
            "depth": cfg.depth,
            "weights": list(cfg.weights),
            "reference_states": list(cfg.reference_states),
            "classical_layer": cfg.classical_layer,
            "seed": cfg.seed,
        },
        "theta": [float(v) for v in model.theta],
        "theta_cap": [float(v) for v in model.theta_cap],
        "metadata": model.metadata,
        "dataset_fingerprint": dataset_fingerprint,
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_model(path) -> tuple[Model, str | None]:
    """Load a model file; returns the model and its dataset fingerprint."""
    doc = _read_json(path)
    _check_version(doc, path, "model")
    cfg_doc = doc.get("config")
    if not isinstance(cfg_doc, dict):
        raise FileFormatError(f"{path}: 'config' must be an object")
    try:
        cfg = ModelConfig(
            n=int(cfg_doc["n"]),
            depth=int(cfg_doc["depth"]),
            weights=tuple(float(w) for w in cfg_doc["weights"]),
            reference_states=tuple(int(r) for r in cfg_doc["reference_states"]),
            classical_layer=bool(cfg_doc.get("classical_layer", True)),
            seed=int(cfg_doc.get("seed", 0)),
        )
    except (KeyError, TypeError, ValueError) as err:
        raise FileFormatError(f"{path}: invalid config: {err}") from err
    theta = np.asarray(doc.get("theta", []), dtype=float)
    theta_cap = np.asarray(doc.get("theta_cap", []), dtype=float)
    try:
        model = Model(
            config=cfg,
            theta=theta,
            theta_cap=theta_cap,
            metadata=doc.get("metadata") or {},
        )
    except ValueError as err:
        raise FileFormatError(f"{path}: {err}") from err
    fingerprint = doc.get("dataset_fingerprint")
    return model, fingerprint
