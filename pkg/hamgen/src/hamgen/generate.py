"""One-shot generator for the committed H2 qubit-Hamiltonian dataset.

Writes a dataset JSON conforming to the consumer's file schema
(schema_version 1, entries sorted by bond length).  Regeneration is a
maintenance task; the consumer package ships the committed output and
never needs this generator at runtime.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .qubit import fock_matrix, pauli_decompose
from .scf import ScfError, restricted_hartree_fock

SCHEMA_VERSION = 1
SUPPORTED_BASIS = "STO-3G"
SUPPORTED_MAPPING = "jordan-wigner"


@dataclass(frozen=True)
class GenSpec:
    """Bond-length grid and tags for one generation run."""

    start: float = 0.30
    stop: float = 2.50
    step: float = 0.05
    basis: str = SUPPORTED_BASIS
    mapping: str = SUPPORTED_MAPPING
    output: str = "h2_sto3g_jw.json"

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be > 0")
        if self.start >= self.stop:
            raise ValueError("start must be < stop")
        if self.basis != SUPPORTED_BASIS:
            raise ValueError(f"unsupported basis {self.basis!r}")
        if self.mapping != SUPPORTED_MAPPING:
            raise ValueError(f"unsupported mapping {self.mapping!r}")

    def grid(self) -> list[float]:
        points = []
        k = 0
        while True:
            b = round(self.start + k * self.step, 10)
            if b > self.stop + 1e-9:
                break
            points.append(b)
            k += 1
        return points


def qubit_hamiltonian_terms(bond_length: float) -> list[tuple[str, float]]:
    """(pauli label, coefficient) pairs for H2 at one bond length."""
    mo = restricted_hartree_fock(bond_length)
    return pauli_decompose(fock_matrix(mo))


def generate(spec: GenSpec, points: list[float] | None = None) -> dict:
    """Build the dataset document for the spec's grid (or explicit points).

    Grid points where the SCF fails are skipped with a warning on
    stderr; the document is returned and written to ``spec.output``.
    """
    grid = sorted(points) if points else spec.grid()
    entries = []
    for b in grid:
        try:
            terms = qubit_hamiltonian_terms(b)
        except ScfError as err:
            print(f"warning: skipping b={b}: {err}", file=sys.stderr)
            continue
        entries.append(
            {
                "bond_length_angstrom": b,
                "terms": [{"pauli": label, "coeff": coeff} for label, coeff in terms],
            }
        )
    if not entries:
        raise RuntimeError("no grid point converged; nothing to write")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "dataset",
        "molecule": "H2",
        "basis": spec.basis,
        "mapping": spec.mapping,
        "n_qubits": 4,
        "entries": entries,
    }
    path = Path(spec.output)
    path.write_text(json.dumps(doc, indent=1) + "\n")
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    print(
        f"wrote {path} ({len(entries)} entries, "
        f"sha256:{hashlib.sha256(blob).hexdigest()})"
    )
    return doc


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hamgen",
        description="Generate the H2 qubit-Hamiltonian dataset (STO-3G, Jordan-Wigner)",
    )
    parser.add_argument("--start", type=float, default=0.30)
    parser.add_argument("--stop", type=float, default=2.50)
    parser.add_argument("--step", type=float, default=0.05)
    parser.add_argument("--basis", default=SUPPORTED_BASIS)
    parser.add_argument("--mapping", default=SUPPORTED_MAPPING)
    parser.add_argument(
        "--points", help="comma-separated explicit bond lengths overriding the grid"
    )
    parser.add_argument("--output", default="h2_sto3g_jw.json")
    args = parser.parse_args(argv)
    try:
        spec = GenSpec(
            start=args.start,
            stop=args.stop,
            step=args.step,
            basis=args.basis,
            mapping=args.mapping,
            output=args.output,
        )
        points = (
            [float(p) for p in args.points.split(",")] if args.points else None
        )
        generate(spec, points)
    except (ValueError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
