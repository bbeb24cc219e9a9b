"""Dataset generation: schema, reproducibility, acceptance checks.

The generated file is consumed by the `hqcnn-pes` package purely through
its dataset JSON schema; the checks here exercise that boundary with the
consumer's `validate-dataset` command line.
"""

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from hamgen import GenSpec, generate
from hamgen.generate import qubit_hamiltonian_terms

from conftest import dense_from_terms

COMMITTED = (
    Path(__file__).resolve().parents[2]
    / "src" / "hqcnn_pes" / "data" / "h2_sto3g_jw.json"
)


@pytest.fixture(scope="module")
def full_doc(tmp_path_factory):
    out = tmp_path_factory.mktemp("gen") / "h2.json"
    doc = generate(GenSpec(output=str(out)))
    return doc, out


def ground_curve(doc):
    bonds, energies = [], []
    for entry in doc["entries"]:
        terms = [(t["pauli"], t["coeff"]) for t in entry["terms"]]
        bonds.append(entry["bond_length_angstrom"])
        energies.append(np.linalg.eigvalsh(dense_from_terms(terms))[0])
    return np.array(bonds), np.array(energies)


class TestGenSpec:
    def test_default_grid_is_45_points(self):
        grid = GenSpec().grid()
        assert len(grid) == 45
        assert grid[0] == pytest.approx(0.30)
        assert grid[-1] == pytest.approx(2.50)
        np.testing.assert_allclose(np.diff(grid), 0.05, atol=1e-9)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"step": 0.0},
            {"start": 2.0, "stop": 1.0},
            {"basis": "6-31G"},
            {"mapping": "bravyi-kitaev"},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            GenSpec(**kwargs)


class TestGenerate:
    def test_full_run_has_45_entries(self, full_doc):
        doc, _ = full_doc
        assert len(doc["entries"]) == 45
        assert doc["schema_version"] == 1
        assert doc["kind"] == "dataset"
        assert doc["n_qubits"] == 4

    def test_reproduces_committed_dataset_exactly(self, full_doc):
        """Regeneration is bit-for-bit identical to the committed file."""
        doc, out = full_doc
        assert doc == json.loads(COMMITTED.read_text())
        assert out.read_text() == COMMITTED.read_text()

    def test_explicit_points_override_grid(self, tmp_path):
        out = tmp_path / "two.json"
        doc = generate(GenSpec(output=str(out)), points=[0.9, 0.6])
        bonds = [e["bond_length_angstrom"] for e in doc["entries"]]
        assert bonds == [0.6, 0.9]  # sorted ascending

    def test_cli_roundtrip(self, tmp_path):
        out = tmp_path / "cli.json"
        result = subprocess.run(
            [sys.executable, "-m", "hamgen.generate",
             "--points", "0.75", "--output", str(out)],
            capture_output=True, text=True,
        )
        assert result.returncode == 0, result.stderr
        assert "1 entries" in result.stdout
        assert json.loads(out.read_text())["entries"][0][
            "bond_length_angstrom"
        ] == pytest.approx(0.75)

    def test_cli_rejects_bad_mapping(self, tmp_path):
        result = subprocess.run(
            [sys.executable, "-m", "hamgen.generate",
             "--mapping", "parity", "--output", str(tmp_path / "x.json")],
            capture_output=True, text=True,
        )
        assert result.returncode == 1
        assert "unsupported mapping" in result.stderr


class TestAcceptance:
    def test_consumer_validate_dataset_passes(self, full_doc):
        """Every generated entry passes the consumer's validator CLI."""
        _, out = full_doc
        result = subprocess.run(
            ["hqcnn-pes", "validate-dataset", "--dataset", str(out)],
            capture_output=True, text=True,
        )
        assert result.returncode == 0, result.stderr
        assert "45 entries" in result.stdout

    def test_minimum_eigenvalue_at_0735_matches_independent_fci(self):
        from hamgen import determinant_fci_ground, restricted_hartree_fock

        terms = qubit_hamiltonian_terms(0.735)
        lam = np.linalg.eigvalsh(dense_from_terms(terms))[0]
        fci = determinant_fci_ground(restricted_hartree_fock(0.735))
        assert lam == pytest.approx(fci, abs=1e-6)
        assert lam == pytest.approx(-1.137, abs=1e-3)

    def test_ground_curve_single_minimum_near_equilibrium(self, full_doc):
        doc, _ = full_doc
        bonds, energies = ground_curve(doc)
        i = int(np.argmin(energies))
        assert 0.70 <= bonds[i] <= 0.80
        slope_signs = np.sign(np.diff(energies))
        # strictly decreasing up to the minimum, increasing after: one
        # sign change in the slope along the whole curve
        assert np.count_nonzero(np.diff(slope_signs)) == 1

    @pytest.mark.xfail(
        strict=True,
        reason="the repulsive wall below 0.5 angstrom is steeper than "
        "0.05 hartree per 0.05 angstrom grid step (correct physics: the "
        "exact curve climbs ~0.19 hartree between 0.30 and 0.35)",
    )
    def test_ground_curve_jumps_bounded(self, full_doc):
        doc, _ = full_doc
        _, energies = ground_curve(doc)
        assert np.max(np.abs(np.diff(energies))) <= 0.05

    def test_ground_curve_jumps_bounded_outside_wall(self, full_doc):
        """Away from the short-range wall the curve is smooth."""
        doc, _ = full_doc
        bonds, energies = ground_curve(doc)
        jumps = np.abs(np.diff(energies))[bonds[:-1] >= 0.5]
        assert np.max(jumps) <= 0.05
