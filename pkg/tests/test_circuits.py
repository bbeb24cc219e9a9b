"""Circuit constructors: encode layers, ansatz layout, golden gate sequences."""

import numpy as np
import pytest

from hqcnn_pes.circuits import (
    Circuit,
    PqcParams,
    encode,
    encode0,
    entangler_pairs,
    real_amplitudes,
)
from hqcnn_pes.statevector import apply_all, basis_state, hadamard


class TestCircuit:
    def test_rejects_out_of_range_qubit(self):
        with pytest.raises(ValueError, match="addresses qubit"):
            Circuit(2, (hadamard(2),))

    def test_concatenation_preserves_order(self):
        a = encode0(0.1, 2)
        b = encode0(0.2, 2)
        assert (a + b).gates == a.gates + b.gates

    def test_concatenation_width_mismatch(self):
        with pytest.raises(ValueError, match="width"):
            encode0(0.1, 2) + encode0(0.1, 3)


class TestPqcParams:
    def test_size_check(self):
        with pytest.raises(ValueError, match="expected 8"):
            PqcParams(np.zeros(7), 4, 2)

    def test_depth_check(self):
        with pytest.raises(ValueError, match="depth"):
            PqcParams(np.zeros(0), 4, 0)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            PqcParams([np.inf, 0.0], 2, 1)


class TestEncode:
    def test_encode0_structure(self):
        c = encode0(0.45, 4)
        assert len(c) == 8
        # per qubit: Hadamard first, then the Ry carrying the input angle
        for q in range(4):
            h, ry = c.gates[2 * q], c.gates[2 * q + 1]
            assert (h.kind, h.qubits) == ("h", (q,))
            assert (ry.kind, ry.qubits) == ("ry", (q,))
            assert ry.angle == pytest.approx(0.45)

    def test_encode_per_qubit_angles(self):
        angles = [0.1, -0.2, 3.0]
        c = encode(angles)
        got = [g.angle for g in c.gates if g.kind == "ry"]
        assert got == pytest.approx(angles)

    def test_encode_rejects_bad_input(self):
        with pytest.raises(ValueError):
            encode([])
        with pytest.raises(ValueError):
            encode([0.1, np.nan])
        with pytest.raises(ValueError):
            encode0(np.inf, 3)

    def test_encode0_uniform_superposition_at_zero(self):
        """H-then-Ry(0) on |0> leaves each qubit in |+>."""
        final = apply_all(basis_state(3, 0), encode0(0.0, 3).gates)
        np.testing.assert_allclose(
            final.amplitudes, np.full(8, 1 / np.sqrt(8)), atol=1e-12
        )


class TestEntanglerPairs:
    def test_four_qubits(self):
        assert entangler_pairs(4) == [(0, 1), (2, 3), (1, 2)]

    def test_five_qubits(self):
        assert entangler_pairs(5) == [(0, 1), (2, 3), (1, 2), (3, 4)]

    def test_two_qubits(self):
        assert entangler_pairs(2) == [(0, 1)]


def _layout(circuit):
    return [(g.kind, g.qubits) for g in circuit.gates]


class TestRealAmplitudes:
    def test_parameter_count(self):
        for n, depth in [(4, 2), (4, 6), (5, 1)]:
            params = PqcParams(np.arange(n * depth, dtype=float), n, depth)
            c = real_amplitudes(n, depth, params)
            assert sum(1 for g in c.gates if g.kind == "ry") == n * depth

    def test_golden_layout_n4_d2(self):
        """Frozen gate sequence for the 4-qubit depth-2 ansatz."""
        params = PqcParams(np.arange(8, dtype=float), 4, 2)
        got = _layout(real_amplitudes(4, 2, params))
        block = [
            ("cx", (0, 1)),
            ("cx", (2, 3)),
            ("cx", (1, 2)),
            ("ry", (0,)),
            ("ry", (1,)),
            ("ry", (2,)),
            ("ry", (3,)),
        ]
        assert got == block + block

    def test_golden_layout_n5_d1(self):
        params = PqcParams(np.arange(5, dtype=float), 5, 1)
        got = _layout(real_amplitudes(5, 1, params))
        assert got == [
            ("cx", (0, 1)),
            ("cx", (2, 3)),
            ("cx", (1, 2)),
            ("cx", (3, 4)),
            ("ry", (0,)),
            ("ry", (1,)),
            ("ry", (2,)),
            ("ry", (3,)),
            ("ry", (4,)),
        ]

    def test_angle_indexing(self):
        """Angle on qubit i of 1-based block d is params[i + n*(d-1)]."""
        values = np.arange(12, dtype=float)
        c = real_amplitudes(4, 3, PqcParams(values, 4, 3))
        angles = [g.angle for g in c.gates if g.kind == "ry"]
        assert angles == pytest.approx(list(values))

    def test_produces_real_amplitudes(self):
        """CX and Ry have real matrix entries, so amplitudes stay real."""
        rng = np.random.default_rng(7)
        params = PqcParams(rng.uniform(0, 2 * np.pi, 16), 4, 4)
        final = apply_all(basis_state(4, 3), real_amplitudes(4, 4, params).gates)
        np.testing.assert_allclose(final.amplitudes.imag, 0.0, atol=1e-12)

    def test_param_shape_mismatch(self):
        params = PqcParams(np.zeros(8), 4, 2)
        with pytest.raises(ValueError, match="sized for"):
            real_amplitudes(4, 3, params)

    def test_needs_two_qubits(self):
        with pytest.raises(ValueError, match="at least 2"):
            real_amplitudes(1, 1, PqcParams(np.zeros(1), 1, 1))
