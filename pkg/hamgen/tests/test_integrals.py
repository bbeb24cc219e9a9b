"""Gaussian integral primitives: symmetry, normalization, limits."""

import math

import numpy as np
import pytest

from hamgen.integrals import (
    ANGSTROM_TO_BOHR,
    boys_f0,
    electron_repulsion,
    hydrogen_1s,
    kinetic,
    nuclear_attraction,
    overlap,
)


@pytest.fixture()
def pair():
    a = hydrogen_1s(np.zeros(3))
    b = hydrogen_1s(np.array([0.0, 0.0, 1.4]))
    return a, b


class TestBoys:
    def test_zero_limit(self):
        assert boys_f0(0.0) == pytest.approx(1.0)
        assert boys_f0(1e-14) == pytest.approx(1.0, abs=1e-10)

    def test_large_argument_asymptote(self):
        t = 500.0
        assert boys_f0(t) == pytest.approx(
            0.5 * math.sqrt(math.pi / t), rel=1e-10
        )

    def test_monotone_decreasing(self):
        values = [boys_f0(t) for t in (0.0, 0.5, 1.0, 2.0, 10.0)]
        assert all(x > y for x, y in zip(values, values[1:]))


class TestOneElectron:
    def test_self_overlap_is_one(self, pair):
        a, _ = pair
        # exact only to the precision of the published STO-3G contraction
        # coefficients
        assert overlap(a, a) == pytest.approx(1.0, abs=1e-9)

    def test_overlap_symmetric_and_bounded(self, pair):
        a, b = pair
        assert overlap(a, b) == pytest.approx(overlap(b, a), abs=1e-14)
        assert 0.0 < overlap(a, b) < 1.0

    def test_overlap_decays_with_distance(self):
        a = hydrogen_1s(np.zeros(3))
        values = [
            overlap(a, hydrogen_1s(np.array([0.0, 0.0, r])))
            for r in (1.0, 2.0, 4.0)
        ]
        assert values[0] > values[1] > values[2] > 0.0

    def test_kinetic_symmetric_positive_diagonal(self, pair):
        a, b = pair
        assert kinetic(a, b) == pytest.approx(kinetic(b, a), abs=1e-14)
        assert kinetic(a, a) > 0.0

    def test_nuclear_attraction_negative(self, pair):
        a, b = pair
        assert nuclear_attraction(a, a, np.zeros(3), 1.0) < 0.0
        assert nuclear_attraction(a, b, np.zeros(3), 1.0) < 0.0


class TestTwoElectron:
    def test_eightfold_symmetry(self, pair):
        a, b = pair
        reference = electron_repulsion(a, b, a, b)
        for perm in [(b, a, a, b), (a, b, b, a), (b, a, b, a)]:
            assert electron_repulsion(*perm) == pytest.approx(
                reference, abs=1e-13
            )

    def test_positive_definite_diagonal(self, pair):
        a, b = pair
        assert electron_repulsion(a, a, a, a) > 0.0
        assert electron_repulsion(b, b, b, b) > 0.0

    def test_angstrom_conversion(self):
        assert ANGSTROM_TO_BOHR == pytest.approx(1.88972612, rel=1e-7)
