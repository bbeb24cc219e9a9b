"""Analytic molecular integrals over contracted s-type Gaussians.

Closed forms for overlap, kinetic, nuclear-attraction, and two-electron
repulsion integrals between s-type Gaussian primitives (Szabo & Ostlund
appendix forms), contracted with the STO-3G expansion of the hydrogen
1s orbital.  All quantities in atomic units (bohr, hartree).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: STO-3G expansion of the hydrogen 1s orbital (exponents already carry
#: the zeta**2 = 1.24**2 scaling).
H_STO3G_EXPONENTS = (3.425250914, 0.6239137298, 0.1688554040)
H_STO3G_COEFFS = (0.1543289673, 0.5353281423, 0.4446345422)

ANGSTROM_TO_BOHR = 1.0 / 0.52917721092


def boys_f0(t: float) -> float:
    """The zeroth Boys function F0(t) = (1/2) sqrt(pi/t) erf(sqrt(t))."""
    if t < 1e-12:
        return 1.0 - t / 3.0
    st = math.sqrt(t)
    return 0.5 * math.sqrt(math.pi / t) * math.erf(st)


@dataclass(frozen=True)
class ContractedS:
    """A contracted s-type Gaussian: sum of normalized primitives."""

    exponents: tuple[float, ...]
    coefficients: tuple[float, ...]
    center: tuple[float, float, float]

    @property
    def center_array(self) -> np.ndarray:
        return np.asarray(self.center, dtype=float)


def hydrogen_1s(center) -> ContractedS:
    return ContractedS(H_STO3G_EXPONENTS, H_STO3G_COEFFS, tuple(center))


def _norm(alpha: float) -> float:
    return (2.0 * alpha / math.pi) ** 0.75


def _primitive_pairs(a: ContractedS, b: ContractedS):
    ra, rb = a.center_array, b.center_array
    r2 = float(np.dot(ra - rb, ra - rb))
    for alpha, ca in zip(a.exponents, a.coefficients):
        for beta, cb in zip(b.exponents, b.coefficients):
            weight = ca * cb * _norm(alpha) * _norm(beta)
            yield alpha, beta, weight, r2, ra, rb


def overlap(a: ContractedS, b: ContractedS) -> float:
    total = 0.0
    for alpha, beta, w, r2, _, _ in _primitive_pairs(a, b):
        p = alpha + beta
        total += w * (math.pi / p) ** 1.5 * math.exp(-alpha * beta / p * r2)
    return total


def kinetic(a: ContractedS, b: ContractedS) -> float:
    total = 0.0
    for alpha, beta, w, r2, _, _ in _primitive_pairs(a, b):
        p = alpha + beta
        mu = alpha * beta / p
        total += (
            w
            * mu
            * (3.0 - 2.0 * mu * r2)
            * (math.pi / p) ** 1.5
            * math.exp(-mu * r2)
        )
    return total


def nuclear_attraction(a: ContractedS, b: ContractedS, nucleus, charge: float) -> float:
    """Integral of -Z/|r - R_nucleus| between the two basis functions."""
    rc = np.asarray(nucleus, dtype=float)
    total = 0.0
    for alpha, beta, w, r2, ra, rb in _primitive_pairs(a, b):
        p = alpha + beta
        rp = (alpha * ra + beta * rb) / p
        pc2 = float(np.dot(rp - rc, rp - rc))
        total += (
            w
            * (-2.0 * math.pi * charge / p)
            * math.exp(-alpha * beta / p * r2)
            * boys_f0(p * pc2)
        )
    return total


def electron_repulsion(
    a: ContractedS, b: ContractedS, c: ContractedS, d: ContractedS
) -> float:
    """Chemist-notation (ab|cd) two-electron repulsion integral."""
    total = 0.0
    for alpha, beta, wab, rab2, ra, rb in _primitive_pairs(a, b):
        p = alpha + beta
        rp = (alpha * ra + beta * rb) / p
        eab = math.exp(-alpha * beta / p * rab2)
        for gamma, delta, wcd, rcd2, rc, rd in _primitive_pairs(c, d):
            q = gamma + delta
            rq = (gamma * rc + delta * rd) / q
            pq2 = float(np.dot(rp - rq, rp - rq))
            total += (
                wab
                * wcd
                * 2.0
                * math.pi**2.5
                / (p * q * math.sqrt(p + q))
                * eab
                * math.exp(-gamma * delta / q * rcd2)
                * boys_f0(p * q / (p + q) * pq2)
            )
    return total
