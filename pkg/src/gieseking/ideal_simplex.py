"""Shape of the ideal simplex with vertices 0, 1, z, infinity."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from math import comb
from typing import NamedTuple

__all__ = [
    "DegenerateSimplexError",
    "DihedralAngles",
    "EDGE_PAIRS",
    "check_shape",
    "dihedral_angles",
    "gieseking_residual",
    "lobachevsky",
    "clausen2",
    "volume",
]

DEGENERATE_TOL = 1e-12

# opposite edge pairs carrying alpha1, alpha2, alpha3
EDGE_PAIRS = (("inf-0", "z-1"), ("inf-z", "1-0"), ("inf-1", "z-0"))


class DegenerateSimplexError(ValueError):
    pass


class DihedralAngles(NamedTuple):
    alpha1: float
    alpha2: float
    alpha3: float

    def degrees(self) -> tuple[float, float, float]:
        return tuple(math.degrees(a) for a in self)


def check_shape(z: complex) -> complex:
    z = complex(z)
    if abs(z) < DEGENERATE_TOL or abs(z - 1) < DEGENERATE_TOL or abs(z.imag) < DEGENERATE_TOL:
        raise DegenerateSimplexError(f"flat simplex: z = {z!r}")
    return z


def dihedral_angles(z: complex) -> DihedralAngles:
    """Dihedral angles at the three pairs of opposite edges.

    Raises if any angle leaves (0, pi), which happens for ``Im z < 0``.
    """
    z = check_shape(z)
    angles = DihedralAngles(
        cmath.phase(z),
        cmath.phase((z - 1) / z),
        cmath.phase(1 / (1 - z)),
    )
    for a in angles:
        if not 0.0 < a < math.pi:
            raise DegenerateSimplexError(f"dihedral angle {a!r} outside (0, pi) for z = {z!r}")
    return angles


def gieseking_residual(z: complex) -> float:
    """``| |z-1|^2 - |z| |``; zero exactly when the edge cycle closes up."""
    z = complex(z)
    return abs(abs(z - 1) ** 2 - abs(z))


def _bernoulli_even(n: int) -> list[Fraction]:
    """B_0, B_1, ..., B_{2n} via the standard recurrence."""
    B = [Fraction(1)]
    for m in range(1, 2 * n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B


def _clausen_coefficients(n: int = 40) -> tuple[float, ...]:
    B = _bernoulli_even(n)
    out = []
    for k in range(1, n + 1):
        out.append(float(abs(B[2 * k]) / (2 * k * math.factorial(2 * k + 1))))
    return tuple(out)


# Cl2(t) = t - t log t + sum_k |B_2k| / (2k (2k+1)!) t^(2k+1),  |t| < 2 pi
_CL2_COEFFS = _clausen_coefficients()


def clausen2(theta: float) -> float:
    """Clausen function ``Cl2(theta) = -int_0^theta log|2 sin(t/2)| dt``."""
    t = math.remainder(theta, 2.0 * math.pi)  # now in [-pi, pi]
    sign = 1.0
    if t < 0:
        t, sign = -t, -1.0
    if t == 0.0:
        return 0.0
    t2 = t * t
    power = t
    total = t - t * math.log(t)
    for c in _CL2_COEFFS:
        power *= t2
        term = c * power
        total += term
        if term < 1e-18:
            break
    return sign * total


def lobachevsky(theta: float) -> float:
    """Lobachevsky function ``-int_0^theta log|2 sin s| ds``.

    Odd and pi-periodic; evaluated as ``Cl2(2 theta) / 2`` after reducing
    the argument to [0, pi/2].
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    x = math.remainder(theta, math.pi)  # [-pi/2, pi/2]
    if x == 0.0:
        return 0.0
    return 0.5 * clausen2(2.0 * x)


def volume(z: complex) -> float:
    """Hyperbolic volume of the ideal simplex ``0, 1, z, inf``."""
    return math.fsum(lobachevsky(a) for a in dihedral_angles(z))
