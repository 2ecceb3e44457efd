"""The four surgery root series Gies.1 - Gies.4.

For an integer ``k >= 2`` the surgered simplex parameter solves

    z / (1 - z)^2 = w,    w in {+e^{i pi/k}, +e^{-i pi/k}, -e^{i pi/k}, -e^{-i pi/k}}

with ``Im z > 0`` and ``z`` in region A (``1 < |z-1| < |z|``) or region B
(``|z| < |z-1| < 1``).  Each series is a closed form

    z = 1 + s/2 * eps (1 + t sqrt(1 + 4 s / eps)),    eps = e^{+-i pi/k}

and the value of ``w`` satisfied by it is ``1 / (s * eps)``:

    ======  ==  ======  ==  =================  ======
    branch  s   eps     t   w                  region
    ======  ==  ======  ==  =================  ======
    gies1   +1  e^{+}   +1  +e^{-i pi/k}       A
    gies2   +1  e^{-}   -1  +e^{+i pi/k}       B
    gies3   -1  e^{-}   +1  -e^{+i pi/k}       A
    gies4   -1  e^{+}   -1  -e^{-i pi/k}       B
    ======  ==  ======  ==  =================  ======

(At ``k = 2`` the values of ``w`` coincide pairwise, and gies1/gies3 as well
as gies2/gies4 give the same root.)
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .ideal_simplex import DihedralAngles, dihedral_angles, lobachevsky, volume
from .moebius import INFINITY, BoundaryPoint, wrap_angle

__all__ = [
    "Branch",
    "Region",
    "Classification",
    "SurgeryError",
    "SurgerySolution",
    "LimitRecord",
    "closed_form",
    "surgery_w",
    "solve",
    "solve_general",
    "region_of",
    "surgery_angle",
    "fixed_point_v",
    "classify",
    "limit",
]

K_OUT_OF_SCOPE = "k=1 splitting surgery is out of scope; k must be an integer >= 2"


class SurgeryError(ValueError):
    pass


class Branch(str, enum.Enum):
    GIES1 = "gies1"
    GIES2 = "gies2"
    GIES3 = "gies3"
    GIES4 = "gies4"

    @property
    def partner(self) -> "Branch":
        """Series related by the half-turn symmetry of the simplex."""
        return _PARTNER[self]

    @property
    def label(self) -> str:
        return "Gies." + self.value[-1]

    def __str__(self) -> str:
        return self.value


_PARTNER = {
    Branch.GIES1: Branch.GIES2,
    Branch.GIES2: Branch.GIES1,
    Branch.GIES3: Branch.GIES4,
    Branch.GIES4: Branch.GIES3,
}

# (prefactor sign s, exponent sign of eps, sign in front of the square root)
_FORMS = {
    Branch.GIES1: (+1, +1, +1),
    Branch.GIES2: (+1, -1, -1),
    Branch.GIES3: (-1, -1, +1),
    Branch.GIES4: (-1, +1, -1),
}


class Region(str, enum.Enum):
    A = "A"
    B = "B"
    NONE = "none"


class Classification(str, enum.Enum):
    ORBIFOLD = "orbifold"
    CONE_MANIFOLD = "cone_manifold"


def _check_k(k: int) -> int:
    if isinstance(k, bool) or int(k) != k:
        raise SurgeryError(f"k must be an integer, got {k!r}")
    k = int(k)
    if k < 2:
        raise SurgeryError(K_OUT_OF_SCOPE)
    return k


def closed_form(branch: Branch, k: int, root_sign: int = 1) -> complex:
    """Evaluate a series' closed form with the principal square root.

    ``root_sign=-1`` flips the square root, giving the other root of the
    same quadratic.
    """
    s, e, t = _FORMS[Branch(branch)]
    eps = cmath.exp(e * 1j * math.pi / k)
    return 1 + 0.5 * s * eps * (1 + root_sign * t * cmath.sqrt(1 + 4 * s / eps))


def surgery_w(branch: Branch, k: int) -> complex:
    """Right-hand side ``z/(1-z)^2`` satisfied by the series."""
    s, e, _ = _FORMS[Branch(branch)]
    return 1 / (s * cmath.exp(e * 1j * math.pi / k))


def region_of(z: complex) -> Region:
    """Strict region membership; boundary points belong to neither region."""
    a, b = abs(z), abs(z - 1)
    if 1 < b < a:
        return Region.A
    if a < b < 1:
        return Region.B
    return Region.NONE


def _admissible(z: complex) -> bool:
    return z.imag > 0 and region_of(z) is not Region.NONE


def solve_general(w: complex) -> tuple[complex, complex]:
    """Both roots of ``w z^2 - (2w + 1) z + w = 0`` for ``|w| = 1``.

    Roots are ordered by decreasing imaginary part.
    """
    w = complex(w)
    if abs(abs(w) - 1) > 1e-12:
        raise ValueError(f"|w| must be 1, got {abs(w)!r}")
    B = -(2 * w + 1)
    sq = cmath.sqrt(4 * w + 1)  # discriminant B^2 - 4 w^2
    q = -0.5 * (B + sq) if (B.conjugate() * sq).real >= 0 else -0.5 * (B - sq)
    if q == 0:
        raise ValueError(f"quadratic collapses for w = {w!r}")
    r1, r2 = q / w, w / q
    return (r1, r2) if r1.imag >= r2.imag else (r2, r1)


def surgery_angle(z: complex) -> float:
    """Rotation angle ``2 arg z - 4 arg(1 - z)`` of the surgery transform."""
    z = complex(z)
    if abs(z) < 1e-12 or abs(z - 1) < 1e-12:
        raise SurgeryError(f"degenerate z = {z!r}")
    return wrap_angle(2 * cmath.phase(z) - 4 * cmath.phase(1 - z))


def fixed_point_v(z: complex) -> complex:
    """Finite common fixed point ``z / (1 - |z|)`` of the cusp stabilizer."""
    z = complex(z)
    if abs(abs(z) - 1) < 1e-15:
        raise SurgeryError("v at infinity of C, no finite fixed point (|z| = 1)")
    return z / (1 - abs(z))


def classify(branch: Branch, k: int) -> tuple[Classification, float]:
    """Classification and cone angle of the filled structure.

    Gies.1/2 carry cone angle 2 pi (k-1)/k and are orbifolds only at k = 2;
    Gies.3/4 carry cone angle 2 pi / k and are always orbifolds.
    """
    k = _check_k(k)
    branch = Branch(branch)
    if branch in (Branch.GIES1, Branch.GIES2):
        cone = 2 * math.pi * (k - 1) / k
        kind = Classification.ORBIFOLD if k == 2 else Classification.CONE_MANIFOLD
        return kind, cone
    return Classification.ORBIFOLD, 2 * math.pi / k


@dataclass(frozen=True)
class SurgerySolution:
    branch: Branch
    k: int
    z: complex
    angles: DihedralAngles
    v: complex
    phi: float
    volume: float
    classification: Classification
    cone_angle: float

    def to_dict(self) -> dict:
        a1, a2, a3 = self.angles
        return {
            "branch": self.branch.value,
            "k": self.k,
            "z_re": self.z.real,
            "z_im": self.z.imag,
            "alpha1": a1,
            "alpha2": a2,
            "alpha3": a3,
            "v_re": self.v.real,
            "v_im": self.v.imag,
            "phi": self.phi,
            "volume": self.volume,
            "classification": self.classification.value,
            "cone_angle": self.cone_angle,
        }


def solve(branch: Branch, k: int) -> SurgerySolution:
    """Surgered simplex of the given series and rotation order ``k``."""
    branch = Branch(branch)
    k = _check_k(k)
    candidates = [closed_form(branch, k, +1), closed_form(branch, k, -1)]
    passing = [z for z in candidates if _admissible(z)]
    if not passing:
        raise SurgeryError(
            f"internal consistency: no admissible root for {branch.value}, k={k}: {candidates}"
        )
    z = passing[0]
    kind, cone = classify(branch, k)
    return SurgerySolution(
        branch=branch,
        k=k,
        z=z,
        angles=dihedral_angles(z),
        v=fixed_point_v(z),
        phi=surgery_angle(z),
        volume=volume(z),
        classification=kind,
        cone_angle=cone,
    )


@dataclass(frozen=True)
class LimitRecord:
    branch: Branch
    z_limit: complex
    v_limit: BoundaryPoint
    angle_limits: tuple[float, float, float]
    volume_limit: float


_SQRT5 = math.sqrt(5.0)


def limit(branch: Branch) -> LimitRecord:
    """Closed-form ``k -> infinity`` limit of a series."""
    branch = Branch(branch)
    pi = math.pi
    if branch is Branch.GIES1:
        return LimitRecord(branch, complex((3 + _SQRT5) / 2), complex(-(1 + _SQRT5) / 2),
                           (0.0, 0.0, pi), 0.0)
    if branch is Branch.GIES2:
        return LimitRecord(branch, complex((3 - _SQRT5) / 2), complex((3 - _SQRT5) / (_SQRT5 - 1)),
                           (0.0, pi, 0.0), 0.0)
    return LimitRecord(branch, complex(0.5, math.sqrt(3) / 2), INFINITY,
                       (pi / 3, pi / 3, pi / 3), 3 * lobachevsky(pi / 3))


def residual(z: complex, w: complex) -> float:
    """``|z/(1-z)^2 - w|``."""
    return abs(z / (1 - z) ** 2 - w)
