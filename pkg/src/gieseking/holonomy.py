"""Face pairings of the Gieseking simplex and numerical relator checks.

All words are evaluated left to right (first letter acts first) with the
conventions of :mod:`gieseking.moebius`.  Generator names used in words:
``z1``, ``z2`` (face pairings), ``p``, ``z2*`` and ``q`` (cusp stabilizer /
compact domain pairings).
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterator

from .ideal_simplex import check_shape
from .moebius import (
    ExtendedMoebius,
    GroupWord,
    evaluate_word,
    is_projective_identity,
    projective_deviation,
)

__all__ = [
    "GeneratorSet",
    "ConsistencyError",
    "RelatorResult",
    "VerificationReport",
    "P_WORD",
    "Z2_STAR_WORD",
    "Q_WORD",
    "Q_WORD_AS_PRINTED",
    "generators",
    "z2_star_closed_form",
    "surgery_transform_closed_form",
    "stabilizer_generators",
    "verify_edge_cycle",
    "verify_presentation",
    "verify_compact_relations",
    "verify_rotation_order",
    "verify_constructions",
    "verify_all",
]

DEFAULT_TOL = 1e-10

CYCLE_WORD = GroupWord.parse("z1 z1 z2 z2 z1^-1 z2^-1")
P_WORD = GroupWord.parse("z2 z1 z2^-1 z2^-1")
P_WORD_SHORT = GroupWord.parse("z1 z1")
Z2_STAR_WORD = GroupWord.parse("z2 z2 z1 z2 z1^-1 z2^-1 z2^-1")
# The pairing of the bent faces [q^-1] -> [q] is the z1^-1 z2^-1 z2^-1 image
# map; the two-letter version z1^-1 z2^-1 listed with the substitution rules
# does not satisfy the two relators containing q (kept for diagnostics).
Q_WORD = GroupWord.parse("z1^-1 z2^-1 z2^-1")
Q_WORD_AS_PRINTED = GroupWord.parse("z1^-1 z2^-1")

# the rotation z1 z2* written out in z1, z2
SURGERY_WORD = GroupWord.parse("z1 z2 z2 z1 z2 z1^-1 z2^-2")
SURGERY_WORD_ECONOMIC = GroupWord.parse("z1 z2^2 z1 z2 z1^-1 z2^-2")


class ConsistencyError(ValueError):
    """Two constructions of the same element disagree."""

    def __init__(self, message: str, first: ExtendedMoebius, second: ExtendedMoebius):
        super().__init__(f"{message}\n  first:  {first.matrix}\n  second: {second.matrix}")
        self.first = first
        self.second = second


class GeneratorSet(Mapping):
    """Named transformations built from one simplex parameter ``z``."""

    def __init__(self, z: complex, maps: Mapping[str, ExtendedMoebius]):
        self.z = complex(z)
        self._maps = dict(maps)

    def __getitem__(self, name: str) -> ExtendedMoebius:
        return self._maps[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._maps)

    def __len__(self) -> int:
        return len(self._maps)

    def __repr__(self) -> str:
        return f"GeneratorSet(z={self.z!r}, names={list(self._maps)})"

    def extended(self, **maps: ExtendedMoebius) -> "GeneratorSet":
        new = dict(self._maps)
        new.update(maps)
        return GeneratorSet(self.z, new)


def generators(z: complex) -> GeneratorSet:
    """The face pairings ``z1``, ``z2`` (horospherical glide reflections).

    z1 : u -> (conj(u) - 1) / (conj(z) - 1)          sends inf,z,1 to inf,1,0
    z2 : u -> conj(u) z / (conj(u) - conj(z)(1 - z))   sends 0,z,inf to 0,1,z
    """
    z = check_shape(z)
    zb = z.conjugate()
    z1 = ExtendedMoebius(1, 0, -1, zb - 1, reversing=True)
    z2 = ExtendedMoebius(z, 1, 0, -zb * (1 - z), reversing=True)
    return GeneratorSet(z, {"z1": z1, "z2": z2})


def z2_star_closed_form(z: complex) -> ExtendedMoebius:
    """Closed matrix of ``z2*``; valid only when ``|z-1|^2 = |z|``."""
    z = complex(z)
    zb = z.conjugate()
    r = abs(z)
    return ExtendedMoebius(
        z * (1 - zb) ** 2,
        0,
        r**2 * (r * (zb - 1) - (r + 1)),
        -zb * (1 - z),
        reversing=True,
    )


def z2_star_product_form(z: complex) -> ExtendedMoebius:
    """``z2*`` as the explicit product of five matrices (no constraint used)."""
    z = complex(z)
    zb = z.conjugate()
    n = abs(1 - z) ** 2
    factors = [
        ((1, 1), (0, n)),
        ((1, 0), (-1, zb - 1)),
        ((zb, 1), (0, -z * (1 - zb))),
        ((z - 1, 0), (1, 1)),
        ((n, -1), (0, 1)),
    ]
    m = ((1, 0), (0, 1))
    for f in factors:
        m = (
            (m[0][0] * f[0][0] + m[0][1] * f[1][0], m[0][0] * f[0][1] + m[0][1] * f[1][1]),
            (m[1][0] * f[0][0] + m[1][1] * f[1][0], m[1][0] * f[0][1] + m[1][1] * f[1][1]),
        )
    return ExtendedMoebius.from_matrix(m, reversing=True)


def surgery_transform_closed_form(z: complex) -> ExtendedMoebius:
    """Closed matrix of the rotation ``z1 z2*`` about the line from ``v`` to inf."""
    z = complex(z)
    zb = z.conjugate()
    r = abs(z)
    return ExtendedMoebius(
        z * (1 - zb) ** 2,
        0,
        (r + 1) * (r**2 - z**2),
        zb * (1 - z) ** 2,
    )


def stabilizer_generators(g: GeneratorSet, tol: float = DEFAULT_TOL) -> GeneratorSet:
    """Add ``p``, ``z2*`` and ``q`` to a set holding ``z1`` and ``z2``.

    ``p`` and ``z2*`` are each built two ways (as words and in closed form);
    a :class:`ConsistencyError` is raised if they differ by more than ``tol``,
    which happens whenever ``z`` is off the curve ``|z-1|^2 = |z|``.
    """
    p_word = evaluate_word(g, P_WORD)
    p = evaluate_word(g, P_WORD_SHORT)
    _require_equal("p: conjugate word vs z1 z1", p_word, p, tol)
    z2s = evaluate_word(g, Z2_STAR_WORD)
    _require_equal("z2*: word vs closed matrix", z2s, z2_star_closed_form(g.z), tol)
    q = evaluate_word(g, Q_WORD)
    return g.extended(**{"p": p, "z2*": z2s, "q": q})


def _deviation(first: ExtendedMoebius, second: ExtendedMoebius) -> float:
    if first.reversing != second.reversing:
        return math.inf
    return projective_deviation(evaluate_word({"a": first, "b": second}, "a b^-1"))


def _require_equal(what: str, first: ExtendedMoebius, second: ExtendedMoebius, tol: float):
    if _deviation(first, second) > tol:
        raise ConsistencyError(f"{what} disagree beyond tol={tol:g}", first, second)


@dataclass(frozen=True)
class RelatorResult:
    name: str
    word: str
    deviation: float
    passed: bool
    gating: bool = True
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else ("FAIL" if self.gating else "info")
        text = f"[{status}] {self.name:<28} dev={self.deviation:.3e}  {self.word}"
        if self.note:
            text += f"  ({self.note})"
        return text


@dataclass(frozen=True)
class VerificationReport:
    z: complex
    tol: float
    results: tuple[RelatorResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.gating)

    def __getitem__(self, name: str) -> RelatorResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __add__(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.z, self.tol, self.results + other.results)

    def __str__(self) -> str:
        head = f"z = {self.z.real:.12f} {self.z.imag:+.12f}i  tol = {self.tol:g}"
        lines = [head, *(r.line() for r in self.results)]
        lines.append("all relators hold" if self.passed else "VERIFICATION FAILED")
        return "\n".join(lines)


def _check(gens, name: str, word: GroupWord, tol: float, *, gating=True, note="") -> RelatorResult:
    t = evaluate_word(gens, word)
    dev = math.inf if t.reversing else projective_deviation(t)
    return RelatorResult(name, str(word), dev, is_projective_identity(t, tol), gating, note)


def verify_edge_cycle(z: complex, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check that the six-edge cycle ``z1 z1 z2 z2 z1^-1 z2^-1`` closes up."""
    g = generators(z)
    return VerificationReport(complex(z), tol, (_check(g, "edge_cycle", CYCLE_WORD, tol),))


def verify_presentation(z: complex, k: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Relators of both two-generator presentations of the filled group."""
    g = generators(z)
    results = (
        _check(g, "presentation.cycle", CYCLE_WORD, tol),
        _check(g, "presentation.rotation^k", SURGERY_WORD * k, tol),
        _check(g, "economic.cycle", GroupWord.parse("z1^2 z2^2 z1^-1 z2^-1"), tol),
        _check(g, "economic.rotation^k", SURGERY_WORD_ECONOMIC * k, tol),
    )
    return VerificationReport(complex(z), tol, results)


COMPACT_RELATORS = (
    ("compact.z1z1p", GroupWord.parse("z1 z1 p^-1")),
    ("compact.z2*z2*p", GroupWord.parse("z2* z2* p")),
    ("compact.q-z2*-p", GroupWord.parse("q z2*^-1 q^-1 p q^-1 p^-1")),
    ("compact.z1qq", GroupWord.parse("z1 q q p^-1 q^-1")),
)
_FREE_SUBSTITUTION = {"p": GroupWord.parse("z1^2"), "z2*": Z2_STAR_WORD, "q": Q_WORD}


def verify_compact_relations(z: complex, k: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Relators of the compact fundamental domain after substituting
    ``p = z1^2``, ``z2* = (z2^2 z1) z2 (z1^-1 z2^-2)`` and ``q``.

    Freely trivial words (``z1 z1 p^-1``) are reduced before evaluation and
    hold exactly.  The two q-relators are also reported, non-gating, with
    the two-letter ``q = z1^-1 z2^-1``; they fail for every parameter tried.
    """
    g = generators(z)
    relators = list(COMPACT_RELATORS) + [
        ("compact.rotation^k", GroupWord.parse("z1 z2*") * k),
    ]
    results = []
    for name, rel in relators:
        word = rel.substitute(_FREE_SUBSTITUTION).freely_reduced()
        results.append(_check(g, name, word, tol))
    printed = dict(_FREE_SUBSTITUTION, q=Q_WORD_AS_PRINTED)
    for name, rel in COMPACT_RELATORS:
        if "q" in rel.symbols():
            word = rel.substitute(printed).freely_reduced()
            results.append(
                _check(g, name + "[q=z1^-1 z2^-1]", word, tol, gating=False,
                       note="two-letter q; transcription issue")
            )
    return VerificationReport(complex(z), tol, tuple(results))


def verify_rotation_order(z: complex, k: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``(z1 z2*)^j`` is trivial at ``j = k`` and at no smaller ``j``."""
    g = generators(z)
    rot = evaluate_word(g, SURGERY_WORD)
    power = rot
    closest = math.inf
    for _ in range(1, k):
        closest = min(closest, projective_deviation(power))
        power = evaluate_word({"a": power, "r": rot}, "a r")
    early = RelatorResult(
        "rotation_order.j<k",
        f"(z1 z2*)^j, 1<=j<{k}",
        closest,
        closest > tol,
    )
    exact = RelatorResult(
        "rotation_order.j=k",
        f"(z1 z2*)^{k}",
        projective_deviation(power),
        is_projective_identity(power, tol),
    )
    return VerificationReport(complex(z), tol, (early, exact))


def verify_constructions(z: complex, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Report-style version of the cross-checks in :func:`stabilizer_generators`."""
    g = generators(z)
    pairs = (
        ("construction.p", P_WORD, evaluate_word(g, P_WORD_SHORT), "z1^2"),
        ("construction.z2*", Z2_STAR_WORD, z2_star_closed_form(g.z), "closed matrix"),
    )
    results = []
    for name, word, other, label in pairs:
        dev = _deviation(evaluate_word(g, word), other)
        results.append(RelatorResult(name, f"{word} vs {label}", dev, dev <= tol))
    return VerificationReport(g.z, tol, tuple(results))


def verify_all(z: complex, k: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Edge cycle, both presentations, compact relators, constructions and
    rotation order."""
    return (
        verify_edge_cycle(z, tol)
        + verify_presentation(z, k, tol)
        + verify_compact_relations(z, k, tol)
        + verify_constructions(z, tol)
        + verify_rotation_order(z, k, tol)
    )
