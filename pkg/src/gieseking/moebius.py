"""Holomorphic and antiholomorphic Moebius maps of the Riemann sphere.

Conventions
-----------
A map is stored as a 2x2 complex matrix ``[[a, b], [c, d]]`` acting on
*row* vectors from the right, optionally after complex conjugation::

    (u, 1)  |->  conj?(u, 1) . [[a, b], [c, d]]

so that ``u |-> (a*u' + c) / (b*u' + d)`` with ``u' = conj(u)`` for
orientation-reversing maps.  Words are read left to right: the first letter
is applied first.  Matrices are only meaningful up to a nonzero scalar; no
attempt is made to normalise the determinant.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

__all__ = [
    "INFINITY",
    "BoundaryPoint",
    "DegenerateTransformationError",
    "ExtendedMoebius",
    "GroupWord",
    "FixedPoints",
    "IDENTITY",
    "compose",
    "inverse",
    "apply",
    "evaluate_word",
    "projective_deviation",
    "is_projective_identity",
    "projectively_equal",
    "rotation_angle_fixing_infinity",
    "fixed_points",
    "chordal_distance",
    "wrap_angle",
]

DET_GUARD = 1e-300
SIMILARITY_TOL = 1e-12


class _Infinity:
    """The point at infinity of the Riemann sphere (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
BoundaryPoint = Union[complex, _Infinity]


class DegenerateTransformationError(ValueError):
    pass


def wrap_angle(theta: float) -> float:
    """Principal representative of ``theta`` in (-pi, pi]."""
    t = math.remainder(theta, 2.0 * math.pi)
    # -pi up to rounding is reported as +pi
    if t <= -math.pi + 1e-12:
        t += 2.0 * math.pi
    return t


@dataclass(frozen=True)
class ExtendedMoebius:
    """One element of the extended Moebius group.

    ``reversing=True`` marks an antiholomorphic map (conjugate first).
    """

    a: complex
    b: complex
    c: complex
    d: complex
    reversing: bool = False

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "reversing", bool(self.reversing))
        if abs(self.det()) <= DET_GUARD:
            raise DegenerateTransformationError("degenerate transformation")

    @classmethod
    def from_matrix(cls, m, reversing: bool = False) -> "ExtendedMoebius":
        (a, b), (c, d) = m
        return cls(a, b, c, d, reversing)

    @property
    def matrix(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def scale(self) -> float:
        return max(abs(x) for x in self.entries)

    def normalized(self) -> "ExtendedMoebius":
        """Projectively equal copy with largest entry modulus 1."""
        s = self.scale()
        return ExtendedMoebius(self.a / s, self.b / s, self.c / s, self.d / s, self.reversing)

    def inverse(self) -> "ExtendedMoebius":
        return inverse(self)

    def __mul__(self, other: "ExtendedMoebius") -> "ExtendedMoebius":
        # left-to-right: (s * t) applies s first
        if not isinstance(other, ExtendedMoebius):
            return NotImplemented
        return compose(self, other)

    def __pow__(self, n: int) -> "ExtendedMoebius":
        base = self if n >= 0 else inverse(self)
        out = IDENTITY
        for _ in range(abs(n)):
            out = compose(out, base).normalized()
        return out

    def __call__(self, u: BoundaryPoint) -> BoundaryPoint:
        return apply(self, u)


IDENTITY = ExtendedMoebius(1, 0, 0, 1)


def compose(t1: ExtendedMoebius, t2: ExtendedMoebius) -> ExtendedMoebius:
    """Apply ``t1`` first, then ``t2``.

    The matrix of the product is ``sigma(m1) . m2`` where ``sigma`` conjugates
    entrywise exactly when ``t2`` is orientation reversing.
    """
    a1, b1, c1, d1 = t1.entries
    if t2.reversing:
        a1, b1, c1, d1 = a1.conjugate(), b1.conjugate(), c1.conjugate(), d1.conjugate()
    a2, b2, c2, d2 = t2.entries
    return ExtendedMoebius(
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
        t1.reversing != t2.reversing,
    )


def inverse(t: ExtendedMoebius) -> ExtendedMoebius:
    # compose(t, s) = sigma_s(m_t) . m_s must be scalar, and s shares the
    # orientation of t; hence m_s is the adjugate of sigma(m_t).
    if abs(t.det()) <= DET_GUARD:
        raise DegenerateTransformationError("degenerate transformation")
    a, b, c, d = t.entries
    if t.reversing:
        a, b, c, d = a.conjugate(), b.conjugate(), c.conjugate(), d.conjugate()
    return ExtendedMoebius(d, -b, -c, a, t.reversing)


def apply(t: ExtendedMoebius, u: BoundaryPoint) -> BoundaryPoint:
    """Image of the boundary point ``u`` under ``t``."""
    if u is INFINITY:
        num, den = t.a, t.b
    else:
        u = complex(u)
        if t.reversing:
            u = u.conjugate()
        num = t.a * u + t.c
        den = t.b * u + t.d
    if den == 0:
        return INFINITY
    return num / den


def chordal_distance(u: BoundaryPoint, v: BoundaryPoint) -> float:
    """Chordal metric on the Riemann sphere (diameter 2)."""
    if u is INFINITY and v is INFINITY:
        return 0.0
    if u is INFINITY:
        u, v = v, u
    if v is INFINITY:
        return 2.0 / math.sqrt(1.0 + abs(u) ** 2)
    return 2.0 * abs(u - v) / math.sqrt((1.0 + abs(u) ** 2) * (1.0 + abs(v) ** 2))


_TOKEN = re.compile(r"^([^\s^]+?)(?:\^\(?([+-]?\d+)\)?)?$")


@dataclass(frozen=True)
class GroupWord:
    """A word in named generators: a tuple of ``(symbol, +1 | -1)`` letters."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        letters = tuple((str(s), int(e)) for s, e in self.letters)
        for s, e in letters:
            if e not in (1, -1):
                raise ValueError(f"letter exponent must be +1 or -1, got {e} for {s!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse ``"z1 z1 z2^-1 z2^2"``; powers expand to repeated letters."""
        letters: list[tuple[str, int]] = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if m is None:
                raise ValueError(f"cannot parse word token {tok!r}")
            sym, power = m.group(1), int(m.group(2) or 1)
            letters.extend([(sym, 1 if power > 0 else -1)] * abs(power))
        return cls(tuple(letters))

    @classmethod
    def of(cls, word: "GroupWord | str") -> "GroupWord":
        return word if isinstance(word, GroupWord) else cls.parse(word)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.letters)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + GroupWord.of(other).letters)

    def __mul__(self, n: int) -> "GroupWord":
        if n < 0:
            return self.inverse() * (-n)
        return GroupWord(self.letters * n)

    __pow__ = __mul__

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def reversed(self) -> "GroupWord":
        return GroupWord(tuple(reversed(self.letters)))

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}

    def substitute(self, mapping: Mapping[str, "GroupWord | str"]) -> "GroupWord":
        out: list[tuple[str, int]] = []
        for s, e in self.letters:
            if s in mapping:
                w = GroupWord.of(mapping[s])
                out.extend((w if e > 0 else w.inverse()).letters)
            else:
                out.append((s, e))
        return GroupWord(tuple(out))

    def freely_reduced(self) -> "GroupWord":
        stack: list[tuple[str, int]] = []
        for s, e in self.letters:
            if stack and stack[-1] == (s, -e):
                stack.pop()
            else:
                stack.append((s, e))
        return GroupWord(tuple(stack))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        i = 0
        n = len(self.letters)
        while i < n:
            j = i
            while j < n and self.letters[j] == self.letters[i]:
                j += 1
            s, e = self.letters[i]
            run = (j - i) * e
            parts.append(s if run == 1 else f"{s}^{run}")
            i = j
        return " ".join(parts)


def evaluate_word(
    gens: Mapping[str, ExtendedMoebius], word: "GroupWord | str"
) -> ExtendedMoebius:
    """Compose the letters of ``word`` left to right.

    The running product is rescaled after every letter so long relators do
    not overflow; the result is therefore only defined projectively.
    """
    word = GroupWord.of(word)
    missing = word.symbols() - set(gens)
    if missing:
        raise KeyError(f"unknown generator symbol {sorted(missing)[0]!r}")
    inverses: dict[str, ExtendedMoebius] = {}
    out = IDENTITY
    for s, e in word:
        if e > 0:
            t = gens[s]
        else:
            t = inverses.get(s)
            if t is None:
                t = inverses[s] = inverse(gens[s])
        out = compose(out, t).normalized()
    return out


def projective_deviation(t: ExtendedMoebius) -> float:
    """Max-entry distance of ``t`` from the identity after scaling.

    The matrix is divided by its diagonal entry of largest modulus.  The
    orientation flag is ignored here; see :func:`is_projective_identity`.
    """
    lam = t.a if abs(t.a) >= abs(t.d) else t.d
    if lam == 0:
        return math.inf
    a, b, c, d = (x / lam for x in t.entries)
    return max(abs(a - 1), abs(b), abs(c), abs(d - 1))


def is_projective_identity(t: ExtendedMoebius, tol: float = 1e-10) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return (not t.reversing) and projective_deviation(t) <= tol


def projectively_equal(t1: ExtendedMoebius, t2: ExtendedMoebius, tol: float = 1e-10) -> bool:
    return is_projective_identity(compose(t1, inverse(t2)), tol)


def rotation_angle_fixing_infinity(t: ExtendedMoebius) -> float:
    """Rotation angle ``arg(a/d)`` of a similarity ``u -> (a u + c)/d``."""
    if t.reversing or abs(t.b) > SIMILARITY_TOL * t.scale():
        raise ValueError("not a similarity fixing infinity")
    return wrap_angle(cmath.phase(t.a / t.d))


class FixedPoints(NamedTuple):
    points: tuple[BoundaryPoint, ...]
    supported: bool = True


def fixed_points(t: ExtendedMoebius) -> FixedPoints:
    """Fixed points of an orientation-preserving map.

    Antiholomorphic maps fix circles rather than points; for those an empty
    result with ``supported=False`` is returned.
    """
    if is_projective_identity(t, 1e-12):
        raise ValueError("identity map fixes every point")
    if t.reversing:
        return FixedPoints((), supported=False)
    a, b, c, d = t.normalized().entries
    # b u^2 + (d - a) u - c = 0
    if abs(b) <= SIMILARITY_TOL:
        if abs(d - a) <= SIMILARITY_TOL:
            return FixedPoints((INFINITY,))
        return FixedPoints((INFINITY, c / (d - a)))
    B = d - a
    sq = cmath.sqrt(B * B + 4 * b * c)
    q = -0.5 * (B + sq) if (B.conjugate() * sq).real >= 0 else -0.5 * (B - sq)
    if q == 0:
        return FixedPoints((0j,))
    r1, r2 = q / b, -c / q
    if abs(r1 - r2) <= SIMILARITY_TOL * max(1.0, abs(r1)):
        return FixedPoints((r1,))
    return FixedPoints((r1, r2))


def words_up_to(symbols: Iterable[str], length: int) -> Iterator[GroupWord]:
    """All freely reduced words of length <= ``length`` over symbols and inverses."""
    letters = [(s, e) for s in symbols for e in (1, -1)]
    level = [GroupWord()]
    yield GroupWord()
    for _ in range(length):
        nxt = []
        for w in level:
            for s, e in letters:
                if w.letters and w.letters[-1] == (s, -e):
                    continue
                nxt.append(GroupWord(w.letters + ((s, e),)))
        yield from nxt
        level = nxt
