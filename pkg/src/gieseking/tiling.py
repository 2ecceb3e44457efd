"""Orbit of the base triangle (0, 1, z) under the cusp stabilizer, as SVG.

The stabilizer of infinity is generated by ``z1``, ``p`` and ``z2*``; all of
them are (possibly orientation reversing) similarities of the plane, so the
orbit tiles are triangles similar to the base one.  For surgered parameters
they spiral towards the common fixed point ``v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence
from xml.sax.saxutils import quoteattr

from .holonomy import GeneratorSet, generators, stabilizer_generators
from .moebius import IDENTITY, ExtendedMoebius, GroupWord, apply, compose, inverse, projectively_equal

__all__ = [
    "Viewport",
    "Tile",
    "TileOrbit",
    "SvgStyle",
    "STABILIZER_SYMBOLS",
    "transform_key",
    "orbit_tiles",
    "render_svg",
]

STABILIZER_SYMBOLS = ("z1", "p", "z2*")
MAX_DEPTH = 12
HASH_QUANTUM = 1e-8
CULL_FRACTION = 0.005


@dataclass(frozen=True)
class Viewport:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        vals = (self.xmin, self.ymin, self.xmax, self.ymax)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("viewport bounds must be finite")
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError(f"degenerate viewport {vals}")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def contains(self, u: complex) -> bool:
        return self.xmin <= u.real <= self.xmax and self.ymin <= u.imag <= self.ymax

    @classmethod
    def around(cls, points: Sequence[complex], margin: float = 0.25) -> "Viewport":
        xs = [p.real for p in points]
        ys = [p.imag for p in points]
        pad = margin * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        return cls(min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


@dataclass(frozen=True)
class Tile:
    vertices: tuple[complex, complex, complex]
    word: GroupWord
    depth: int
    transform: ExtendedMoebius = field(repr=False, compare=False)

    @property
    def diameter(self) -> float:
        a, b, c = self.vertices
        return max(abs(a - b), abs(b - c), abs(c - a))

    def sort_key(self) -> tuple:
        return (len(self.word), str(self.word))


@dataclass(frozen=True)
class TileOrbit:
    z: complex
    tiles: tuple[Tile, ...]
    viewport: Viewport
    fixed_point: Optional[complex] = None

    @property
    def base(self) -> tuple[complex, complex, complex]:
        return (0j, 1 + 0j, self.z)

    def __len__(self) -> int:
        return len(self.tiles)


def transform_key(t: ExtendedMoebius, quantum: float = HASH_QUANTUM) -> tuple:
    """Hashable, projectively invariant fingerprint of ``t``.

    The matrix is divided by its first entry of (nearly) maximal modulus and
    the remaining entries are rounded to multiples of ``quantum``.
    """
    entries = t.entries
    top = max(abs(x) for x in entries)
    idx = next(i for i, x in enumerate(entries) if abs(x) >= (1 - 1e-6) * top)
    lam = entries[idx]
    q = tuple(
        (round((x / lam).real / quantum), round((x / lam).imag / quantum)) for x in entries
    )
    return (t.reversing, idx, q)


def _culled(vertices, viewport: Viewport) -> bool:
    a, b, c = vertices
    diam = max(abs(a - b), abs(b - c), abs(c - a))
    small = diam < CULL_FRACTION * max(viewport.width, viewport.height)
    return small and not any(viewport.contains(v) for v in vertices)


def orbit_tiles(
    z: complex,
    depth: int,
    viewport: Optional[Viewport] = None,
    gens: Optional[GeneratorSet] = None,
) -> TileOrbit:
    """Breadth-first orbit of the base triangle over words of length <= depth.

    Letters are ``z1``, ``p``, ``z2*`` and their inverses.  Every group
    element is kept once, under the first (shortest) word reaching it.
    """
    if isinstance(depth, bool) or int(depth) != depth or not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be an integer in [0, {MAX_DEPTH}], got {depth!r}")
    z = complex(z)
    if gens is None:
        gens = stabilizer_generators(generators(z))
    v = z / (1 - abs(z)) if abs(abs(z) - 1) > 1e-12 else None
    base = (0j, 1 + 0j, z)
    if viewport is None:
        if v is None:
            viewport = Viewport.around(base, margin=1.5)
        else:
            viewport = Viewport.around([*base, v])

    letters = []
    for s in STABILIZER_SYMBOLS:
        letters.append(((s, 1), gens[s]))
        letters.append(((s, -1), inverse(gens[s])))

    seen: dict[tuple, list[ExtendedMoebius]] = {transform_key(IDENTITY): [IDENTITY]}
    tiles = [Tile(base, GroupWord(), 0, IDENTITY)]
    frontier = [(GroupWord(), IDENTITY)]
    for d in range(1, depth + 1):
        nxt = []
        for word, t in frontier:
            for letter, g in letters:
                if word.letters and word.letters[-1] == (letter[0], -letter[1]):
                    continue
                t2 = compose(t, g).normalized()
                key = transform_key(t2)
                bucket = seen.setdefault(key, [])
                if any(projectively_equal(t2, other, 1e-9) for other in bucket):
                    continue
                bucket.append(t2)
                w2 = GroupWord(word.letters + (letter,))
                nxt.append((w2, t2))
                verts = tuple(apply(t2, u) for u in base)
                if not all(isinstance(u, complex) for u in verts):
                    # stabilizer elements fix infinity, so this cannot occur
                    continue
                if not _culled(verts, viewport):
                    tiles.append(Tile(verts, w2, d, t2))
        frontier = nxt
    tiles.sort(key=Tile.sort_key)
    return TileOrbit(z, tuple(tiles), viewport, v)


DEFAULT_PALETTE = (
    "#f4d35e",
    "#ee964b",
    "#f95738",
    "#0d3b66",
    "#3f88c5",
    "#44bba4",
    "#e94f37",
    "#393e41",
    "#a6a2a2",
    "#7c6a0a",
    "#babd8d",
    "#ffdac6",
    "#fa9500",
)


@dataclass(frozen=True)
class SvgStyle:
    stroke_width: float = 0.6
    palette: tuple[str, ...] = DEFAULT_PALETTE
    show_fixed_point: bool = True
    width: int = 800
    fill_opacity: float = 0.55


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(orbit: TileOrbit, style: Optional[SvgStyle] = None) -> bytes:
    """SVG 1.1 document with one ``<path>`` per tile, y axis pointing up."""
    style = style or SvgStyle()
    vp = orbit.viewport
    W = float(style.width)
    H = W * vp.height / vp.width

    def to_px(u: complex) -> tuple[str, str]:
        return _fmt((u.real - vp.xmin) / vp.width * W), _fmt((vp.ymax - u.imag) / vp.height * H)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(W)}" height="{_fmt(H)}" viewBox="0 0 {_fmt(W)} {_fmt(H)}">',
        f'<defs><clipPath id="viewport"><rect x="0" y="0" width="{_fmt(W)}" '
        f'height="{_fmt(H)}"/></clipPath></defs>',
        f'<rect class="frame" x="0" y="0" width="{_fmt(W)}" height="{_fmt(H)}" '
        'fill="white" stroke="black" stroke-width="1"/>',
        '<g clip-path="url(#viewport)" stroke="black" stroke-linejoin="round" '
        f'stroke-width="{_fmt(style.stroke_width)}" fill-opacity="{_fmt(style.fill_opacity)}">',
    ]
    for tile in sorted(orbit.tiles, key=Tile.sort_key):
        (x0, y0), (x1, y1), (x2, y2) = (to_px(u) for u in tile.vertices)
        colour = style.palette[tile.depth % len(style.palette)]
        out.append(
            f'<path d="M {x0} {y0} L {x1} {y1} L {x2} {y2} Z" fill="{colour}" '
            f"data-word={quoteattr(str(tile.word))}/>"
        )
    out.append("</g>")
    if style.show_fixed_point and orbit.fixed_point is not None and vp.contains(orbit.fixed_point):
        cx, cy = to_px(orbit.fixed_point)
        out.append(f'<circle class="fixed-point" cx="{cx}" cy="{cy}" r="3" fill="red"/>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
