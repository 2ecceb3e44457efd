"""Acceptance criteria, one block per criterion.

Each ``criterion_*`` function returns a list of ``(ok, detail)`` checks.  Under
pytest every check is recorded and a one-line verdict per criterion is printed
in the terminal summary; ``python3 tests/test_acceptance.py`` prints the same
lines directly.
"""

import cmath
import contextlib
import functools
import io
import math
import random
import sys
import time
import xml.etree.ElementTree as ET

import pytest

from conftest import CRITERIA, MANIFOLD_Z, angle_gap
from golden import LIMIT_GIES3_VOLUME, SQRT5, TABLES
from oracles import brute_force_distinct, lobachevsky_quadrature
from gieseking.cli import main as cli_main
from gieseking.holonomy import (
    P_WORD,
    P_WORD_SHORT,
    Z2_STAR_WORD,
    generators,
    stabilizer_generators,
    z2_star_closed_form,
)
from gieseking.ideal_simplex import dihedral_angles, gieseking_residual, lobachevsky
from gieseking.moebius import apply, evaluate_word, projective_deviation, compose, inverse
from gieseking.surgery import Branch, Region, limit, region_of, solve, solve_general
from gieseking.tiling import Viewport, orbit_tiles, render_svg

PI = math.pi
K_RANGE = range(2, 51)
K_WIDE = range(2, 201)
EXPECTED_REGION = {Branch.GIES1: Region.A, Branch.GIES2: Region.B,
                   Branch.GIES3: Region.A, Branch.GIES4: Region.B}


@functools.lru_cache(maxsize=None)
def root(branch, k):
    return solve(branch, k)


def check(ok, detail):
    return (bool(ok), detail)


def _gap(what, got, want, tol):
    d = abs(got - want)
    return check(d <= tol, f"{what}: |{got:.12f} - {want:.12f}| = {d:.2e} (tol {tol:g})")


# 1 -------------------------------------------------------------------------

def table_row_checks(branch, row):
    tag = f"{branch} k={row.k}"
    s = solve(branch, row.k)
    out = [
        _gap(f"{tag} Re z", s.z.real, row.z.real, 1e-9),
        _gap(f"{tag} Im z", s.z.imag, row.z.imag, 1e-9),
        _gap(f"{tag} volume", s.volume, row.volume, 1e-9),
    ]
    for slot, which in enumerate(row.order):
        out.append(_gap(f"{tag} printed angle {slot + 1} (alpha{which})",
                        s.angles[which - 1], row.angles[slot], 1e-9))
    for i, (a, b) in enumerate(zip(sorted(s.angles), sorted(row.angles))):
        out.append(_gap(f"{tag} sorted angle {i + 1}", a, b, 1e-9))
    return out


def criterion_1_timing():
    t0 = time.perf_counter()
    for branch, rows in TABLES.items():
        for row in rows:
            solve(branch, row.k)
    dt = time.perf_counter() - t0
    return [check(dt < 1.0, f"15 table rows in {dt:.3f} s (limit 1 s)")]


# 2 -------------------------------------------------------------------------

def criterion_2():
    l1, l3 = limit("gies1"), limit("gies3")
    far1, far3 = solve("gies1", 10**4), solve("gies3", 10**4)
    return [
        _gap("limit gies1 z", l1.z_limit.real, (3 + SQRT5) / 2, 1e-12),
        check(l1.z_limit.imag == 0, "limit gies1 z is real"),
        _gap("limit gies1 v", l1.v_limit.real, -(1 + SQRT5) / 2, 1e-12),
        check(l1.volume_limit == 0, "limit gies1 volume is 0"),
        _gap("limit gies3 volume", l3.volume_limit, LIMIT_GIES3_VOLUME, 1e-9),
        _gap("3 Lambda(pi/3)", 3 * lobachevsky(PI / 3), LIMIT_GIES3_VOLUME, 1e-9),
        _gap("volume gies3 k=1e4 vs limit", far3.volume, 3 * lobachevsky(PI / 3), 1e-6),
        check(far1.volume <= 1e-3, f"volume gies1 k=1e4 = {far1.volume:.3e} <= 1e-3"),
    ]


# 3 -------------------------------------------------------------------------

def criterion_3():
    out = []
    t0 = time.perf_counter()
    for b in Branch:
        for k in K_RANGE:
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = cli_main(["verify", "--branch", b.value, "--k", str(k), "--tol", "1e-10"])
            if code != 0:
                failed = [l for l in buf.getvalue().splitlines() if l.startswith("[FAIL]")]
                out.append(check(False, f"verify {b.value} k={k} exit {code}: {failed}"))
            else:
                out.append(check(True, f"verify {b.value} k={k}"))
    dt = time.perf_counter() - t0
    out.append(check(dt < 10.0, f"full verify sweep in {dt:.2f} s (limit 10 s)"))
    return out


# 4 -------------------------------------------------------------------------

def curve_points(n, seed=20240101):
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        z = solve_general(cmath.exp(1j * rng.uniform(0, PI)))[0]
        if z.imag > 1e-6:
            pts.append(z)
    return pts


def _constructions(z, tag):
    g = generators(z)
    z2s_word = evaluate_word(g, Z2_STAR_WORD)
    d_z2s = projective_deviation(compose(z2s_word, inverse(z2_star_closed_form(z))))
    d_p = projective_deviation(compose(evaluate_word(g, P_WORD),
                                       inverse(evaluate_word(g, P_WORD_SHORT))))
    return [
        check(d_z2s <= 1e-10, f"{tag} z2* word vs closed matrix dev {d_z2s:.2e}"),
        check(d_p <= 1e-10, f"{tag} p word vs z1^2 dev {d_p:.2e}"),
    ]


def criterion_4():
    out = []
    for b in Branch:
        for k in K_WIDE:
            out += _constructions(root(b, k).z, f"{b.value} k={k}")
    for i, z in enumerate(curve_points(50)):
        out += _constructions(z, f"curve point {i}")
    return out


# 5 -------------------------------------------------------------------------

def criterion_5():
    rng = random.Random(12345)
    out = []
    for _ in range(100):
        t = rng.uniform(-3 * PI, 3 * PI)
        out.append(_gap(f"Lambda({t:.6f}) vs quadrature", lobachevsky(t),
                        lobachevsky_quadrature(t), 1e-10))
    for name, t in (("0", 0.0), ("pi/2", PI / 2), ("pi", PI)):
        out.append(_gap(f"Lambda({name})", lobachevsky(t), 0.0, 1e-13))
    return out


# 6 -------------------------------------------------------------------------

def criterion_6():
    out = []
    for b in Branch:
        for k in K_WIDE:
            s = root(b, k)
            tag = f"{b.value} k={k}"
            out.append(_gap(f"{tag} angle sum", sum(dihedral_angles(s.z)), PI, 1e-12))
            res = gieseking_residual(s.z)
            out.append(check(res <= 1e-10, f"{tag} |z-1|^2 = |z| residual {res:.2e}"))
            reg = region_of(s.z)
            out.append(check(reg is EXPECTED_REGION[b], f"{tag} region {reg.value}"))
            a1, _, a3 = s.angles
            g = angle_gap(s.phi, 2 * a1 + 4 * a3)
            out.append(check(g <= 1e-10, f"{tag} phi vs 2 a1 + 4 a3 gap {g:.2e}"))
    for k in K_WIDE:
        for x, y in ((Branch.GIES1, Branch.GIES2), (Branch.GIES3, Branch.GIES4)):
            out.append(_gap(f"half-turn {x.value}/{y.value} k={k} volume",
                            root(x, k).volume, root(y, k).volume, 1e-11))
    d = abs(root(Branch.GIES1, 2).z - root(Branch.GIES3, 2).z)
    out.append(check(d <= 1e-10, f"k=2 gies1/gies3 roots coincide, gap {d:.2e}"))
    return out


# 7 -------------------------------------------------------------------------

def _diam(tri):
    a, b, c = tri
    return max(abs(a - b), abs(b - c), abs(c - a))


def criterion_7():
    out = []
    z = solve("gies1", 3).z
    a = render_svg(orbit_tiles(z, 6))
    b = render_svg(orbit_tiles(z, 6))
    out.append(check(a == b, "gies1 k=3 depth 6 SVG byte-identical on rerun"))
    ET.fromstring(a)
    zero = render_svg(orbit_tiles(z, 0))
    n = len(ET.fromstring(zero).findall(".//{http://www.w3.org/2000/svg}path"))
    out.append(check(n == 1, f"depth-0 SVG has {n} path(s)"))
    for branch, k in (("gies1", 3), ("gies2", 5), ("gies3", 9), ("gies4", 50)):
        zz = solve(branch, k).z
        p = stabilizer_generators(generators(zz))["p"]
        tri = (0j, 1 + 0j, zz)
        for j in range(1, 6):
            new = tuple(apply(p, u) for u in tri)
            ratio = _diam(new) / _diam(tri)
            out.append(_gap(f"{branch} k={k} p^{j} shrink", ratio, 1 / abs(zz), 1e-9))
            tri = new
    p = stabilizer_generators(generators(MANIFOLD_Z))["p"]
    tri = (0j, 1 + 0j, MANIFOLD_Z)
    d0 = _diam(tri)
    for j in range(1, 6):
        tri = tuple(apply(p, u) for u in tri)
        out.append(_gap(f"manifold p^{j} diameter", _diam(tri), d0, 1e-9))
    big = Viewport(-1e6, -1e6, 1e6, 1e6)
    for label, zz in (("manifold", MANIFOLD_Z), ("gies1 k=3", z)):
        g = stabilizer_generators(generators(zz))
        want = len(brute_force_distinct({s: g[s] for s in ("z1", "p", "z2*")}, 2))
        got = len(orbit_tiles(zz, 2, viewport=big))
        out.append(check(got == want, f"{label} depth-2 orbit {got} tiles, oracle {want}"))
    return out


# pytest glue ----------------------------------------------------------------

def record(n, checks):
    CRITERIA.setdefault(n, []).extend(checks)
    bad = [d for ok, d in checks if not ok]
    assert not bad, "; ".join(bad[:10])


GOLDEN_CASES = [(b, row) for b, rows in TABLES.items() for row in rows]


@pytest.mark.parametrize("branch,row", GOLDEN_CASES, ids=[f"{b}-k{r.k}" for b, r in GOLDEN_CASES])
def test_criterion_1_golden_tables(branch, row):
    record(1, table_row_checks(branch, row))


def test_criterion_1_runtime():
    record(1, criterion_1_timing())


def test_criterion_2_limits():
    record(2, criterion_2())


def test_criterion_3_relator_suite():
    record(3, criterion_3())


def test_criterion_4_cross_constructions():
    record(4, criterion_4())


def test_criterion_5_lobachevsky_oracle():
    record(5, criterion_5())


def test_criterion_6_structural_invariants():
    record(6, criterion_6())


def test_criterion_7_renderer():
    record(7, criterion_7())


def _run_all():
    blocks = {
        1: [c for b, r in GOLDEN_CASES for c in table_row_checks(b, r)] + criterion_1_timing(),
        2: criterion_2(),
        3: criterion_3(),
        4: criterion_4(),
        5: criterion_5(),
        6: criterion_6(),
        7: criterion_7(),
    }
    all_ok = True
    for n, checks in blocks.items():
        bad = [d for ok, d in checks if not ok]
        all_ok &= not bad
        print(f"criterion {n}: {'PASS' if not bad else 'FAIL'} "
              f"({len(checks) - len(bad)}/{len(checks)} checks)")
        for d in bad:
            print(f"    failed: {d}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(_run_all())
