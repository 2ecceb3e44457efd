"""Command line interface.

Exit codes: 0 success, 1 verification or I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .holonomy import DEFAULT_TOL, verify_all
from .ideal_simplex import lobachevsky
from .moebius import INFINITY
from .surgery import Branch, SurgeryError, limit, solve
from .tiling import MAX_DEPTH, SvgStyle, orbit_tiles, render_svg

PAPER_KS = (2, 3, 4, 9, 50)
LIMIT_CHECK_K = 10**4

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt12(x: float) -> str:
    s = f"{x:.12f}"
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def _deg(x: float) -> str:
    return f"{math.degrees(x):.2f}"


@dataclass(frozen=True)
class TableRow:
    k_label: str
    z: complex
    angles: tuple[float, float, float]
    volume: float
    classification: str
    v: object = None

    @property
    def degrees(self) -> tuple[str, str, str]:
        return tuple(_deg(a) for a in self.angles)

    def fields(self) -> dict:
        a1, a2, a3 = self.angles
        d1, d2, d3 = self.degrees
        v = self.v
        return {
            "k": self.k_label,
            "z_re": _fmt12(self.z.real),
            "z_im": _fmt12(self.z.imag),
            "alpha1": _fmt12(a1),
            "alpha2": _fmt12(a2),
            "alpha3": _fmt12(a3),
            "alpha1_deg": d1,
            "alpha2_deg": d2,
            "alpha3_deg": d3,
            "volume": _fmt12(self.volume),
            "classification": self.classification,
            "v_re": "inf" if v is INFINITY else _fmt12(v.real),
            "v_im": "inf" if v is INFINITY else _fmt12(v.imag),
        }


def k_label(branch: Branch, k: int, paper_style: bool) -> str:
    if not paper_style or branch in (Branch.GIES3, Branch.GIES4):
        return f"k={k}"
    return f"{k - 1}/{k} i.e. k={k}"


TABLE_HEADERS = {
    Branch.GIES1: "k/(k-1)",
    Branch.GIES2: "(k-1)/k",
    Branch.GIES3: "k",
    Branch.GIES4: "k",
}


def table_rows(branch: Branch, ks: Sequence[int], paper_style: bool = False, with_limit: bool = False):
    rows = []
    for k in ks:
        s = solve(branch, k)
        rows.append(TableRow(k_label(branch, k, paper_style), s.z, tuple(s.angles), s.volume,
                             s.classification.value, s.v))
    if with_limit:
        lim = limit(branch)
        rows.append(TableRow("k->inf", lim.z_limit, lim.angle_limits, lim.volume_limit, "limit",
                             lim.v_limit))
    return rows


def _render_table(rows: list[TableRow], fmt: str, header: str) -> str:
    if fmt == "json":
        return json.dumps([r.fields() for r in rows], indent=2) + "\n"
    cols = list(rows[0].fields()) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r.fields())
        return buf.getvalue()
    # markdown
    lines = [
        f"| {header} | z | alpha1 | alpha2 | alpha3 | Volume |",
        "|---|---|---|---|---|---|",
    ]
    for r in rows:
        f = r.fields()
        z = f"{f['z_re']} {'+' if r.z.imag >= 0 else '-'} i*{_fmt12(abs(r.z.imag))}"
        angs = [f"{f[f'alpha{i}']} ({f[f'alpha{i}_deg']}°)" for i in (1, 2, 3)]
        lines.append(f"| {r.k_label} | {z} | " + " | ".join(angs) + f" | {f['volume']} |")
    return "\n".join(lines) + "\n"


def _write(text: str | bytes, out: Optional[str]) -> None:
    if out is None:
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
        else:
            sys.stdout.write(text)
        return
    mode = "wb" if isinstance(text, bytes) else "w"
    kwargs = {} if isinstance(text, bytes) else {"encoding": "utf-8"}
    with open(out, mode, **kwargs) as fh:
        fh.write(text)


def _solve(branch: str, k: int):
    try:
        return solve(branch, k)
    except SurgeryError as exc:
        raise UsageError(str(exc)) from exc


def cmd_solve(args) -> int:
    s = _solve(args.branch, args.k)
    if args.format == "json":
        _write(json.dumps(s.to_dict(), indent=2) + "\n", args.out)
    else:
        a1, a2, a3 = s.angles
        lines = [
            f"branch          {s.branch.label}",
            f"k               {s.k}",
            f"z               {_fmt12(s.z.real)} {'+' if s.z.imag >= 0 else '-'} "
            f"{_fmt12(abs(s.z.imag))} i",
            *(f"alpha{i}          {_fmt12(a)}  ({_deg(a)} deg)" for i, a in enumerate(s.angles, 1)),
            f"v               {_fmt12(s.v.real)} {'+' if s.v.imag >= 0 else '-'} "
            f"{_fmt12(abs(s.v.imag))} i",
            f"phi             {_fmt12(s.phi)}",
            f"volume          {_fmt12(s.volume)}",
            f"classification  {s.classification.value}",
            f"cone_angle      {_fmt12(s.cone_angle)}",
        ]
        _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    branch = Branch(args.branch)
    if args.paper:
        ks = list(PAPER_KS)
    elif args.k_list:
        ks = args.k_list
    else:
        raise UsageError("give --paper or --k-list")
    for k in ks:
        _solve(branch, k)
    rows = table_rows(branch, ks, paper_style=args.paper, with_limit=args.paper or args.limit)
    _write(_render_table(rows, args.format, TABLE_HEADERS[branch]), args.out)
    if args.check_limit:
        lim = limit(branch)
        far = solve(branch, LIMIT_CHECK_K)
        print(
            f"limit check k={LIMIT_CHECK_K}: |z - z_lim| = {abs(far.z - lim.z_limit):.3e}, "
            f"|vol - vol_lim| = {abs(far.volume - lim.volume_limit):.3e}",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    s = _solve(args.branch, args.k)
    z = s.z + args.perturb
    report = verify_all(z, s.k, args.tol)
    _write(f"{s.branch.label} k={s.k}\n{report}\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_render(args) -> int:
    if not 0 <= args.depth <= MAX_DEPTH:
        raise UsageError(f"--depth must be in [0, {MAX_DEPTH}]")
    s = _solve(args.branch, args.k)
    svg = render_svg(orbit_tiles(s.z, args.depth), SvgStyle(width=args.width))
    _write(svg, args.out)
    return EXIT_OK


def cmd_limit(args) -> int:
    lim = limit(args.branch)
    v = lim.v_limit
    data = {
        "branch": lim.branch.value,
        "z_re": lim.z_limit.real,
        "z_im": lim.z_limit.imag,
        "v_re": "inf" if v is INFINITY else v.real,
        "v_im": "inf" if v is INFINITY else v.imag,
        "alpha1": lim.angle_limits[0],
        "alpha2": lim.angle_limits[1],
        "alpha3": lim.angle_limits[2],
        "volume": lim.volume_limit,
    }
    _write(json.dumps(data, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_lobachevsky(args) -> int:
    _write(_fmt12(lobachevsky(args.theta)) + "\n", None)
    return EXIT_OK


def _finite_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return x


def _positive_float(text: str) -> float:
    x = _finite_float(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gieseking",
        description="Surgeries of the Gieseking ideal simplex manifold.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    branches = [b.value for b in Branch]

    def add_branch(p, k=True):
        p.add_argument("--branch", required=True, choices=branches)
        if k:
            p.add_argument("--k", required=True, type=int)
        p.add_argument("--out", default=None, help="write to file instead of stdout")

    p = sub.add_parser("solve", help="solve the surgery equation for one series and k")
    add_branch(p)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="table of roots, angles and volumes")
    add_branch(p, k=False)
    p.add_argument("--k-list", type=int, nargs="+", default=None)
    p.add_argument("--paper", action="store_true", help="k in {2,3,4,9,50} plus the limit row")
    p.add_argument("--limit", action="store_true", help="append the k->inf row")
    p.add_argument("--check-limit", action="store_true",
                   help=f"also evaluate k={LIMIT_CHECK_K} and report the gap on stderr")
    p.add_argument("--format", choices=["md", "csv", "json"], default="md")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check all group relators numerically")
    add_branch(p)
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--perturb", type=_finite_float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="SVG of the cusp tiling")
    add_branch(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--width", type=int, default=800)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("limit", help="closed-form k -> infinity limits")
    add_branch(p, k=False)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("lobachevsky", help="evaluate the Lobachevsky function")
    p.add_argument("--theta", required=True, type=_finite_float)
    p.set_defaults(func=cmd_lobachevsky)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
