"""``weaver`` command line.

Exit codes: 0 success, 2 invalid input, 3 failed invariant or broken
triangulation, 4 file I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .bounds import bound_report
from .diagram import make_weave_spec
from .errors import DomainError, WeaverError
from .report import dumps, limit_profile, run_volume, triangulation_to_dict
from .snappea import to_snappea
from .triangulation import build

EXIT_OK, EXIT_DOMAIN, EXIT_INVARIANT, EXIT_IO = 0, 2, 3, 4
CSV_COLUMNS = [
    "p", "q", "crossings", "lower_filled", "upper_filled", "lower_axis", "upper_axis",
    "exact_axis", "density_lower", "density_upper", "sharpness_ratio", "lower_valid",
]
PROFILE_COLUMNS = ["p", "q", "epsilon", "volume", "octahedra", "count", "longest_run",
                   "grid_sheets", "grid_octahedra", "middle_regularity"]


def parse_range(text: str) -> list[int]:
    """'3..7' -> [3, 4, 5, 6, 7]; '5' -> [5]; '3,5,8' -> [3, 5, 8]."""
    try:
        if ".." in text:
            lo, hi = (int(s) for s in text.split("..", 1))
            if hi < lo:
                raise DomainError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise DomainError(f"not an integer range: {text!r}") from None


def _write(path: str, text: str) -> None:
    p = Path(path)
    if p.parent and not p.parent.is_dir():
        raise OSError(f"directory does not exist: {p.parent}")
    p.write_text(text)


def _check_writable(*paths) -> None:
    for path in paths:
        if path is None or path == "-":
            continue
        parent = Path(path).parent
        if not parent.is_dir():
            raise OSError(f"directory does not exist: {parent}")


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        _write(out, text)


def _fmt_cell(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt_cell(r[c]) for c in columns])
    return buf.getvalue()


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*items)))  # map keeps input order


# -- commands --------------------------------------------------------------

def cmd_triangulate(args) -> int:
    make_weave_spec(args.p, args.q)
    _check_writable(args.out, args.snappea)
    tri = build(args.p, args.q)
    _write(args.out, dumps(triangulation_to_dict(tri)))
    if args.snappea:
        _write(args.snappea, to_snappea(tri, name=f"W({args.p},{args.q})+B"))
    print(f"W({args.p},{args.q}) u B: {tri.n} tetrahedra, {len(tri.edges)} edges, "
          f"{len(tri.cusps)} cusps")
    return EXIT_OK


def cmd_volume(args) -> int:
    make_weave_spec(args.p, args.q)
    _check_writable(args.report)
    report = run_volume(args.p, args.q, grad_tol=args.tol, seed=args.seed,
                        timing=args.timing, corrupt=args.corrupt_gluing)
    if args.report:
        _write(args.report, report.to_json())
    r = report.result
    print(f"volume {r['volume']:.15g}  |grad| {r['grad_norm']:.2e}  iterations {r['iterations']}")
    for name, ok in report.checks.items():
        print(f"  {name:26s} {'PASS' if ok else 'FAIL'}")
    if not report.ok:
        print("failed invariants: " + ", ".join(report.failed), file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.table:
        ps, qs = parse_range(args.table[0]), parse_range(args.table[1])
    elif args.p is not None and args.q is not None:
        ps, qs = [args.p], [args.q]
    else:
        raise DomainError("give P Q or --table P_RANGE Q_RANGE")
    for p in ps:
        for q in qs:
            make_weave_spec(p, q)
    _check_writable(args.out)
    rows = [r.as_dict() for r in _map(bound_report, [(p, q) for p in ps for q in qs], args.jobs)]
    text = dumps(rows) if args.format == "json" else _csv(rows, CSV_COLUMNS)
    _emit(text, args.out)
    return EXIT_OK


def cmd_limit_profile(args) -> int:
    ps, qs = parse_range(args.p), parse_range(args.q)
    for p in ps:
        for q in qs:
            make_weave_spec(p, q)
    if args.epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {args.epsilon}")
    _check_writable(args.out)
    items = [(p, q, args.epsilon) for p in ps for q in qs]
    rows = _map(limit_profile, items, args.jobs)
    if args.format == "json":
        text = dumps(rows)
    else:
        flat = [dict(r, grid_sheets=r["grid"][0], grid_octahedra=r["grid"][1]) for r in rows]
        text = _csv(flat, PROFILE_COLUMNS)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weaver", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"weaver {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("triangulate", help="write the triangulation of W(p,q) u B")
    t.add_argument("p", type=int)
    t.add_argument("q", type=int)
    t.add_argument("--out", required=True, help="JSON triangulation path")
    t.add_argument("--snappea", help="also write a SnapPea-format file here")
    t.set_defaults(func=cmd_triangulate)

    v = sub.add_parser("volume", help="maximize volume and run the invariant checks")
    v.add_argument("p", type=int)
    v.add_argument("q", type=int)
    v.add_argument("--with-axis", action="store_true",
                   help="accepted for clarity; the computed manifold always includes the axis")
    v.add_argument("--report", help="write the JSON run report here")
    v.add_argument("--tol", type=float, default=1e-10, help="gradient-norm tolerance (default 1e-10)")
    v.add_argument("--seed", type=int, default=None,
                   help="start from a random interior structure drawn with this seed")
    v.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    v.add_argument("--corrupt-gluing", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_volume)

    b = sub.add_parser("bounds", help="closed-form volume bounds")
    b.add_argument("p", type=int, nargs="?")
    b.add_argument("q", type=int, nargs="?")
    b.add_argument("--table", nargs=2, metavar=("P_RANGE", "Q_RANGE"),
                   help="ranges like 3..12 or lists like 3,5,8")
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--out", help="output file (default stdout)")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bounds)

    lp = sub.add_parser("limit-profile", help="octahedron convergence diagnostics")
    lp.add_argument("--p", required=True, help="strand counts, e.g. 5,8,12,16,20")
    lp.add_argument("--q", default="1", help="repetition counts (default 1)")
    lp.add_argument("--epsilon", type=float, default=0.1)
    lp.add_argument("--format", choices=["csv", "json"], default="csv")
    lp.add_argument("--out", help="output file (default stdout)")
    lp.add_argument("--jobs", type=int, default=1)
    lp.set_defaults(func=cmd_limit_profile)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except WeaverError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
