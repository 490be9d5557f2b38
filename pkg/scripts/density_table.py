"""Volume-density brackets over a (p, q) grid, with the generic comparison.

    python3 scripts/density_table.py --p 3..12 --q 7..60 --out densities.csv
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from weaver.bounds import bound_report, generic_alternating_bounds, limiting_ratio
from weaver.cli import parse_range


@dataclass(frozen=True)
class Config:
    p: tuple[int, ...] = tuple(range(3, 13))
    q: tuple[int, ...] = (7, 10, 20, 40, 80)


def rows(cfg: Config):
    for p in cfg.p:
        for q in cfg.q:
            r = bound_report(p, q)
            glo, gup = generic_alternating_bounds(r.crossings) if r.crossings >= 5 else (None, None)
            yield {
                "p": p, "q": q, "crossings": r.crossings,
                "density_lower": r.density_lower, "density_upper": r.density_upper,
                "sharpness": r.sharpness_ratio, "limit_sharpness": limiting_ratio(p),
                "generic_sharpness": None if glo is None else glo / gup,
            }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", default="3..12")
    ap.add_argument("--q", default="7,10,20,40,80")
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    cfg = Config(tuple(parse_range(a.p)), tuple(parse_range(a.q)))
    data = list(rows(cfg))
    fh = open(a.out, "w", newline="") if a.out else sys.stdout
    w = csv.DictWriter(fh, fieldnames=list(data[0]), lineterminator="\n")
    w.writeheader()
    for r in data:
        w.writerow({k: "NA" if v is None else (f"{v:.10g}" if isinstance(v, float) else v)
                    for k, v in r.items()})
    if a.out:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
