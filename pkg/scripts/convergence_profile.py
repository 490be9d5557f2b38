"""How fast the middle octahedra become regular as strands are added.

Prints one line per p: volume, volume per octahedron, longest run above
v_oct - eps, and the regularity distance of the middle octahedron.

    python3 scripts/convergence_profile.py --p 5..40 --eps 0.01
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from weaver.cli import parse_range
from weaver.report import limit_profile
from weaver.volume import V_OCT


@dataclass(frozen=True)
class Config:
    p: tuple[int, ...] = (5, 8, 12, 16, 20, 30, 40)
    q: int = 1
    epsilon: float = 0.1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", default="5,8,12,16,20,30,40")
    ap.add_argument("--q", type=int, default=1)
    ap.add_argument("--eps", type=float, default=0.1)
    a = ap.parse_args(argv)
    cfg = Config(tuple(parse_range(a.p)), a.q, a.eps)
    print(f"{'p':>4} {'volume':>14} {'vol/(p-2)q':>11} {'run':>4} {'middle dist':>12} {'sec':>6}")
    for p in cfg.p:
        t0 = time.perf_counter()
        row = limit_profile(p, cfg.q, cfg.epsilon)
        per = row["volume"] / ((p - 2) * cfg.q)
        mid = row["middle_regularity"]
        print(f"{p:4d} {row['volume']:14.9f} {per / V_OCT:11.6f} {row['longest_run']:4d} "
              f"{mid if mid is not None else float('nan'):12.3e} {time.perf_counter() - t0:6.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
