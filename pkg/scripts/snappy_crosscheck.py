"""Compare our volumes with SnapPy on exported triangulations.

Needs ``pip install snappy``; it is not a dependency of the package.

    python3 scripts/snappy_crosscheck.py --p 3..8 --q 1..3
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from weaver.cli import parse_range
from weaver.report import run_volume
from weaver.snappea import to_snappea
from weaver.triangulation import build


@dataclass(frozen=True)
class Config:
    p: tuple[int, ...] = (3, 4, 5, 6, 7, 8)
    q: tuple[int, ...] = (1, 2, 3)
    tol: float = 1e-9


def braid_word(p: int, q: int) -> list[int]:
    col = [i if i % 2 else -i for i in range(1, p)]
    return col * q + list(range(p, 0, -1)) + list(range(1, p + 1))


def main(argv=None) -> int:
    try:
        import snappy
    except ImportError:
        print("snappy is not installed; pip install snappy", file=sys.stderr)
        return 4
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", default="3..8")
    ap.add_argument("--q", default="1..3")
    a = ap.parse_args(argv)
    cfg = Config(tuple(parse_range(a.p)), tuple(parse_range(a.q)))
    bad = 0
    for p in cfg.p:
        for q in cfg.q:
            ours = run_volume(p, q).result["volume"]
            exported = float(snappy.Manifold(to_snappea(build(p, q))).volume())
            ref = snappy.Link(braid_closure=braid_word(p, q)).exterior()
            iso = snappy.Manifold(to_snappea(build(p, q))).is_isometric_to(ref)
            ok = abs(ours - exported) < cfg.tol and abs(ours - float(ref.volume())) < cfg.tol and iso
            bad += not ok
            print(f"W({p},{q})+B  ours {ours:.12f}  snappy {exported:.12f}  isometric {iso}  "
                  f"{'ok' if ok else 'MISMATCH'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
