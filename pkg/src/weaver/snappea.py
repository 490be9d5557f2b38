"""SnapPea text triangulation files."""
from __future__ import annotations

from .triangulation import IdealTriangulation


def to_snappea(tri: IdealTriangulation, name: str | None = None) -> str:
    """Serialize in the SnapPea triangulation format.

    Peripheral curves are written as zero blocks and shapes are omitted;
    readers install their own meridian/longitude basis and solve for the
    hyperbolic structure themselves.
    """
    name = name or f"W({tri.spec.p},{tri.spec.q})_axis"
    lines = [
        "% Triangulation",
        name,
        "not_attempted 0.0",
        "oriented_manifold",
        "CS_unknown",
        "",
        f"{len(tri.cusps)} 0",
    ]
    lines += ["    torus   0.000000000000   0.000000000000" for _ in tri.cusps]
    lines += ["", str(tri.n)]
    zeros = "  " + "  ".join(["0"] * 16)
    for t in tri.tetrahedra:
        lines.append("  " + " ".join(f"{nb:4d}" for nb in t.neighbors))
        lines.append(" " + " ".join("".join(str(x) for x in perm) for perm in t.gluings))
        lines.append("  " + " ".join(f"{tri.cusp_of(t.id, v):4d}" for v in range(4)))
        lines += [zeros] * 4
        lines.append("  0.0 0.0")
        lines.append("")
    return "\n".join(lines)
