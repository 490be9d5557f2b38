"""Combinatorics of the weaving diagram W(p, q).

W(p, q) is the alternating closure of the p-braid (s_1 s_2 ... s_{p-1})^q.
Strand positions are numbered 1..p from the braid axis outwards.  The
crossing ``X_i`` (1 <= i <= p-1) swaps positions i and i+1.  Region ``i``
is the band between positions i and i+1; regions ``0`` and ``p`` are the
two exterior regions meeting the braid axis.  Region ids therefore run
left-to-right across the braid, and every other label in the package
reuses them.

Each crossing has four ends, named by position and side: ``"iW"``,
``"iE"`` (inner strand, west/east of the crossing) and ``"jW"``, ``"jE"``
(outer strand, j = i+1).  The four corners are ``S`` (inner region),
``N`` (outer region), ``W`` and ``E`` (both belonging to region i).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError

CORNER_ENDS = {
    "S": ("iW", "iE"),
    "N": ("jW", "jE"),
    "W": ("iW", "jW"),
    "E": ("iE", "jE"),
}

# Column offset of the region occupying each corner, relative to the
# column of the crossing.  Used to lift face pairings to cyclic covers.
CORNER_COLUMN = {"S": 0, "E": 0, "N": -1, "W": -1}


@dataclass(frozen=True)
class WeaveSpec:
    p: int
    q: int
    crossing_count: int = field(init=False)

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 3:
            raise DomainError(f"p must be an integer >= 3, got p={self.p!r}")
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise DomainError(f"q must be an integer >= 1, got q={self.q!r}")
        object.__setattr__(self, "crossing_count", self.q * (self.p - 1))

    @property
    def n_octahedra(self) -> int:
        return (self.p - 3) * self.q

    @property
    def n_tetrahedra(self) -> int:
        """Tetrahedra after stellating every octahedron."""
        return 4 * (self.p - 2) * self.q


@dataclass(frozen=True)
class RegionCensus:
    triangles: int
    quads: int
    exterior: int


def make_weave_spec(p: int, q: int) -> WeaveSpec:
    return WeaveSpec(p, q)


def region_census(spec: WeaveSpec) -> RegionCensus:
    """Region counts for a single braid period."""
    return RegionCensus(triangles=2, quads=spec.p - 3, exterior=2)


def region_kind(p: int, r: int) -> str:
    if r == 0 or r == p:
        return "exterior"
    if r == 1 or r == p - 1:
        return "triangle"
    return "quad"


def over_strand(i: int) -> tuple[str, str]:
    """Ends of the strand passing over at crossing X_i.

    Odd crossings are positive (s_i), even ones negative, which makes the
    closure alternating.
    """
    return ("iW", "jE") if i % 2 == 1 else ("jW", "iE")


def under_strand(i: int) -> tuple[str, str]:
    return ("jW", "iE") if i % 2 == 1 else ("iW", "jE")


def end_edge(p: int, i: int, end: str) -> tuple[str, int]:
    """Diagram edge (strand segment) attached to an end of crossing X_i.

    Position k (2 <= k <= p-1) carries a short edge ``("a", k)`` from X_{k-1}
    to X_k and a long edge ``("b", k)`` from X_k back round to X_{k-1}.
    Positions 1 and p each carry a single loop ``("b", 1)`` / ``("b", p)``.
    """
    if not 1 <= i <= p - 1:
        raise DomainError(f"crossing index {i} out of range for p={p}")
    if end == "iW":
        return ("b", 1) if i == 1 else ("a", i)
    if end == "iE":
        return ("b", i)
    if end == "jW":
        return ("b", i + 1)
    if end == "jE":
        return ("b", p) if i + 1 == p else ("a", i + 1)
    raise ValueError(f"unknown crossing end {end!r}")


def corner_region(p: int, i: int, corner: str) -> int:
    return {"S": i - 1, "N": i + 1, "W": i, "E": i}[corner]


def region_corners(p: int, r: int) -> list[tuple[int, str]]:
    """Corners of region r (1 <= r <= p-1) in cyclic order."""
    corners = [(r, "E")]
    if r + 1 <= p - 1:
        corners.append((r + 1, "S"))
    corners.append((r, "W"))
    if r - 1 >= 1:
        corners.append((r - 1, "N"))
    return corners


def region_vertices(p: int, r: int) -> list[tuple[str, int]]:
    """Diagram edges around region r, in the same cyclic order as its corners.

    Vertex k sits between corner k-1 and corner k; corner k spans vertices
    k and k+1.
    """
    corners = region_corners(p, r)
    verts = []
    for idx, (i, c) in enumerate(corners):
        e1, e2 = (end_edge(p, i, e) for e in CORNER_ENDS[c])
        nxt = corners[(idx + 1) % len(corners)]
        n1, n2 = (end_edge(p, nxt[0], e) for e in CORNER_ENDS[nxt[1]])
        shared = {e1, e2} & {n1, n2}
        if len(shared) != 1:
            raise AssertionError(f"corners {corners[idx]} and {nxt} do not meet")
        first = ({e1, e2} - shared).pop()
        verts.append(first)
    return verts
