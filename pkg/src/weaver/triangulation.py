"""Ideal triangulations of S^3 - (W(p, q) u B).

Every diagram region of W(p, 1) is coned to the braid axis above and
below the projection plane.  Triangular regions give one tetrahedron on
each side; quadrilateral regions give an octahedron (top and bottom
square pyramids), which is stellated into four tetrahedra along the
axis-to-axis edge through the square.  The faces of the cones are glued
at each crossing; the two exterior regions are filled by a single
triangle each, identifying a face of a top tetrahedron with a face of a
bottom one.

Vertex labels inside a tetrahedron:

* original tetrahedron: 0 = braid axis, 1..3 = region corners (diagram
  edges) in cyclic order;
* octahedron piece ``k``: 0 = axis above, 1 = axis below, 2 and 3 = the
  quad vertices k and k+1.

Face ``f`` of a tetrahedron is the face opposite vertex ``f``.  A gluing
``perm`` sends vertex ``v`` of this tetrahedron to vertex ``perm[v]`` of the
neighbour.  After the build every tetrahedron is relabelled (if needed)
so that all gluing permutations are odd, i.e. all tetrahedra carry the
orientation of the manifold.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from . import diagram as dg
from .diagram import WeaveSpec, make_weave_spec
from .errors import DomainError, TopologyError

EDGES = tuple(combinations(range(4), 2))  # (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
# Opposite-edge pair index of each tetrahedron edge.
EDGE_PAIR = {(0, 1): 0, (2, 3): 0, (0, 2): 1, (1, 3): 1, (0, 3): 2, (1, 2): 2}

Perm = tuple[int, int, int, int]


def perm_inverse(perm: Perm) -> Perm:
    inv = [0] * 4
    for a, b in enumerate(perm):
        inv[b] = a
    return tuple(inv)


def perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class Provenance:
    """Where a tetrahedron comes from in the polyhedral decomposition.

    ``kind`` is ``"tet"`` for the four original tetrahedra per period and
    ``"oct"`` for stellation pieces.  ``region`` is the diagram region id,
    ``index`` the octahedron index (region - 2) for pieces, ``layer`` is
    ``"top"``/``"bottom"`` for original tetrahedra, ``copy`` the sheet of
    the cyclic cover.
    """

    kind: str
    region: int
    index: int = 0
    piece: int = 0
    layer: str | None = None
    copy: int = 0

    def label(self) -> str:
        if self.kind == "tet":
            return f"tet(r{self.region},{self.layer})#{self.copy}"
        return f"oct{self.index}.{self.piece}#{self.copy}"


@dataclass(frozen=True)
class Tetrahedron:
    id: int
    neighbors: tuple[int, int, int, int]
    gluings: tuple[Perm, Perm, Perm, Perm]
    provenance: Provenance
    axis_vertices: frozenset = frozenset()

    @property
    def layer(self) -> str | None:
        return self.provenance.layer


@dataclass(frozen=True)
class EdgeClass:
    id: int
    corners: tuple[tuple[int, tuple[int, int]], ...]
    kind: str

    @property
    def valence(self) -> int:
        return len(self.corners)


@dataclass(frozen=True)
class CuspClass:
    id: int
    role: str
    component: int | None
    vertices: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class IdealTriangulation:
    spec: WeaveSpec
    tetrahedra: tuple[Tetrahedron, ...]
    edges: tuple[EdgeClass, ...]
    cusps: tuple[CuspClass, ...]
    # Column shift of each face pairing, keyed by (tet, face); the cocycle
    # that defines the cyclic covers.
    shifts: dict = field(default_factory=dict, compare=False)
    # Faces filling the inner exterior region (one per period), as
    # (tet, face) of the top tetrahedron.  Their corner at the axis is a
    # meridian of the braid axis.
    meridian_faces: tuple[tuple[int, int], ...] = ()

    @property
    def n(self) -> int:
        return len(self.tetrahedra)

    def edge_of(self, tet: int, edge: tuple[int, int]) -> int:
        return self._edge_lookup()[(tet, tuple(sorted(edge)))]

    def cusp_of(self, tet: int, vertex: int) -> int:
        return self._cusp_lookup()[(tet, vertex)]

    def _edge_lookup(self):
        cache = self.__dict__.get("_edge_cache")
        if cache is None:
            cache = {c: e.id for e in self.edges for c in e.corners}
            object.__setattr__(self, "_edge_cache", cache)
        return cache

    def _cusp_lookup(self):
        cache = self.__dict__.get("_cusp_cache")
        if cache is None:
            cache = {v: c.id for c in self.cusps for v in c.vertices}
            object.__setattr__(self, "_cusp_cache", cache)
        return cache

    def octahedra(self) -> dict[tuple[int, int], list[int]]:
        """Map (copy, octahedron index) -> the four piece ids in piece order."""
        out: dict[tuple[int, int], list[int]] = {}
        for t in self.tetrahedra:
            pv = t.provenance
            if pv.kind == "oct":
                out.setdefault((pv.copy, pv.index), [None] * 4)[pv.piece] = t.id
        return dict(sorted(out.items()))

    def axis_cusp(self) -> CuspClass:
        for c in self.cusps:
            if c.role == "braid-axis":
                return c
        raise TopologyError("no braid-axis cusp")


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Smaller root wins so class representatives are deterministic.
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


class _Gluer:
    """Accumulates face pairings and checks that they are consistent."""

    def __init__(self, n: int):
        self.neighbors = [[None] * 4 for _ in range(n)]
        self.perms = [[None] * 4 for _ in range(n)]
        self.shift = {}

    def glue(self, t1: int, f1: int, t2: int, perm: dict | Perm, shift: int = 0):
        if isinstance(perm, dict):
            perm = tuple(perm[v] for v in range(4))
        if sorted(perm) != [0, 1, 2, 3]:
            raise TopologyError(f"not a permutation: {perm}")
        f2 = perm[f1]
        for t, f in ((t1, f1), (t2, f2)):
            if self.neighbors[t][f] is not None:
                raise TopologyError(f"face {f} of tetrahedron {t} glued twice")
        if (t1, f1) == (t2, f2):
            raise TopologyError(f"face {f1} of tetrahedron {t1} glued to itself")
        self.neighbors[t1][f1] = t2
        self.perms[t1][f1] = perm
        self.neighbors[t2][f2] = t1
        self.perms[t2][f2] = perm_inverse(perm)
        self.shift[(t1, f1)] = shift
        self.shift[(t2, f2)] = -shift

    def check_closed(self):
        for t, row in enumerate(self.neighbors):
            for f, nb in enumerate(row):
                if nb is None:
                    raise TopologyError(f"face {f} of tetrahedron {t} is unglued")


def _base_layout(p: int):
    """Tetrahedron ids and provenance for W(p, 1), left to right."""
    provs = []
    tri_tet = {}
    oct_piece = {}
    for r in range(1, p):
        if dg.region_kind(p, r) == "triangle":
            for layer in ("top", "bottom"):
                tri_tet[(r, layer)] = len(provs)
                provs.append(Provenance("tet", r, layer=layer))
        else:
            for k in range(4):
                oct_piece[(r, k)] = len(provs)
                provs.append(Provenance("oct", r, index=r - 2, piece=k))
    return provs, tri_tet, oct_piece


def build_base(spec: WeaveSpec, *, corrupt: bool = False) -> IdealTriangulation:
    """Stellated triangulation of S^3 - (W(p,1) u B) with 4(p-2) tetrahedra.

    ``corrupt`` swaps one gluing permutation after the build; it exists
    only so that the failure paths of the CLI can be exercised.
    """
    if spec.q != 1:
        raise DomainError(f"build_base needs q=1, got q={spec.q}; use cyclic_cover")
    p = spec.p
    provs, tri_tet, oct_piece = _base_layout(p)
    gl = _Gluer(len(provs))
    verts = {r: dg.region_vertices(p, r) for r in range(1, p)}

    def corner_face(i: int, corner: str, layer: str):
        """(tet, face, {label: tet vertex}) for the cone face over a corner.

        Labels are the crossing ends of the corner plus ``"B"``.
        """
        r = dg.corner_region(p, i, corner)
        ends = dg.CORNER_ENDS[corner]
        edges = [dg.end_edge(p, i, e) for e in ends]
        vs = verts[r]
        if dg.region_kind(p, r) == "triangle":
            t = tri_tet[(r, layer)]
            vmap = {ends[0]: 1 + vs.index(edges[0]), ends[1]: 1 + vs.index(edges[1])}
            vmap["B"] = 0
            face = ({0, 1, 2, 3} - set(vmap.values())).pop()
            return t, face, vmap
        k = dg.region_corners(p, r).index((i, corner))
        t = oct_piece[(r, k)]
        pos = {vs[k]: 2, vs[(k + 1) % 4]: 3}
        vmap = {ends[0]: pos[edges[0]], ends[1]: pos[edges[1]]}
        if layer == "top":
            vmap["B"], face = 0, 1
        else:
            vmap["B"], face = 1, 0
        return t, face, vmap

    def glue_faces(a, b, ends_a_to_b: dict, shift: int):
        ta, fa, va = a
        tb, fb, vb = b
        perm = {fa: fb}
        for lab_a, lab_b in ends_a_to_b.items():
            perm[va[lab_a]] = vb[lab_b]
        gl.glue(ta, fa, tb, perm, shift)

    # Triangular regions: top and bottom tetrahedra share the region face.
    for r in (1, p - 1):
        gl.glue(tri_tet[(r, "top")], 0, tri_tet[(r, "bottom")], (0, 1, 2, 3))
    # Stellation: piece k shares the face (axis, vertex k) with piece k-1.
    for r in range(2, p - 1):
        for k in range(4):
            gl.glue(oct_piece[(r, k)], 3, oct_piece[(r, (k - 1) % 4)], (0, 1, 3, 2))

    # Cone faces at crossings.  Above the plane the over-strand continues,
    # below it the under-strand does; the two corners on one side of the
    # continuing strand share the end of the broken strand.
    exterior = {}
    for i in range(1, p):
        for layer in ("top", "bottom"):
            cont = dg.over_strand(i) if layer == "top" else dg.under_strand(i)
            groups = {}
            for corner, ends in dg.CORNER_ENDS.items():
                side = ends[0] if ends[0] not in cont else ends[1]
                groups.setdefault(side, []).append(corner)
            for shared, (c1, c2) in groups.items():
                other1 = next(e for e in dg.CORNER_ENDS[c1] if e != shared)
                other2 = next(e for e in dg.CORNER_ENDS[c2] if e != shared)
                ends_map = {shared: shared, other1: other2, "B": "B"}
                ext = [c for c in (c1, c2) if dg.region_kind(p, dg.corner_region(p, i, c)) == "exterior"]
                if ext:
                    (ce,) = ext
                    real = c2 if ce == c1 else c1
                    inv = {v: k for k, v in ends_map.items()}
                    # map: real corner labels -> exterior corner labels
                    to_ext = ends_map if real == c1 else inv
                    exterior.setdefault((i, ce), {})[layer] = (real, to_ext)
                    continue
                shift = dg.CORNER_COLUMN[c2] - dg.CORNER_COLUMN[c1]
                glue_faces(corner_face(i, c1, layer), corner_face(i, c2, layer), ends_map, shift)

    # Exterior regions: the top and bottom cone faces over the exterior
    # corner are the same triangle in the projection plane.
    meridian = []
    for (i, ce), sides in sorted(exterior.items()):
        real_t, to_ext_t = sides["top"]
        real_b, to_ext_b = sides["bottom"]
        from_ext_b = {v: k for k, v in to_ext_b.items()}
        ends_map = {lab: from_ext_b[to_ext_t[lab]] for lab in to_ext_t}
        a = corner_face(i, real_t, "top")
        b = corner_face(i, real_b, "bottom")
        shift = dg.CORNER_COLUMN[real_b] - dg.CORNER_COLUMN[real_t]
        glue_faces(a, b, ends_map, shift)
        if ce == "S":
            meridian.append((a[0], a[1]))

    gl.check_closed()
    if corrupt:
        a, b, c, d = gl.perms[0][1]
        gl.perms[0][1] = (a, b, d, c)
    axis = []
    for pv in provs:
        axis.append(frozenset({0}) if pv.kind == "tet" else frozenset({0, 1}))
    return _finish(spec, provs, gl.neighbors, gl.perms, gl.shift, axis, tuple(meridian))


def cyclic_cover(base: IdealTriangulation, q: int) -> IdealTriangulation:
    """The q-fold cyclic cover unwrapping the direction around the axis."""
    if isinstance(q, bool) or not isinstance(q, int) or q < 1:
        raise DomainError(f"q must be an integer >= 1, got q={q!r}")
    if base.spec.q != 1:
        raise DomainError("cyclic_cover expects a base triangulation (q=1)")
    n = base.n
    provs, neighbors, perms, shifts, axis = [], [], [], {}, []
    for k in range(q):
        for t in base.tetrahedra:
            pv = t.provenance
            provs.append(Provenance(pv.kind, pv.region, pv.index, pv.piece, pv.layer, copy=k))
            row_n, row_p = [], []
            for f in range(4):
                s = base.shifts[(t.id, f)]
                row_n.append(((k + s) % q) * n + t.neighbors[f])
                row_p.append(t.gluings[f])
                shifts[(k * n + t.id, f)] = s
            neighbors.append(row_n)
            perms.append(row_p)
            axis.append(t.axis_vertices)
    meridian = tuple((k * n + t, f) for k in range(q) for (t, f) in base.meridian_faces)
    # Tetrahedra of the base are already oriented, so are their lifts.
    return _finish(make_weave_spec(base.spec.p, q), provs, neighbors, perms, shifts, axis, meridian)


def _finish(spec, provs, neighbors, perms, shifts, axis, meridian) -> IdealTriangulation:
    neighbors = [list(r) for r in neighbors]
    perms = [list(r) for r in perms]
    _check_involutive(neighbors, perms)
    relabel = _orient(neighbors, perms)
    if relabel is not None:
        neighbors, perms, axis, shifts, meridian = _apply_relabel(
            relabel, neighbors, perms, axis, shifts, meridian)
    tets = tuple(
        Tetrahedron(t, tuple(neighbors[t]), tuple(tuple(x) for x in perms[t]), provs[t], axis[t])
        for t in range(len(provs))
    )
    edges = _edge_classes(tets)
    cusps = _cusp_classes(tets)
    tri = IdealTriangulation(spec, tets, edges, cusps, dict(shifts), meridian)
    if len(edges) != len(tets):
        raise TopologyError(f"{len(edges)} edge classes for {len(tets)} tetrahedra")
    return tri


def _check_involutive(neighbors, perms):
    for t, row in enumerate(neighbors):
        for f, nb in enumerate(row):
            perm = perms[t][f]
            back = perms[nb][perm[f]]
            if neighbors[nb][perm[f]] != t or tuple(back[perm[v]] for v in range(4)) != (0, 1, 2, 3):
                raise TopologyError(f"gluing of face {f} of tetrahedron {t} is not involutive")


def _orient(neighbors, perms):
    """Per-tetrahedron relabelling making every gluing odd, or None if none needed."""
    n = len(neighbors)
    sign = [0] * n
    sign[0] = 1
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for f in range(4):
            nb = neighbors[t][f]
            want = -sign[t] * perm_sign(perms[t][f])
            if sign[nb] == 0:
                sign[nb] = want
                queue.append(nb)
            elif sign[nb] != want:
                raise TopologyError("triangulation is not orientable")
    if all(s == 1 for s in sign):
        return None
    return [(0, 1, 2, 3) if s == 1 else (0, 1, 3, 2) for s in sign]


def _apply_relabel(relabel, neighbors, perms, axis, shifts, meridian):
    """Rename vertex v of tetrahedron t to relabel[t][v]."""
    n = len(neighbors)
    new_nb = [[None] * 4 for _ in range(n)]
    new_perm = [[None] * 4 for _ in range(n)]
    new_shift = {}
    for t in range(n):
        r = relabel[t]
        for f in range(4):
            nb = neighbors[t][f]
            rn = relabel[nb]
            old = perms[t][f]
            perm = [None] * 4
            for v in range(4):
                perm[r[v]] = rn[old[v]]
            new_nb[t][r[f]] = nb
            new_perm[t][r[f]] = tuple(perm)
            new_shift[(t, r[f])] = shifts[(t, f)]
    new_axis = [frozenset(relabel[t][v] for v in axis[t]) for t in range(n)]
    new_mer = tuple((t, relabel[t][f]) for t, f in meridian)
    return new_nb, new_perm, new_axis, new_shift, new_mer


def _edge_classes(tets) -> tuple[EdgeClass, ...]:
    uf = _UnionFind()
    for t in tets:
        for f in range(4):
            perm = t.gluings[f]
            for a, b in EDGES:
                if f in (a, b):
                    continue
                uf.union((t.id, (a, b)), (t.neighbors[f], tuple(sorted((perm[a], perm[b])))))
    groups: dict = {}
    for t in tets:
        for e in EDGES:
            groups.setdefault(uf.find((t.id, e)), []).append((t.id, e))
    out = []
    for idx, corners in enumerate(sorted(groups.values())):
        t, (a, b) = corners[0]
        n_axis = (a in tets[t].axis_vertices) + (b in tets[t].axis_vertices)
        kind = ("crossing-arc", "vertical", "stellation-axis")[n_axis]
        out.append(EdgeClass(idx, tuple(corners), kind))
    return tuple(out)


def _cusp_classes(tets) -> tuple[CuspClass, ...]:
    uf = _UnionFind()
    for t in tets:
        for f in range(4):
            perm = t.gluings[f]
            for v in range(4):
                if v != f:
                    uf.union((t.id, v), (t.neighbors[f], perm[v]))
    groups: dict = {}
    for t in tets:
        for v in range(4):
            groups.setdefault(uf.find((t.id, v)), []).append((t.id, v))
    out = []
    component = 0
    for idx, verts in enumerate(sorted(groups.values())):
        is_axis = [v in tets[t].axis_vertices for t, v in verts]
        if all(is_axis):
            out.append(CuspClass(idx, "braid-axis", None, tuple(verts)))
        elif not any(is_axis):
            out.append(CuspClass(idx, "knot-strand", component, tuple(verts)))
            component += 1
        else:
            raise TopologyError("a cusp mixes braid-axis and knot vertices")
    return tuple(out)


def edge_valences(tri: IdealTriangulation) -> dict[int, int]:
    return {e.id: e.valence for e in tri.edges}


def build(p: int, q: int = 1, *, corrupt: bool = False) -> IdealTriangulation:
    """Convenience: validated spec, base triangulation, then the q-fold cover."""
    spec = make_weave_spec(p, q)
    base = build_base(make_weave_spec(p, 1), corrupt=corrupt)
    return base if spec.q == 1 else cyclic_cover(base, spec.q)
