"""Vertex links (cusp cross-sections) of an ideal triangulation.

The link of a cusp is triangulated by the corners of the tetrahedra at its
ideal vertices.  A link triangle is ``(tet, vertex)``; its sides are named
by the face of the tetrahedron they lie in, and its corners by the other
endpoint of the tetrahedron edge through them.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import PathError, TopologyError
from .triangulation import CuspClass, IdealTriangulation, _UnionFind, perm_sign

Side = tuple[int, int, int]  # (tet, vertex, face)


@dataclass(frozen=True)
class LinkEdge:
    """A side of a link triangle traversed from corner ``start`` to ``end``."""

    tet: int
    vertex: int
    face: int
    start: int
    end: int


@dataclass(frozen=True)
class CuspLink:
    cusp: CuspClass
    triangles: tuple[tuple[int, int], ...]
    adjacency: dict
    n_vertices: int
    n_edges: int
    euler_characteristic: int
    n_triangle_cells: int
    n_quad_cells: int
    meridian: tuple[LinkEdge, ...] | None

    @property
    def census(self) -> tuple[int, int]:
        """(triangles, quads) of the polygonal decomposition before stellation."""
        return self.n_triangle_cells, self.n_quad_cells


def _link_vertex_classes(tri: IdealTriangulation):
    """Union-find over link corners (tet, vertex, other endpoint)."""
    uf = _UnionFind()
    for t in tri.tetrahedra:
        for f in range(4):
            perm = t.gluings[f]
            nb = t.neighbors[f]
            for v in range(4):
                for w in range(4):
                    if len({v, w, f}) == 3:
                        uf.union((t.id, v, w), (nb, perm[v], perm[w]))
    return uf


def cusp_link(tri: IdealTriangulation, cusp: CuspClass) -> CuspLink:
    """Link surface of a cusp with its pre-stellation cell census.

    Raises TopologyError unless the link is a closed surface with Euler
    characteristic 0 (the manifold is oriented, so that means a torus).
    """
    triangles = tuple(sorted(cusp.vertices))
    members = set(triangles)
    adjacency = {}
    for t, v in triangles:
        tet = tri.tetrahedra[t]
        for f in range(4):
            if f == v:
                continue
            nb, perm = tet.neighbors[f], tet.gluings[f]
            if (nb, perm[v]) not in members:
                raise TopologyError(f"link of cusp {cusp.id} is not closed at ({t},{v},{f})")
            adjacency[(t, v, f)] = (nb, perm[v], perm[f])

    uf = _link_vertex_classes(tri)
    vertices = {uf.find((t, v, w)) for t, v in triangles for w in range(4) if w != v}
    n_edges = len(adjacency) // 2
    chi = len(vertices) - n_edges + len(triangles)
    if chi != 0:
        raise TopologyError(f"link of cusp {cusp.id} has Euler characteristic {chi}, not a torus")

    # Merge link triangles of the pieces of one octahedron.
    cells = _UnionFind()
    internal = 0
    for (t, v, f), (t2, _, _) in adjacency.items():
        cells.find((t, v))
        if _same_octahedron(tri, t, t2):
            cells.union((t, v), (t2, adjacency[(t, v, f)][1]))
            internal += 1
    sizes: dict = {}
    for t, v in triangles:
        root = cells.find((t, v))
        sizes[root] = sizes.get(root, 0) + 1
    # Boundary side count of a cell: 3*size minus twice its internal sides.
    sides: dict = {r: 3 * s for r, s in sizes.items()}
    for (t, v, f), (t2, v2, _) in adjacency.items():
        if _same_octahedron(tri, t, t2):
            sides[cells.find((t, v))] -= 1
    n_tri = sum(1 for s in sides.values() if s == 3)
    n_quad = sum(1 for s in sides.values() if s == 4)
    if n_tri + n_quad != len(sides):
        raise TopologyError(f"link of cusp {cusp.id} has cells that are neither triangles nor quads")

    meridian = None
    if cusp.role == "braid-axis" and tri.meridian_faces:
        meridian = meridian_path(tri, uf)
    return CuspLink(cusp, triangles, adjacency, len(vertices), n_edges, chi, n_tri, n_quad, meridian)


def _same_octahedron(tri, t1, t2) -> bool:
    a = tri.tetrahedra[t1].provenance
    b = tri.tetrahedra[t2].provenance
    return a.kind == b.kind == "oct" and (a.copy, a.index) == (b.copy, b.index)


def meridian_path(tri: IdealTriangulation, uf=None) -> tuple[LinkEdge, ...]:
    """Closed edge path of the braid-axis link homotopic to a meridian.

    It consists of the axis corners of the exterior faces filling the inner
    region, one per period, chained head to tail.
    """
    if not tri.meridian_faces:
        raise PathError("triangulation records no meridian faces")
    uf = uf or _link_vertex_classes(tri)
    pieces = []
    for t, f in tri.meridian_faces:
        tet = tri.tetrahedra[t]
        (v,) = tet.axis_vertices & ({0, 1, 2, 3} - {f})
        a, b = sorted({0, 1, 2, 3} - {v, f})
        pieces.append(LinkEdge(t, v, f, a, b))

    def head(e):
        return uf.find((e.tet, e.vertex, e.end))

    def tail(e):
        return uf.find((e.tet, e.vertex, e.start))

    path = [pieces.pop(0)]
    while pieces:
        here = head(path[-1])
        for k, e in enumerate(pieces):
            if tail(e) == here:
                path.append(pieces.pop(k))
                break
            if head(e) == here:
                path.append(LinkEdge(e.tet, e.vertex, e.face, e.end, e.start))
                pieces.pop(k)
                break
        else:
            raise PathError("meridian pieces do not chain into a path")
    if head(path[-1]) != tail(path[0]):
        raise PathError("meridian path does not close up")
    return tuple(path)


def sweep(tri: IdealTriangulation, incoming: LinkEdge, outgoing: LinkEdge):
    """Corners swept turning from the reverse of ``incoming`` to ``outgoing``.

    Walks round the common link vertex starting inside the link triangle of
    ``incoming``.  Yields ``(tet, vertex, corner, sign)`` where sign is +1
    when the corner is crossed counterclockwise and -1 otherwise.
    """
    t, v, w, enter = incoming.tet, incoming.vertex, incoming.end, incoming.face
    target = (outgoing.tet, outgoing.vertex, outgoing.face, outgoing.start)
    out = []
    for _ in range(4 * tri.n):
        (x,) = {0, 1, 2, 3} - {v, w, enter}
        sign = perm_sign((v, w, x, enter))
        out.append((t, v, w, sign))
        tet = tri.tetrahedra[t]
        nb, perm = tet.neighbors[x], tet.gluings[x]
        if (t, v, x, w) == target or (nb, perm[v], perm[x], perm[w]) == target:
            return out
        t, v, w, enter = nb, perm[v], perm[w], perm[x]
    raise PathError("outgoing edge not found around the link vertex")
