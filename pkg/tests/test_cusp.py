import pytest

from weaver.cusp import cusp_link, meridian_path
from weaver.triangulation import build


@pytest.mark.parametrize("p,q", [(3, 1), (4, 1), (7, 1), (5, 2), (6, 3)])
def test_every_cusp_link_is_a_torus(p, q):
    tri = build(p, q)
    for c in tri.cusps:
        link = cusp_link(tri, c)
        assert link.euler_characteristic == 0
        assert link.n_vertices - link.n_edges + len(link.triangles) == 0


@pytest.mark.parametrize("p,q", [(3, 1), (4, 1), (8, 1), (5, 2), (4, 3)])
def test_axis_link_census(p, q):
    tri = build(p, q)
    link = cusp_link(tri, tri.axis_cusp())
    assert link.census == (4 * q, 2 * (p - 3) * q)


@pytest.mark.parametrize("p,q", [(3, 1), (6, 1), (4, 3)])
def test_meridian_is_closed_with_one_edge_per_period(p, q):
    tri = build(p, q)
    path = meridian_path(tri)
    assert len(path) == q
