from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from weaver.errors import DomainError, TopologyError
from weaver.triangulation import build, build_base, edge_valences, perm_inverse, perm_sign
from weaver.diagram import make_weave_spec


def test_perm_helpers():
    assert perm_sign((0, 1, 2, 3)) == 1
    assert perm_sign((1, 0, 2, 3)) == -1
    assert perm_sign((1, 2, 3, 0)) == -1
    assert perm_inverse((1, 2, 3, 0)) == (3, 0, 1, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 14), st.integers(1, 4))
def test_face_pairings_are_orientation_reversing_involutions(p, q):
    tri = build(p, q)
    assert tri.n == 4 * (p - 2) * q
    for t in tri.tetrahedra:
        for f in range(4):
            nb, perm = t.neighbors[f], t.gluings[f]
            back = tri.tetrahedra[nb]
            assert back.neighbors[perm[f]] == t.id
            assert back.gluings[perm[f]] == perm_inverse(perm)
            assert perm_sign(perm) == -1
    assert len(tri.edges) == tri.n


def test_three_strand_edges_all_six_valent():
    assert set(edge_valences(build(3, 1)).values()) == {6}


@pytest.mark.parametrize("p", [4, 5, 9])
def test_edge_kinds(p):
    tri = build(p)
    kinds = Counter(e.kind for e in tri.edges)
    assert kinds["stellation-axis"] == p - 3
    assert sum(e.valence for e in tri.edges) == 6 * tri.n


@pytest.mark.parametrize("p,q,n_cusps", [(3, 1, 2), (4, 1, 2), (4, 2, 3), (6, 2, 3), (5, 3, 2), (6, 3, 4)])
def test_cusp_count_matches_link_components(p, q, n_cusps):
    # W(p, q) has gcd(p, q) components; the axis adds one.
    tri = build(p, q)
    assert len(tri.cusps) == n_cusps
    assert sum(c.role == "braid-axis" for c in tri.cusps) == 1


def test_octahedra_have_four_pieces():
    tri = build(7, 2)
    octs = tri.octahedra()
    assert len(octs) == 4 * 2
    assert all(len(v) == 4 and None not in v for v in octs.values())


def test_corrupted_gluing_is_caught():
    with pytest.raises(TopologyError):
        build_base(make_weave_spec(4, 1), corrupt=True)


def test_base_needs_single_period():
    with pytest.raises(DomainError):
        build_base(make_weave_spec(4, 2))


def test_build_is_deterministic():
    a, b = build(6, 2), build(6, 2)
    assert a.tetrahedra == b.tetrahedra and a.edges == b.edges and a.cusps == b.cusps
