import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weaver.angles import assemble_constraints, initial_structure, random_interior
from weaver.errors import DomainError, MaxIterations
from weaver.triangulation import build
from weaver.volume import (V_OCT, V_TET, gradient_of, lobachevsky, lobachevsky_prime,
                           maximize, tet_volume, volume_of)

from conftest import solved

mpmath.mp.dps = 30


def lob_quad(theta):
    """Independent oracle: -int_0^theta log|2 sin t| dt by quadrature."""
    th = mpmath.mpf(abs(theta))
    # Split at the log singularities k*pi inside the interval.
    pts = [0] + [k * mpmath.pi for k in range(1, int(abs(theta) // math.pi) + 1)] + [th]
    val = -mpmath.quad(lambda t: mpmath.log(abs(2 * mpmath.sin(t))), pts)
    return float(val) if theta >= 0 else -float(val)


@pytest.mark.parametrize("theta", [1e-8, 0.01, 0.3, math.pi / 6, math.pi / 4, math.pi / 3,
                                   1.0, math.pi / 2, 2.0, 3.0, -0.7, 4.5, 10.0])
def test_lobachevsky_against_quadrature(theta):
    assert lobachevsky(theta) == pytest.approx(lob_quad(theta), abs=1e-13)


def test_lobachevsky_against_clausen(rng):
    for x in rng.uniform(-7, 7, 200):
        ref = float(mpmath.clsin(2, 2 * x)) / 2
        assert abs(lobachevsky(x) - ref) < 2e-15


def test_constants():
    # Reference digits from the Clausen function at high precision.
    assert V_TET == pytest.approx(float(3 * mpmath.clsin(2, 2 * mpmath.pi / 3) / 2), abs=1e-15)
    assert V_OCT == pytest.approx(float(8 * mpmath.clsin(2, mpmath.pi / 2) / 2), abs=1e-15)
    assert V_TET == pytest.approx(1.0149416064096536, abs=1e-15)
    assert V_OCT == pytest.approx(3.6638623767088760, abs=1e-15)


@given(st.floats(-20, 20, allow_nan=False))
def test_lobachevsky_odd_and_periodic(x):
    assert lobachevsky(-x) == pytest.approx(-lobachevsky(x), abs=1e-14)
    assert lobachevsky(x + math.pi) == pytest.approx(lobachevsky(x), abs=1e-13)


@given(st.floats(-10, 10, allow_nan=False))
def test_duplication_identity(x):
    lhs = lobachevsky(2 * x)
    rhs = 2 * (lobachevsky(x) + lobachevsky(x + math.pi / 2))
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_lobachevsky_prime_matches_finite_difference(rng):
    h = 1e-6
    for x in rng.uniform(0.05, math.pi - 0.05, 200):
        fd = (lobachevsky(x + h) - lobachevsky(x - h)) / (2 * h)
        assert fd == pytest.approx(lobachevsky_prime(x), rel=1e-6, abs=1e-8)


def test_tet_volume():
    assert tet_volume(math.pi / 3, math.pi / 3, math.pi / 3) == pytest.approx(V_TET, abs=1e-15)
    assert tet_volume(math.pi / 2, math.pi / 4, math.pi / 4) == pytest.approx(V_OCT / 4, abs=1e-15)
    assert tet_volume(math.pi, 0.0, 0.0) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DomainError):
        tet_volume(1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        tet_volume(-0.5, 2.0, math.pi - 1.5)


@settings(max_examples=200)
@given(st.floats(0.01, math.pi - 0.02), st.floats(0.0, 1.0))
def test_regular_tetrahedron_maximizes_single_volume(x, t):
    y = t * (math.pi - x)
    z = math.pi - x - y
    if min(y, z) <= 0:
        return
    assert tet_volume(x, y, z) <= V_TET + 1e-15


def test_gradient_matches_finite_differences(rng):
    tri = build(6, 1)
    poly = assemble_constraints(tri)
    h = 1e-6
    for _ in range(100):
        s = random_interior(poly, rng)
        x = s.flat
        g = gradient_of(x, poly)
        d = rng.standard_normal(poly.dim)
        d /= np.linalg.norm(d)
        fd = (volume_of(x + h * poly.basis @ d) - volume_of(x - h * poly.basis @ d)) / (2 * h)
        assert fd == pytest.approx(g @ d, rel=1e-6, abs=1e-7)


def test_gradient_infinite_at_boundary():
    tri = build(3, 1)
    poly = assemble_constraints(tri)
    x = np.tile([math.pi, 0.0, 0.0], tri.n)
    assert np.all(np.isinf(gradient_of(x, poly)))


def test_concavity_along_segments(rng):
    tri = build(5, 2)
    poly = assemble_constraints(tri)
    for _ in range(1000):
        a = random_interior(poly, rng).flat
        b = random_interior(poly, rng).flat
        t = rng.uniform()
        mid = volume_of((1 - t) * a + t * b)
        assert mid >= (1 - t) * volume_of(a) + t * volume_of(b) - 1e-12


@pytest.mark.parametrize("p,q", [(3, 1), (5, 1), (8, 1), (4, 2), (6, 3)])
def test_maximizer_is_critical_and_beats_seed(p, q):
    tri, poly, res = solved(p, q)
    assert res.grad_norm <= 1e-10
    assert res.margin > 0
    assert res.volume >= res.seed_volume
    assert poly.is_feasible(res.angles)
    assert math.fsum(res.per_octahedron_volumes) <= res.volume


def test_maximum_independent_of_start(rng):
    tri, poly, ref = solved(7, 1)
    for _ in range(3):
        res = maximize(poly, random_interior(poly, rng))
        assert res.volume == pytest.approx(ref.volume, abs=1e-10)


def test_iteration_budget_enforced():
    tri = build(9, 1)
    poly = assemble_constraints(tri)
    with pytest.raises(MaxIterations):
        maximize(poly, initial_structure(tri), max_iter=1)


def test_seed_must_be_interior():
    tri = build(3, 1)
    poly = assemble_constraints(tri)
    with pytest.raises(DomainError):
        maximize(poly, np.tile([math.pi, 0.0, 0.0], tri.n))
