import math

import numpy as np
import pytest

from weaver.angles import AngleStructure, initial_structure
from weaver.errors import DegenerateShape
from weaver.geometry import (completeness_residual, gluing_residuals, oct_profile,
                             regularity_distance, shapes_from_angles)
from weaver.volume import V_OCT

from conftest import solved


def test_shape_relations(rng):
    for _ in range(50):
        a, b = rng.uniform(0.05, 1.5, 2)
        s = AngleStructure(np.array([[a, b, math.pi - a - b]]))
        z = shapes_from_angles(s)
        z01, z02, z03 = z.at(0, (0, 1)), z.at(0, (0, 2)), z.at(0, (0, 3))
        assert z02 == pytest.approx(1 / (1 - z01), abs=1e-12)
        assert z03 == pytest.approx(1 - 1 / z01, abs=1e-12)
        assert z01 * z02 * z03 == pytest.approx(-1, abs=1e-12)
        assert z.at(0, (2, 3)) == z01
        assert np.allclose(np.angle(z.shapes[0]), s.angles[0], atol=1e-10)


def test_degenerate_shape_rejected():
    with pytest.raises(DegenerateShape):
        shapes_from_angles(AngleStructure(np.array([[math.pi, 0.0, 0.0]])))


@pytest.mark.parametrize("p,q", [(3, 1), (4, 1), (7, 1), (5, 2), (4, 3)])
def test_maximizer_solves_gluing_and_completeness(p, q):
    tri, _, res = solved(p, q)
    z = shapes_from_angles(res.angles)
    assert np.max(np.abs(gluing_residuals(tri, z))) < 1e-8
    assert abs(completeness_residual(tri, z)) < 1e-8


def test_seed_geometry():
    # All-pi/3 on three strands is already the complete structure; the
    # right-angled seed with octahedra misses the modulus equations.
    tri, _, _ = solved(3, 1)
    from weaver.angles import regular_structure
    z = shapes_from_angles(regular_structure(tri))
    assert np.max(np.abs(gluing_residuals(tri, z))) < 1e-10
    assert abs(completeness_residual(tri, z)) < 1e-10
    tri, _, _ = solved(5, 1)
    z = shapes_from_angles(initial_structure(tri))
    assert np.max(np.abs(gluing_residuals(tri, z))) > 1e-3


def test_oct_profile_shapes_and_thresholds():
    tri, _, res = solved(8, 1)
    prof = oct_profile(res, tri, 0.1)
    assert prof.volumes.shape == (1, 5)
    assert prof.count <= 5 and prof.longest_run <= prof.count
    assert np.all(prof.volumes <= V_OCT + 1e-12)
    every = oct_profile(res, tri, 4.0)
    assert every.count == 5 and every.grid == (1, 5)
    none = oct_profile(res, tri, 1e-12)
    assert none.count == 0 and none.longest_run == 0 and none.grid == (0, 0)


def test_oct_profile_covers_sheets():
    tri, _, res = solved(6, 3)
    prof = oct_profile(res, tri, 4.0)
    assert prof.volumes.shape == (3, 3)
    assert prof.grid == (3, 3)


def test_three_strands_have_no_octahedra():
    tri, _, res = solved(3, 1)
    prof = oct_profile(res, tri, 0.1)
    assert prof.volumes.size == 0 and prof.count == 0 and prof.grid == (0, 0)
    assert regularity_distance(res, tri).size == 0


def test_regularity_is_symmetric_and_peaks_at_the_ends():
    tri, _, res = solved(10, 1)
    d = regularity_distance(res, tri)[0]
    assert d == pytest.approx(d[::-1], abs=1e-9)
    assert d[0] == d.max() and d[len(d) // 2] == d.min()
