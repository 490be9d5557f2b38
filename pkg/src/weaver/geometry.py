"""Shape parameters, gluing and completeness checks, octahedron diagnostics."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import cusp as cusp_mod
from .angles import AngleStructure
from .errors import DegenerateShape
from .triangulation import EDGE_PAIR, IdealTriangulation
from .volume import V_OCT, MaxResult

DEGENERATE_TOL = 1e-9
REGULAR_PIECE = np.array([math.pi / 2, math.pi / 4, math.pi / 4])


@dataclass(frozen=True)
class ShapeAssignment:
    shapes: np.ndarray  # (n_tet, 3) complex, indexed by opposite-edge pair

    def at(self, tet: int, edge: tuple[int, int]) -> complex:
        return complex(self.shapes[tet, EDGE_PAIR[tuple(sorted(edge))]])


def shapes_from_angles(s: AngleStructure) -> ShapeAssignment:
    """Complex shapes of the ideal tetrahedra with the given dihedral angles.

    Convention: with angles (a0, a1, a2) on pairs (01, 02, 03),

        z01 = sin a1 / sin a2 * exp(i a0)
        z02 = sin a2 / sin a0 * exp(i a1)
        z03 = sin a0 / sin a1 * exp(i a2)

    which gives z02 = 1 / (1 - z01), z03 = 1 - 1 / z01 for tetrahedra that
    are positively oriented with respect to their vertex labels.
    """
    a = s.angles
    if float(a.min()) < DEGENERATE_TOL:
        t = int(np.argmin(a.min(axis=1)))
        raise DegenerateShape(f"tetrahedron {t} has an angle below {DEGENERATE_TOL}")
    sin = np.sin(a)
    mod = np.stack([sin[:, 1] / sin[:, 2], sin[:, 2] / sin[:, 0], sin[:, 0] / sin[:, 1]], axis=1)
    return ShapeAssignment(mod * np.exp(1j * a))


def _log(z: complex) -> complex:
    # Angles live in (0, pi), so the principal branch is the right one.
    return complex(math.log(abs(z)), cmath.phase(z))


def gluing_residuals(tri: IdealTriangulation, shapes: ShapeAssignment) -> np.ndarray:
    """Per edge class: sum of log(shape) over its corners, minus 2 pi i."""
    out = np.empty(len(tri.edges), dtype=complex)
    for e in tri.edges:
        out[e.id] = sum(_log(shapes.at(t, edge)) for t, edge in e.corners) - 2j * math.pi
    return out


def completeness_residual(tri: IdealTriangulation, shapes: ShapeAssignment, cusp=None) -> complex:
    """Log of the holonomy derivative along the braid-axis meridian.

    The meridian is a closed path of link edges.  At every junction the
    path turns by the corners swept from the reversed incoming edge to the
    outgoing one; a straight turn sweeps log(-1).  The result is reduced so
    its imaginary part lies in (-pi, pi]; it vanishes iff the meridian
    holonomy is a translation.
    """
    if cusp is None:
        cusp = tri.axis_cusp()
    path = cusp_mod.meridian_path(tri)
    total = 0j
    for k, e_in in enumerate(path):
        e_out = path[(k + 1) % len(path)]
        corners = cusp_mod.sweep(tri, e_in, e_out)
        signs = {sg for *_, sg in corners}
        if len(signs) != 1:
            raise DegenerateShape("inconsistent orientation while sweeping a link vertex")
        (sg,) = signs
        turn = sum(_log(shapes.at(t, (v, w))) for t, v, w, _ in corners)
        total += sg * (turn - 1j * math.pi)
    im = math.remainder(total.imag, 2 * math.pi)
    return complex(total.real, im)


@dataclass(frozen=True)
class OctProfile:
    epsilon: float
    volumes: np.ndarray          # (q, p-3) grid; one row per sheet of the cover
    passing: np.ndarray          # volumes > v_oct - epsilon
    count: int
    longest_run: int
    grid: tuple[int, int]        # largest all-passing block (sheets, octahedra)


def _longest_run(row) -> int:
    best = cur = 0
    for ok in row:
        cur = cur + 1 if ok else 0
        best = max(best, cur)
    return best


def _largest_block(passing: np.ndarray) -> tuple[int, int]:
    """Largest-area all-passing block; sheets wrap around cyclically."""
    q, m = passing.shape
    best = (0, 0)
    if m == 0:
        return best
    for h in range(1, q + 1):
        for start in range(q if h < q else 1):
            rows = [(start + k) % q for k in range(h)]
            w = _longest_run(passing[rows].all(axis=0))
            if w and h * w > best[0] * best[1]:
                best = (h, w)
    return best


def oct_profile(result: MaxResult, tri: IdealTriangulation, epsilon: float) -> OctProfile:
    q, m = tri.spec.q, tri.spec.p - 3
    vols = np.array(result.per_octahedron_volumes, dtype=float).reshape(q, m)
    passing = vols > V_OCT - epsilon
    runs = [_longest_run(r) for r in passing]
    return OctProfile(
        epsilon=epsilon,
        volumes=vols,
        passing=passing,
        count=int(passing.sum()),
        longest_run=max(runs) if runs else 0,
        grid=_largest_block(passing),
    )


def regularity_distance(result: MaxResult, tri: IdealTriangulation) -> np.ndarray:
    """Per octahedron: max over its pieces of the angle distance to a
    quarter of the regular ideal octahedron (pi/2 on the stellation axis).

    Returned as a (q, p-3) grid like ``OctProfile.volumes``.
    """
    a = result.angles.angles
    dist = [float(np.max(np.abs(a[pieces] - REGULAR_PIECE))) for pieces in tri.octahedra().values()]
    return np.array(dist).reshape(tri.spec.q, tri.spec.p - 3)
