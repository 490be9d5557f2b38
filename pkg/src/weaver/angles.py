"""Angle structures on an ideal triangulation.

An angle structure stores one dihedral angle per opposite-edge pair of each
tetrahedron (pair 0 = edges 01/23, pair 1 = 02/13, pair 2 = 03/12), so
opposite edges carry equal angles by construction.  The remaining
conditions are linear: angles of a tetrahedron sum to pi and angles around
every edge class sum to 2 pi.  The structures form the relative interior
of a polytope in an affine subspace; we keep an orthonormal basis of its
direction space as a chart.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import InfeasibleError
from .triangulation import EDGE_PAIR, IdealTriangulation

RESIDUAL_TOL = 1e-12
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class AngleStructure:
    angles: np.ndarray  # shape (n_tet, 3)

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=float).reshape(-1, 3)
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)

    @property
    def flat(self) -> np.ndarray:
        return self.angles.reshape(-1)

    @classmethod
    def from_flat(cls, x) -> AngleStructure:
        return cls(np.asarray(x, dtype=float).reshape(-1, 3))


@dataclass(frozen=True)
class AnglePolytope:
    tri: IdealTriangulation
    matrix: np.ndarray       # (n_tet + n_edges) x 3 n_tet
    rhs: np.ndarray
    basis: np.ndarray        # 3 n_tet x dim, orthonormal columns
    feasible_point: np.ndarray

    @property
    def n_tet(self) -> int:
        return self.tri.n

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def residuals(self, s: AngleStructure | np.ndarray) -> np.ndarray:
        x = s.flat if isinstance(s, AngleStructure) else np.asarray(s).reshape(-1)
        return self.matrix @ x - self.rhs

    def point(self, t: np.ndarray) -> np.ndarray:
        """Chart map: kernel coordinates to flat angles."""
        return self.feasible_point + self.basis @ t

    def is_feasible(self, s: AngleStructure | np.ndarray, tol: float = RESIDUAL_TOL) -> bool:
        return float(np.max(np.abs(self.residuals(s)))) <= tol * max(1, self.n_tet)


def constraint_system(tri: IdealTriangulation) -> tuple[np.ndarray, np.ndarray]:
    n = tri.n
    rows = n + len(tri.edges)
    A = np.zeros((rows, 3 * n))
    b = np.empty(rows)
    for t in range(n):
        A[t, 3 * t:3 * t + 3] = 1.0
        b[t] = math.pi
    for e in tri.edges:
        for t, edge in e.corners:
            A[n + e.id, 3 * t + EDGE_PAIR[edge]] += 1.0
        b[n + e.id] = 2 * math.pi
    return A, b


def _kernel(A: np.ndarray) -> np.ndarray:
    _, sv, vt = np.linalg.svd(A)
    rank = int(np.sum(sv > RANK_RTOL * sv[0]))
    return vt[rank:].T.copy()


def _max_margin_point(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Feasible point maximizing the smallest angle, by linear programming."""
    m, k = A.shape
    c = np.zeros(k + 1)
    c[-1] = -1.0
    A_eq = np.hstack([A, np.zeros((m, 1))])
    A_ub = np.hstack([-np.eye(k), np.ones((k, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(k), A_eq=A_eq, b_eq=b,
                  bounds=[(0, math.pi)] * k + [(0, math.pi / 3)], method="highs")
    if res.status != 0:
        raise InfeasibleError(f"linear program failed: {res.message}")
    return res.x[:k], float(res.x[-1])


def assemble_constraints(tri: IdealTriangulation) -> AnglePolytope:
    A, b = constraint_system(tri)
    basis = _kernel(A)
    x, margin = _max_margin_point(A, b)
    if margin <= 1e-9:
        raise InfeasibleError("the angle structure polytope has empty interior")
    # Clean up LP round-off by projecting onto the affine subspace.
    x = x - np.linalg.lstsq(A, A @ x - b, rcond=None)[0]
    return AnglePolytope(tri, A, b, basis, x)


def interiority_margin(s: AngleStructure | np.ndarray) -> float:
    x = s.flat if isinstance(s, AngleStructure) else np.asarray(s)
    return float(np.min(np.minimum(x, math.pi - x)))


def regular_structure(tri: IdealTriangulation) -> AngleStructure:
    """All angles pi/3 (only an angle structure when every edge is 6-valent)."""
    return AngleStructure(np.full((tri.n, 3), math.pi / 3))


def initial_structure(tri: IdealTriangulation) -> AngleStructure:
    """The explicit structure built from right-angled pieces.

    Octahedron pieces get pi/2 on the stellation axis (pair 0) and pi/4 on
    the other pairs.  Each original tetrahedron also gets (pi/2, pi/4, pi/4);
    where the pi/2 goes is found by trying the three placements for each of
    the four tetrahedra of a period and keeping the one that satisfies every
    edge equation.  Covers reuse the base placement on every sheet.
    """
    A, b = constraint_system(tri)
    n = tri.n
    x = np.full((n, 3), math.pi / 4)
    originals: dict[int, list[int]] = {}
    for t in tri.tetrahedra:
        pv = t.provenance
        if pv.kind == "oct":
            x[t.id, 0] = math.pi / 2
        else:
            key = (pv.region, pv.layer)
            originals.setdefault(key, []).append(t.id)
    keys = sorted(originals)
    for choice in itertools.product(range(3), repeat=len(keys)):
        trial = x.copy()
        for key, c in zip(keys, choice):
            trial[originals[key], c] = math.pi / 2
        if np.max(np.abs(A @ trial.reshape(-1) - b)) <= RESIDUAL_TOL * max(1, n):
            return AngleStructure(trial)
    raise InfeasibleError("no right-angled placement satisfies the edge equations")


def random_interior(polytope: AnglePolytope, rng: np.random.Generator,
                    around: AngleStructure | None = None) -> AngleStructure:
    """A random interior structure: a step from ``around`` (default the LP
    point) in a random chart direction, going half way to the boundary."""
    x = polytope.feasible_point if around is None else around.flat
    d = polytope.basis @ rng.standard_normal(polytope.dim)
    neg, pos = d < 0, d > 0
    limit = np.concatenate([-x[neg] / d[neg], (math.pi - x[pos]) / d[pos]])
    step = 0.5 * float(limit.min()) if limit.size else 0.0
    return AngleStructure.from_flat(x + step * d)
