"""Volume of angle structures and its maximization.

The volume of an ideal tetrahedron with dihedral angles x, y, z is
L(x) + L(y) + L(z), where L is the Lobachevsky function

    L(t) = -int_0^t log|2 sin s| ds = Cl_2(2t) / 2.

The volume of an angle structure is the sum over tetrahedra.  It is
strictly concave on the polytope of angle structures and its maximum, when
interior, is the complete hyperbolic structure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .angles import AnglePolytope, AngleStructure, interiority_margin
from .errors import BoundaryCollapse, DomainError, MaxIterations
from .triangulation import IdealTriangulation

# Power series of the Clausen function on [-pi, pi]:
#   Cl_2(u) = u - u log|u| + sum_k zeta(2k) / (k (2k+1)) (u / 2pi)^{2k} u
# With |u / 2pi| <= 1/2 the terms drop by a factor >= 4; 26 terms reach
# double precision.
_N_TERMS = 26
_COEFFS = np.array([zeta(2 * k) / (k * (2 * k + 1)) for k in range(1, _N_TERMS + 1)])


def _clausen2_reduced(u: np.ndarray) -> np.ndarray:
    w = (u / (2 * math.pi)) ** 2
    series = np.zeros_like(u)
    for c in _COEFFS[::-1]:
        series = (series + c) * w
    with np.errstate(divide="ignore", invalid="ignore"):
        log_term = np.where(u == 0, 0.0, u * np.log(np.abs(u)))
    return u - log_term + u * series


def lobachevsky(theta):
    """Lobachevsky function; odd and pi-periodic."""
    t = np.asarray(theta, dtype=float)
    r = t - math.pi * np.round(t / math.pi)  # in [-pi/2, pi/2]
    out = 0.5 * _clausen2_reduced(2 * r)
    return float(out) if out.ndim == 0 else out


def lobachevsky_prime(theta):
    """Derivative -log|2 sin theta|; +inf at multiples of pi."""
    t = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore"):
        out = -np.log(np.abs(2 * np.sin(t)))
    return float(out) if out.ndim == 0 else out


V_TET = 3 * lobachevsky(math.pi / 3)
V_OCT = 8 * lobachevsky(math.pi / 4)

SUM_TOL = 1e-9
GRAD_TOL = 1e-10
MAX_ITER = 100_000
BOUNDARY_TOL = 1e-9
SINGULAR_TOL = 1e-13


def tet_volume(x: float, y: float, z: float) -> float:
    if abs(x + y + z - math.pi) > SUM_TOL:
        raise DomainError(f"angles sum to {x + y + z!r}, not pi")
    for a in (x, y, z):
        if not -SUM_TOL <= a <= math.pi + SUM_TOL:
            raise DomainError(f"angle {a!r} outside [0, pi]")
    return float(lobachevsky(x) + lobachevsky(y) + lobachevsky(z))


def _flat(s) -> np.ndarray:
    return s.flat if isinstance(s, AngleStructure) else np.asarray(s, dtype=float).reshape(-1)


def per_tet_volumes(s) -> np.ndarray:
    return lobachevsky(_flat(s)).reshape(-1, 3).sum(axis=1)


def volume_of(s) -> float:
    # math.fsum keeps the result independent of summation order.
    return math.fsum(per_tet_volumes(s))


def gradient_of(s, polytope: AnglePolytope) -> np.ndarray:
    """Derivatives of the volume along the orthonormal chart directions.

    Returns a vector of +inf if an angle is within 1e-13 of 0 or pi, where
    the derivative blows up.
    """
    x = _flat(s)
    if interiority_margin(x) < SINGULAR_TOL:
        return np.full(polytope.dim, np.inf)
    return polytope.basis.T @ lobachevsky_prime(x)


def _hessian(x: np.ndarray, polytope: AnglePolytope) -> np.ndarray:
    B = polytope.basis
    return (B.T * -(1.0 / np.tan(x))) @ B


@dataclass(frozen=True)
class MaxResult:
    angles: AngleStructure
    volume: float
    grad_norm: float
    margin: float
    iterations: int
    per_tet_volumes: tuple[float, ...]
    per_octahedron_volumes: tuple[float, ...]
    seed_volume: float


def octahedron_volumes(tri: IdealTriangulation, per_tet) -> tuple[float, ...]:
    """Volumes of the stellated octahedra, ordered by (copy, index)."""
    return tuple(math.fsum(per_tet[t] for t in pieces) for pieces in tri.octahedra().values())


def maximize(polytope: AnglePolytope, seed: AngleStructure | None = None, *,
             grad_tol: float = GRAD_TOL, max_iter: int = MAX_ITER) -> MaxResult:
    """Maximize volume over the angle structures by damped Newton steps.

    Works in chart coordinates around the seed.  Every trial step is
    halved until it stays strictly inside the box and does not decrease
    the volume (up to round-off near the optimum).
    """
    x0 = polytope.feasible_point if seed is None else _flat(seed).copy()
    if interiority_margin(x0) <= 0:
        raise DomainError("seed is not an interior angle structure")
    B = polytope.basis
    x = x0.copy()
    seed_vol = vol = volume_of(x)
    it = 0
    g = gradient_of(x, polytope)
    gnorm = float(np.linalg.norm(g))
    while gnorm > grad_tol:
        if it >= max_iter:
            raise MaxIterations(f"no convergence after {it} iterations (|grad| = {gnorm:.3e})")
        it += 1
        H = _hessian(x, polytope)
        try:
            d = -np.linalg.solve(H, g)
            if g @ d <= 0:
                d = g
        except np.linalg.LinAlgError:
            d = g
        dx = B @ d
        step = 1.0
        # Largest step keeping every angle inside (0, pi), with a safety factor.
        neg, pos = dx < 0, dx > 0
        limits = np.concatenate([-x[neg] / dx[neg], (math.pi - x[pos]) / dx[pos]])
        if limits.size:
            step = min(1.0, 0.95 * float(limits.min()))
        while True:
            cand = x + step * dx
            cv = volume_of(cand)
            if cv >= vol - 1e-15 * max(1.0, abs(vol)):
                break
            step *= 0.5
            if step < 1e-18:
                break
        if step < 1e-18:
            raise MaxIterations(f"line search stalled at |grad| = {gnorm:.3e}")
        x, vol = cand, cv
        margin = interiority_margin(x)
        if margin < BOUNDARY_TOL:
            raise BoundaryCollapse(f"iterate within {margin:.2e} of the box boundary")
        g = gradient_of(x, polytope)
        gnorm = float(np.linalg.norm(g))
    per_tet = per_tet_volumes(x)
    s = AngleStructure.from_flat(x)
    return MaxResult(
        angles=s,
        volume=volume_of(x),
        grad_norm=gnorm,
        margin=interiority_margin(x),
        iterations=it,
        per_tet_volumes=tuple(float(v) for v in per_tet),
        per_octahedron_volumes=octahedron_volumes(polytope.tri, per_tet),
        seed_volume=seed_vol,
    )
