"""Build -> seed -> maximize -> residuals -> bounds, with invariant checks.

Reports serialize deterministically: fixed key order and floats rounded to
15 significant digits, so equal inputs give byte-identical JSON.
"""
from __future__ import annotations

import json
import math
import time
from collections import Counter
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import __version__
from .angles import assemble_constraints, initial_structure, random_interior
from .bounds import axis_bounds, bound_report
from .cusp import cusp_link
from .diagram import make_weave_spec
from .geometry import (completeness_residual, gluing_residuals, oct_profile,
                       regularity_distance, shapes_from_angles)
from .triangulation import Provenance, _finish, build
from .volume import V_OCT, maximize, volume_of

REPORT_SCHEMA = "weaver.report/1"
TRIANGULATION_SCHEMA = "weaver.triangulation/1"
RESIDUAL_TOL = 1e-8
BRACKET_SLACK = 1e-9
OCT_CAP_SLACK = 1e-9


def fmt(x):
    """Round floats (recursively) to 15 significant digits."""
    if isinstance(x, float):
        return float(f"{x:.15g}") if math.isfinite(x) else x
    if isinstance(x, dict):
        return {k: fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [fmt(v) for v in x]
    if isinstance(x, np.generic):
        return fmt(x.item())
    return x


def dumps(obj) -> str:
    return json.dumps(fmt(obj), indent=2, allow_nan=False) + "\n"


@dataclass(frozen=True)
class RunReport:
    version: str
    spec: dict
    census: dict
    seed_volume: float
    result: dict
    residuals: dict
    bounds: dict
    checks: dict
    timing: dict | None = None
    schema: str = REPORT_SCHEMA

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_dict(self) -> dict:
        d = {"schema": self.schema}
        for f in fields(self):
            if f.name != "schema" and not (f.name == "timing" and self.timing is None):
                d[f.name] = getattr(self, f.name)
        return fmt(d)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> RunReport:
        return cls(**{f.name: d.get(f.name) for f in fields(cls) if f.name in d})

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls.from_dict(json.loads(text))


def census_of(tri) -> tuple[dict, dict]:
    links = {c.id: cusp_link(tri, c) for c in tri.cusps}
    axis = links[tri.axis_cusp().id]
    valences = Counter(e.valence for e in tri.edges)
    census = {
        "tetrahedra": tri.n,
        "edges": len(tri.edges),
        "cusps": len(tri.cusps),
        "knot_cusps": sum(c.role == "knot-strand" for c in tri.cusps),
        "valences": {str(k): valences[k] for k in sorted(valences)},
        "axis_link_triangles": axis.n_triangle_cells,
        "axis_link_quads": axis.n_quad_cells,
        "meridian_edges": len(axis.meridian),
    }
    p, q = tri.spec.p, tri.spec.q
    checks = {
        "census.tetrahedra": tri.n == 4 * (p - 2) * q,
        "census.euler": len(tri.edges) == tri.n,
        "census.tori": all(L.euler_characteristic == 0 for L in links.values()),
        "census.axis_link": (axis.n_triangle_cells, axis.n_quad_cells) == (4 * q, 2 * (p - 3) * q),
    }
    return census, checks


def run_volume(p: int, q: int, *, grad_tol: float = 1e-10, residual_tol: float = RESIDUAL_TOL,
               seed: int | None = None, timing: bool = False,
               corrupt: bool = False) -> RunReport:
    """Full pipeline for W(p, q) u B.

    ``seed`` starts the optimizer from a random interior structure drawn
    with that RNG seed instead of the right-angled one; ``corrupt`` damages
    one gluing so the failure path can be exercised.
    """
    spec = make_weave_spec(p, q)
    t0 = time.perf_counter()
    tri = build(spec.p, spec.q, corrupt=corrupt)
    t_build = time.perf_counter()
    census, checks = census_of(tri)
    polytope = assemble_constraints(tri)
    start = initial_structure(tri)
    checks["seed.feasible"] = polytope.is_feasible(start)
    seed_volume = volume_of(start)
    if seed is not None:
        start = random_interior(polytope, np.random.default_rng(seed), start)
    res = maximize(polytope, start, grad_tol=grad_tol)
    t_opt = time.perf_counter()
    shapes = shapes_from_angles(res.angles)
    glue = gluing_residuals(tri, shapes)
    compl = completeness_residual(tri, shapes)
    ab = axis_bounds(spec.p, spec.q)
    if ab.exact is not None:
        bracket = abs(res.volume - ab.exact) <= 1e-8 * spec.q
    else:
        bracket = ab.lower - BRACKET_SLACK <= res.volume < ab.upper
    checks.update({
        "optimizer.gradient": res.grad_norm <= grad_tol,
        "optimizer.interior": res.margin > 0,
        "optimizer.not_below_seed": res.volume >= seed_volume - 1e-12,
        "bracket": bracket,
        "octahedron_cap": all(v <= V_OCT + OCT_CAP_SLACK for v in res.per_octahedron_volumes),
        "gluing": float(np.max(np.abs(glue))) <= residual_tol,
        "completeness": abs(compl) <= residual_tol,
    })
    regular = None
    if spec.p == 3:
        regular = float(np.max(np.abs(res.angles.flat - math.pi / 3)))
    result = {
        "volume": res.volume,
        "grad_norm": res.grad_norm,
        "margin": res.margin,
        "iterations": res.iterations,
        "per_octahedron_volumes": list(res.per_octahedron_volumes),
        "regularity_distance": regularity_distance(res, tri).reshape(-1).tolist(),
        "max_deviation_from_regular": regular,
    }
    residuals = {
        "gluing_max": float(np.max(np.abs(glue))),
        "completeness_axis_meridian": abs(compl),
    }
    t_end = time.perf_counter()
    times = None
    if timing:
        times = {"build": t_build - t0, "optimize": t_opt - t_build, "total": t_end - t0}
    return RunReport(
        version=__version__,
        spec={"p": spec.p, "q": spec.q, "crossings": spec.crossing_count},
        census=census,
        seed_volume=seed_volume,
        result=result,
        residuals=residuals,
        bounds=bound_report(spec.p, spec.q).as_dict(),
        checks=checks,
        timing=times,
    )


def limit_profile(p: int, q: int, epsilon: float) -> dict:
    tri = build(p, q)
    polytope = assemble_constraints(tri)
    res = maximize(polytope, initial_structure(tri))
    prof = oct_profile(res, tri, epsilon)
    dist = regularity_distance(res, tri)
    middle = (p - 3) // 2
    return {
        "p": p,
        "q": q,
        "epsilon": epsilon,
        "volume": res.volume,
        "octahedra": int(prof.volumes.size),
        "count": prof.count,
        "longest_run": prof.longest_run,
        "grid": list(prof.grid),
        "middle_regularity": float(dist[0, middle]) if p > 3 else None,
        "octahedron_volumes": prof.volumes.tolist(),
        "regularity_distance": dist.tolist(),
    }


# -- triangulation files ---------------------------------------------------

def triangulation_to_dict(tri) -> dict:
    return {
        "schema": TRIANGULATION_SCHEMA,
        "p": tri.spec.p,
        "q": tri.spec.q,
        "tetrahedra": [
            {
                "id": t.id,
                "neighbors": list(t.neighbors),
                "gluings": ["".join(map(str, g)) for g in t.gluings],
                "cusps": [tri.cusp_of(t.id, v) for v in range(4)],
                "axis_vertices": sorted(t.axis_vertices),
                "provenance": asdict(t.provenance),
                "shifts": [tri.shifts.get((t.id, f), 0) for f in range(4)],
            }
            for t in tri.tetrahedra
        ],
        "edges": [
            {"id": e.id, "kind": e.kind, "valence": e.valence,
             "corners": [[t, f"{a}{b}"] for t, (a, b) in e.corners]}
            for e in tri.edges
        ],
        "cusps": [{"id": c.id, "role": c.role, "component": c.component} for c in tri.cusps],
        "meridian_faces": [list(x) for x in tri.meridian_faces],
    }


def triangulation_from_dict(d: dict):
    if d.get("schema") != TRIANGULATION_SCHEMA:
        raise ValueError(f"unsupported schema {d.get('schema')!r}")
    tets = d["tetrahedra"]
    provs = [Provenance(**t["provenance"]) for t in tets]
    neighbors = [t["neighbors"] for t in tets]
    perms = [[tuple(int(c) for c in g) for g in t["gluings"]] for t in tets]
    axis = [frozenset(t["axis_vertices"]) for t in tets]
    shifts = {(t["id"], f): s for t in tets for f, s in enumerate(t["shifts"])}
    meridian = tuple(tuple(x) for x in d["meridian_faces"])
    return _finish(make_weave_spec(d["p"], d["q"]), provs, neighbors, perms, shifts, axis, meridian)


__all__ = ["RunReport", "run_volume", "limit_profile", "triangulation_to_dict",
           "triangulation_from_dict", "dumps"]
