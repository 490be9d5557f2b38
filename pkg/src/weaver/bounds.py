"""Closed-form volume bounds for weaving links.

All constants come from the Lobachevsky kernel (v_tet = 3 L(pi/3) ~ 1.01494,
v_oct = 8 L(pi/4) ~ 3.66386).
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .diagram import make_weave_spec
from .errors import DomainError
from .volume import V_OCT, V_TET

MIN_FILLING_Q = 7


def filling_factor(q: int) -> float | None:
    """(1 - (2 pi / q)^2)^{3/2}, or None when the meridian may be too short (q < 7)."""
    if q < MIN_FILLING_Q:
        return None
    return (1 - (2 * math.pi / q) ** 2) ** 1.5


@dataclass(frozen=True)
class FilledBounds:
    lower: float | None
    upper: float
    valid_lower: bool


@dataclass(frozen=True)
class AxisBounds:
    lower: float
    upper: float
    exact: float | None = None


def filled_bounds(p: int, q: int) -> FilledBounds:
    """Bounds on vol(S^3 - W(p, q)); the lower one needs q >= 7."""
    spec = make_weave_spec(p, q)
    upper = (V_OCT * (spec.p - 3) + 4 * V_TET) * spec.q
    f = filling_factor(spec.q)
    if f is None:
        return FilledBounds(None, upper, False)
    return FilledBounds(V_OCT * (spec.p - 2) * spec.q * f, upper, True)


def axis_bounds(p: int, q: int) -> AxisBounds:
    """Bounds on vol(S^3 - (W(p, q) u B)); exact for three strands."""
    spec = make_weave_spec(p, q)
    if spec.p == 3:
        exact = 4 * spec.q * V_TET
        return AxisBounds(exact, exact, exact)
    return AxisBounds(V_OCT * (spec.p - 2) * spec.q, (V_OCT * (spec.p - 3) + 4 * V_TET) * spec.q)


def generic_alternating_bounds(c: int) -> tuple[float, float]:
    """Best known bounds for prime twist-reduced alternating diagrams without bigons."""
    if isinstance(c, bool) or not isinstance(c, int) or c < 5:
        raise DomainError(f"crossing number must be an integer >= 5, got {c!r}")
    return V_OCT / 2 * (c - 2), V_OCT * (c - 5) + 4 * V_TET


@dataclass(frozen=True)
class BoundReport:
    p: int
    q: int
    crossings: int
    lower_filled: float | None
    upper_filled: float
    lower_axis: float
    upper_axis: float
    exact_axis: float | None
    density_lower: float | None
    density_upper: float
    sharpness_ratio: float | None
    lower_valid: bool

    def as_dict(self) -> dict:
        return asdict(self)


def bound_report(p: int, q: int) -> BoundReport:
    spec = make_weave_spec(p, q)
    fb = filled_bounds(p, q)
    ab = axis_bounds(p, q)
    c = spec.crossing_count
    return BoundReport(
        p=p,
        q=q,
        crossings=c,
        lower_filled=fb.lower,
        upper_filled=fb.upper,
        lower_axis=ab.lower,
        upper_axis=ab.upper,
        exact_axis=ab.exact,
        density_lower=None if fb.lower is None else fb.lower / c,
        density_upper=fb.upper / c,
        sharpness_ratio=None if fb.lower is None else fb.lower / fb.upper,
        lower_valid=fb.valid_lower,
    )


def density_table(p_list, q_list) -> list[BoundReport]:
    """Bound reports for every (p, q) pair, p-major."""
    return [bound_report(p, q) for p in p_list for q in q_list]


def limiting_ratio(p: int) -> float:
    """Limit of the filled-bound sharpness ratio as q -> infinity."""
    make_weave_spec(p, 1)
    return (p - 2) * V_OCT / ((p - 3) * V_OCT + 4 * V_TET)
