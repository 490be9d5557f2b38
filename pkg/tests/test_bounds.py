import math

import pytest
from hypothesis import given, strategies as st

from weaver.bounds import (axis_bounds, bound_report, density_table, filled_bounds,
                           filling_factor, generic_alternating_bounds, limiting_ratio)
from weaver.errors import DomainError
from weaver.volume import V_OCT, V_TET


def test_filled_bounds_three_seven():
    fb = filled_bounds(3, 7)
    assert fb.lower == pytest.approx(2.19688218503959, abs=1e-10)
    assert fb.upper == pytest.approx(28.41836497947031, abs=1e-10)
    assert fb.valid_lower


@pytest.mark.parametrize("q", [1, 2, 6])
def test_lower_invalid_below_seven(q):
    fb = filled_bounds(4, q)
    assert fb.lower is None and not fb.valid_lower
    assert filling_factor(q) is None


def test_five_seven_upper():
    assert filled_bounds(5, 7).upper == pytest.approx((2 * V_OCT + 4 * V_TET) * 7, abs=1e-12)


@given(st.integers(3, 200), st.integers(7, 200))
def test_bracket_ordered(p, q):
    fb, ab = filled_bounds(p, q), axis_bounds(p, q)
    assert 0 < fb.lower < fb.upper
    assert fb.lower <= ab.lower <= ab.upper
    assert fb.upper == ab.upper or p == 3


@given(st.integers(1, 500))
def test_three_strand_upper_density_constant(q):
    assert bound_report(3, q).density_upper == pytest.approx(2 * V_TET, abs=1e-12)


@given(st.integers(4, 300), st.integers(7, 300))
def test_densities_below_octahedron(p, q):
    r = bound_report(p, q)
    assert r.density_lower < V_OCT
    assert r.density_upper < V_OCT


def test_sharpness_tends_to_limit():
    for p in (4, 6, 10):
        ratios = [bound_report(p, q).sharpness_ratio for q in (10, 100, 10_000)]
        assert ratios == sorted(ratios)
        assert ratios[-1] == pytest.approx(limiting_ratio(p), rel=1e-3)
    assert limiting_ratio(1000) == pytest.approx(1.0, abs=1e-3)


def test_weaving_vs_generic_at_five_seven():
    # Both bound pairs as computed; the weaving upper bound is smaller, but
    # the filling factor at q = 7 makes the weaving lower bound weak, so its
    # lower/upper ratio is worse than the generic one at this size.
    r = bound_report(5, 7)
    glo, gup = generic_alternating_bounds(r.crossings)
    assert r.crossings == 28
    assert r.upper_filled < gup
    assert r.sharpness_ratio < glo / gup
    # For large enough q the weaving ratio wins.
    big = bound_report(5, 40)
    glo, gup = generic_alternating_bounds(big.crossings)
    assert big.sharpness_ratio > glo / gup


def test_generic_bounds_domain():
    with pytest.raises(DomainError):
        generic_alternating_bounds(4)
    lo, hi = generic_alternating_bounds(10)
    assert lo == pytest.approx(V_OCT * 4) and hi == pytest.approx(V_OCT * 5 + 4 * V_TET)


def test_density_table_order():
    rows = density_table([3, 4], [1, 7])
    assert [(r.p, r.q) for r in rows] == [(3, 1), (3, 7), (4, 1), (4, 7)]


def test_three_strand_axis_exact():
    ab = axis_bounds(3, 5)
    assert ab.exact == ab.lower == ab.upper == pytest.approx(20 * V_TET)


def test_filling_factor_value():
    assert filling_factor(7) == pytest.approx((1 - (2 * math.pi / 7) ** 2) ** 1.5)
