import json

from hypothesis import given, settings, strategies as st

from weaver.report import (RunReport, dumps, fmt, run_volume, triangulation_from_dict,
                           triangulation_to_dict)
from weaver.snappea import to_snappea
from weaver.triangulation import build


def test_report_round_trip_and_determinism():
    a = run_volume(5, 2)
    text = a.to_json()
    assert RunReport.from_json(text) == RunReport.from_dict(json.loads(text))
    assert RunReport.from_json(text).to_json() == text
    assert run_volume(5, 2).to_json() == text
    assert list(json.loads(text))[:3] == ["schema", "version", "spec"]
    assert "timing" not in json.loads(text)


def test_timing_is_opt_in():
    r = run_volume(4, 1, timing=True)
    assert set(r.timing) == {"build", "optimize", "total"}
    assert RunReport.from_json(r.to_json()).timing == fmt(r.timing)


def test_all_checks_pass_on_good_input():
    r = run_volume(6, 1)
    assert r.ok and r.failed == []
    assert r.census["tetrahedra"] == 16 and r.census["edges"] == 16


def test_failed_check_reported():
    r = run_volume(6, 1)
    bad = RunReport.from_dict({**r.to_dict(), "checks": {**r.checks, "bracket": False}})
    assert not bad.ok and bad.failed == ["bracket"]


@settings(max_examples=50)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_format_is_stable(x):
    y = fmt(x)
    assert fmt(y) == y
    assert float(f"{y:.15g}") == y


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 9), st.integers(1, 3))
def test_triangulation_round_trip(p, q):
    tri = build(p, q)
    d = triangulation_to_dict(tri)
    back = triangulation_from_dict(json.loads(dumps(d)))
    assert back.tetrahedra == tri.tetrahedra
    assert back.edges == tri.edges and back.cusps == tri.cusps


def test_snappea_layout():
    text = to_snappea(build(3, 1))
    lines = text.splitlines()
    assert lines[0] == "% Triangulation"
    assert "2 0" in lines and "4" in lines
