import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from metareflect.errors import DegenerateSlope, InvalidParameter, ParallelLines, VerticalLine
from metareflect.geometry import (
    GeneralLine,
    Point2,
    PolarLine,
    SideClassification,
    SlopeLine,
    intersect_slope_polar,
    line_through,
    mid_perpendicular,
    object_from_params,
    same_side,
    side_of,
    within_bbox,
)

coord = st.floats(-30, 30, allow_nan=False)
angle = st.floats(0, 2 * math.pi, exclude_max=True)


def test_line_through_diagonal():
    line = line_through(Point2(0, 0), Point2(1, 1))
    assert (line.m, line.z) == (1.0, 0.0)


def test_line_through_reference_points():
    line = line_through(Point2(0, 3), Point2(20, 20))
    assert line.m == pytest.approx(0.85, abs=1e-15)
    assert line.z == pytest.approx(3.0, abs=1e-12)


def test_line_through_vertical():
    with pytest.raises(VerticalLine):
        line_through(Point2(2, 5), Point2(2, 9))


@given(coord, coord, coord, coord)
def test_line_through_passes_both_points(x1, y1, x2, y2):
    if abs(x1 - x2) < 1e-3:
        return
    line = line_through(Point2(x1, y1), Point2(x2, y2))
    assert abs(line.y_at(x1) - y1) < 1e-9 * max(1, abs(line.m))
    assert abs(line.y_at(x2) - y2) < 1e-9 * max(1, abs(line.m))


def test_mid_perpendicular_unit_diagonal():
    perp = mid_perpendicular(Point2(0, 0), Point2(2, 2))
    assert perp.m == -1.0
    assert perp.z == 2.0
    assert perp.y_at(1.0) == pytest.approx(1.0, abs=1e-12)


def test_mid_perpendicular_reference():
    # exact rational evaluation: m = 17/20, z_p = (0+20)/(2m) + (3+20)/2 = 791/34
    m = Fraction(17, 20)
    zp = Fraction(20) / (2 * m) + Fraction(23, 2)
    assert zp == Fraction(791, 34)
    perp = mid_perpendicular(Point2(0, 3), Point2(20, 20))
    assert perp.m == pytest.approx(-20 / 17, rel=1e-14)
    assert perp.z == pytest.approx(float(zp), rel=1e-14)
    assert abs(perp.y_at(10.0) - 11.5) < 1e-9


def test_mid_perpendicular_horizontal_rejected():
    with pytest.raises(DegenerateSlope):
        mid_perpendicular(Point2(0, 0), Point2(4, 0))
    with pytest.raises(DegenerateSlope):
        mid_perpendicular(Point2(1, 0), Point2(1, 4))


@given(coord, coord, coord, coord)
def test_mid_perpendicular_is_equidistant(x1, y1, x2, y2):
    if abs(x1 - x2) < 1e-2 or abs(y1 - y2) < 1e-2:
        return
    tx, rx = Point2(x1, y1), Point2(x2, y2)
    perp = mid_perpendicular(tx, rx)
    m = line_through(tx, rx).m
    assert m * perp.m == pytest.approx(-1.0)
    for x in (-10.0, 0.0, 7.0):
        p = Point2(x, perp.y_at(x))
        d_tx = math.dist(tuple(p), tuple(tx))
        d_rx = math.dist(tuple(p), tuple(rx))
        assert d_tx == pytest.approx(d_rx, rel=1e-9, abs=1e-9 * max(1, abs(perp.m)))


def test_object_from_params_examples():
    obj = object_from_params(1.0, 0.0, 5.0, 30.0)
    assert tuple(obj.center) == (30.0, 0.0)
    assert tuple(obj.end1) == (30.0, 2.5)
    assert tuple(obj.end2) == (30.0, -2.5)

    a = 1.1
    obj = object_from_params(0.0, a, 4.0, 30.0)
    assert tuple(obj.center) == (0.0, 0.0)
    assert obj.end1.x == pytest.approx(-2 * math.sin(a))
    assert obj.end1.y == pytest.approx(2 * math.cos(a))
    assert obj.end2.x == pytest.approx(2 * math.sin(a))
    assert obj.end2.y == pytest.approx(-2 * math.cos(a))

    obj = object_from_params(0.25, math.pi / 2, 6.0, 30.0)
    assert obj.center.x == pytest.approx(0.0, abs=1e-14)
    assert obj.center.y == pytest.approx(15.0)
    assert obj.end1.x == pytest.approx(-3.0) and obj.end1.y == pytest.approx(15.0)
    assert obj.end2.x == pytest.approx(3.0) and obj.end2.y == pytest.approx(15.0)
    for end in (obj.end1, obj.end2):
        assert abs(end.x * math.cos(math.pi / 2) + end.y * math.sin(math.pi / 2) - 15.0) < 1e-9


@pytest.mark.parametrize("args", [(-0.1, 0, 1, 30), (1.1, 0, 1, 30), (0.5, 0, 0, 30), (0.5, 0, 1, -1)])
def test_object_from_params_rejects(args):
    with pytest.raises(InvalidParameter):
        object_from_params(*args)


@given(st.floats(0, 1), angle, st.floats(0.01, 40))
def test_segment_invariants(u, a, length):
    obj = object_from_params(u, a, length, 30.0)
    mid = ((obj.end1.x + obj.end2.x) / 2, (obj.end1.y + obj.end2.y) / 2)
    scale = max(1.0, obj.center.norm)
    assert abs(mid[0] - obj.center.x) <= 1e-12 * max(scale, length)
    assert abs(mid[1] - obj.center.y) <= 1e-12 * max(scale, length)
    assert math.dist(tuple(obj.end1), tuple(obj.end2)) == pytest.approx(length, rel=1e-12)
    line = obj.line
    for end in (obj.end1, obj.end2):
        assert abs(line.signed_offset(end)) < 1e-9 * max(1.0, line.p)


def test_side_of_examples():
    assert side_of(GeneralLine(0, 1, 0), Point2(0, 1)) is SideClassification.ABOVE
    assert side_of(GeneralLine(0, -1, 0), Point2(0, 1)) is SideClassification.ABOVE
    assert side_of(GeneralLine(1, 1, -2), Point2(1, 1)) is SideClassification.ON
    assert side_of(GeneralLine(0, 1, 0), Point2(3, -2)) is SideClassification.BELOW


def test_side_of_vertical_rejected():
    with pytest.raises(InvalidParameter):
        side_of(GeneralLine(1, 0, 0), Point2(0, 0))


@given(st.floats(-5, 5), st.floats(-5, 5).filter(lambda b: abs(b) > 1e-3), st.floats(-50, 50), coord, coord)
def test_side_of_matches_vertical_comparison(a, b, c, x, y):
    y_line = -(a * x + c) / b
    side = side_of(GeneralLine(a, b, c), Point2(x, y))
    if abs(y - y_line) < 1e-9 * max(1, abs(y_line)):
        return
    assert side is (SideClassification.ABOVE if y > y_line else SideClassification.BELOW)


def test_same_side_examples():
    line = PolarLine(3.0, 0.0)
    assert same_side(Point2(1, 0), Point2(2, 0), line)
    assert not same_side(Point2(1, 0), Point2(4, 0), line)
    assert not same_side(Point2(3, 7), Point2(3, -7), line)


@given(coord, coord, coord, coord, st.floats(0, 30), angle)
def test_same_side_symmetric(x1, y1, x2, y2, p, a):
    line = PolarLine(p, a)
    assert same_side(Point2(x1, y1), Point2(x2, y2), line) == same_side(Point2(x2, y2), Point2(x1, y1), line)


def test_intersect_examples():
    pt = intersect_slope_polar(SlopeLine(1, 0), PolarLine(2, 0))
    assert pt.x == pytest.approx(2) and pt.y == pytest.approx(2)
    pt = intersect_slope_polar(SlopeLine(0.85, 3), PolarLine(10, math.pi / 2))
    assert pt.x == pytest.approx(140 / 17, rel=1e-12)
    assert pt.y == pytest.approx(10.0, rel=1e-12)
    with pytest.raises(ParallelLines):
        intersect_slope_polar(SlopeLine(1, 0), PolarLine(1, 3 * math.pi / 4))


@given(st.floats(-20, 20), st.floats(-30, 30), st.floats(0, 30), angle)
def test_intersection_lies_on_both_lines(m, z, p, a):
    if abs(m * math.sin(a) + math.cos(a)) < 1e-3:
        return
    line, polar = SlopeLine(m, z), PolarLine(p, a)
    pt = intersect_slope_polar(line, polar)
    scale = max(1.0, abs(pt.x), abs(pt.y), p, abs(z))
    assert abs(polar.signed_offset(pt)) < 1e-9 * scale
    assert abs(line.y_at(pt.x) - pt.y) < 1e-9 * scale * max(1, abs(m))


def test_within_bbox():
    c1, c2 = Point2(0, 0), Point2(2, 2)
    assert within_bbox(Point2(1, 1), c1, c2)
    assert not within_bbox(Point2(3, 1), c1, c2)
    assert within_bbox(Point2(0, 0), c1, c2)
    assert within_bbox(Point2(1, 1), c2, c1)


def test_polar_line_validation():
    with pytest.raises(InvalidParameter):
        PolarLine(-1.0, 0.0)
    with pytest.raises(InvalidParameter):
        PolarLine(1.0, 2 * math.pi)
    assert PolarLine.normalized(1.0, -math.pi / 2).alpha == pytest.approx(1.5 * math.pi)


def test_point_rejects_nan():
    with pytest.raises(InvalidParameter):
        Point2(float("nan"), 0.0)


@settings(max_examples=300)
@given(coord, coord, coord, coord, st.floats(0, 30), angle)
def test_same_side_iff_crossing_outside_segment(x1, y1, x2, y2, p, a):
    """Separating line <=> it crosses the Tx-Rx segment."""
    tx, rx = Point2(x1, y1), Point2(x2, y2)
    if abs(x1 - x2) < 1e-3:
        return
    polar = PolarLine(p, a)
    s1, s2 = polar.signed_offset(tx), polar.signed_offset(rx)
    if min(abs(s1), abs(s2)) < 1e-9:
        return
    try:
        hit = intersect_slope_polar(line_through(tx, rx), polar)
        outside = not within_bbox(hit, tx, rx)
    except ParallelLines:
        outside = True
    assert same_side(tx, rx, polar) == outside
