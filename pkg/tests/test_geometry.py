from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from segrep.geometry import (
    Point,
    SameOrientationOverlapError,
    Segment,
    SegmentError,
    format_rational,
    parse_rational,
    segments_intersect,
    stab_point,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def test_segment_normalizes_order():
    s = Segment(Point(5, 1), Point(-2, 1))
    assert s.p1.x == -2 and s.p2.x == 5
    assert s.orientation == "horizontal"


def test_segment_rejects_degenerate():
    with pytest.raises(SegmentError):
        Segment(Point(1, 1), Point(1, 1))
    with pytest.raises(SegmentError):
        Segment(Point(0, 0), Point(1, 1))


def test_cross_intersection():
    h = Segment.horizontal(1, -2, 5)
    v = Segment.vertical(0, -1, 3)
    assert segments_intersect(h, v) == Point(0, 1)
    assert segments_intersect(v, h) == Point(0, 1)


def test_disjoint_cross():
    h = Segment.horizontal(0, 0, 1)
    v = Segment.vertical(2, 1, 3)
    assert segments_intersect(h, v) is None


def test_same_orientation_overlap():
    a = Segment.horizontal(0, 0, 4)
    b = Segment.horizontal(0, 1, 2)
    with pytest.raises(SameOrientationOverlapError):
        segments_intersect(a, b)


def test_same_orientation_endpoint_touch_is_one_point():
    a = Segment.horizontal(0, 0, 1)
    b = Segment.horizontal(0, 1, 2)
    assert segments_intersect(a, b) == Point(1, 0)


def test_parallel_disjoint():
    a = Segment.vertical(0, 0, 1)
    b = Segment.vertical(1, 0, 1)
    assert segments_intersect(a, b) is None


def test_endpoint_touch_counts():
    h = Segment.horizontal(2, 0, 3)
    v = Segment.vertical(3, 2, 5)  # bottom endpoint on h's right endpoint
    assert segments_intersect(h, v) == Point(3, 2)


def test_stab_point_horizontal():
    assert stab_point(Segment.horizontal(1, -2, 5)) == Point(1, 1)


def test_stab_point_vertical_miss():
    assert stab_point(Segment.vertical(3, -1, 2)) is None


def test_stab_point_corner_pair():
    je = Fraction(-199, 100)  # a corner ordinate; both segments meet y=x there
    up = Segment.vertical(je, je, 1)
    across = Segment.horizontal(je, je, Fraction(-11, 10))
    assert stab_point(up) == Point(je, je)
    assert stab_point(across) == Point(je, je)
    assert segments_intersect(up, across) == Point(je, je)


@given(rationals, rationals, rationals, rationals, rationals,
       st.integers(min_value=1, max_value=9))
def test_predicates_scale_invariant(y, x1, x2, vx, vy1, scale):
    if x1 == x2:
        return
    h = Segment.horizontal(y, min(x1, x2), max(x1, x2))
    v = Segment.vertical(vx, vy1, vy1 + 3)
    base = segments_intersect(h, v)
    hs = Segment.horizontal(y * scale, min(x1, x2) * scale, max(x1, x2) * scale)
    vs = Segment.vertical(vx * scale, vy1 * scale, (vy1 + 3) * scale)
    scaled = segments_intersect(hs, vs)
    assert (base is None) == (scaled is None)
    if base is not None:
        assert scaled == Point(base.x * scale, base.y * scale)
    # stab line y=x is itself scale-invariant
    assert (stab_point(h) is None) == (stab_point(hs) is None)


@given(rationals, rationals, rationals, rationals)
def test_intersection_symmetric(y, x1, vx, vy):
    if x1 == vx:
        return
    h = Segment.horizontal(y, min(x1, vx) - 1, max(x1, vx) + 1)
    v = Segment.vertical(vx, vy, vy + 2)
    assert segments_intersect(h, v) == segments_intersect(v, h)


def test_rational_round_trip():
    f = Fraction(1, 1300)
    assert format_rational(f) == "1/1300"
    assert parse_rational("1/1300") == f
    assert format_rational(Fraction(2)) == "2/1"
    assert parse_rational("2") == 2


def test_lshape_cases():
    from segrep.representations import LShape

    a = LShape(1, Fraction(1), Fraction(3), Fraction(0))
    b = LShape(2, Fraction(2), Fraction(1), Fraction(1, 2))
    from segrep.geometry import lshape_intersect

    assert lshape_intersect(a, b)  # covers anchor 1, lower height
    tall_b = LShape(2, Fraction(2), Fraction(3), Fraction(1, 2))
    short_a = LShape(1, Fraction(1), Fraction(1), Fraction(0))
    assert not lshape_intersect(short_a, tall_b)
    far_b = LShape(2, Fraction(2), Fraction(1), Fraction(3, 2))
    assert not lshape_intersect(a, far_b)
    assert not lshape_intersect(LShape(1, 1, 5, 0), far_b)
