"""Exact rational geometry for axis-parallel segments.

All coordinates are fractions.Fraction, so every predicate is decided
exactly; there is no tolerance parameter anywhere.  Touching at a shared
endpoint counts as intersecting.  Two parallel segments sharing more than a
single point are an error (the representations we handle never permit it).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, typing only
    from .representations import LShape

Rational = Fraction

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


class SegmentError(ValueError):
    """Raised for degenerate or inconsistent segment data."""


class SameOrientationOverlapError(ValueError):
    """Two parallel segments share more than a single point."""


class EqualAnchorsError(ValueError):
    """Two L-shapes were given the same anchor."""


def as_rational(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SegmentError(f"bad rational {text!r}") from exc


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))


@dataclass(frozen=True)
class Segment:
    """Axis-parallel segment with normalized endpoint order.

    Horizontal: p1.y == p2.y and p1.x < p2.x.  Vertical: p1.x == p2.x and
    p1.y < p2.y.  Zero length is forbidden.
    """

    p1: Point
    p2: Point

    def __post_init__(self) -> None:
        a, b = self.p1, self.p2
        if a.x == b.x and a.y == b.y:
            raise SegmentError("zero-length segment")
        if a.x != b.x and a.y != b.y:
            raise SegmentError("segment is not axis-parallel")
        if (a.y == b.y and a.x > b.x) or (a.x == b.x and a.y > b.y):
            object.__setattr__(self, "p1", b)
            object.__setattr__(self, "p2", a)

    @property
    def orientation(self) -> str:
        return HORIZONTAL if self.p1.y == self.p2.y else VERTICAL

    @staticmethod
    def horizontal(y, x1, x2) -> "Segment":
        return Segment(Point(as_rational(x1), as_rational(y)),
                       Point(as_rational(x2), as_rational(y)))

    @staticmethod
    def vertical(x, y1, y2) -> "Segment":
        return Segment(Point(as_rational(x), as_rational(y1)),
                       Point(as_rational(x), as_rational(y2)))


def segments_intersect(s: Segment, t: Segment) -> Point | None:
    """The unique common point of two axis-parallel segments, if any.

    Endpoint touches count.  Parallel segments sharing a single point return
    that point; sharing more raises SameOrientationOverlapError.
    """
    if s.orientation == t.orientation:
        return _parallel_common_point(s, t)
    h, v = (s, t) if s.orientation == HORIZONTAL else (t, s)
    x, y = v.p1.x, h.p1.y
    if h.p1.x <= x <= h.p2.x and v.p1.y <= y <= v.p2.y:
        return Point(x, y)
    return None


def _parallel_common_point(s: Segment, t: Segment) -> Point | None:
    if s.orientation == HORIZONTAL:
        if s.p1.y != t.p1.y:
            return None
        lo, hi = max(s.p1.x, t.p1.x), min(s.p2.x, t.p2.x)
        if lo > hi:
            return None
        if lo < hi:
            raise SameOrientationOverlapError(f"collinear overlap between {s} and {t}")
        return Point(lo, s.p1.y)
    if s.p1.x != t.p1.x:
        return None
    lo, hi = max(s.p1.y, t.p1.y), min(s.p2.y, t.p2.y)
    if lo > hi:
        return None
    if lo < hi:
        raise SameOrientationOverlapError(f"collinear overlap between {s} and {t}")
    return Point(s.p1.x, lo)


def stab_point(s: Segment) -> Point | None:
    """Intersection of s with the line y = x, if any."""
    if s.orientation == HORIZONTAL:
        y = s.p1.y
        if s.p1.x <= y <= s.p2.x:
            return Point(y, y)
        return None
    x = s.p1.x
    if s.p1.y <= x <= s.p2.y:
        return Point(x, x)
    return None


def lshape_intersect(a: "LShape", b: "LShape") -> bool:
    """Whether two grounded L-shapes intersect.

    With distinct anchors and distinct heights the only possible contact is
    the left shape's vertical against the right shape's horizontal, so the
    test reduces to two comparisons.
    """
    if a.anchor == b.anchor:
        raise EqualAnchorsError(f"shapes {a.vertex} and {b.vertex} share an anchor")
    left, right = (a, b) if a.anchor < b.anchor else (b, a)
    return right.left_extent <= left.anchor and right.height < left.height
