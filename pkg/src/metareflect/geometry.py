"""Planar primitives used by both the analytic formulas and the simulator.

Three line representations appear throughout the package:

* ``SlopeLine``   -- ``y = m*x + z`` (Tx-Rx line and its mid-perpendicular)
* ``GeneralLine`` -- ``a*x + b*y + c = 0`` (above/below classification)
* ``PolarLine``   -- ``x*cos(alpha) + y*sin(alpha) = p`` (the object's line)

Every function here is pure; all types are immutable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateSlope, InvalidParameter, ParallelLines, VerticalLine

TWO_PI = 2.0 * math.pi

# Relative threshold below which two abscissae are treated as equal.
VERTICAL_EPS = 1e-12
# |m*sin(alpha) + cos(alpha)| at or below this counts as parallel.
PARALLEL_EPS = 1e-12
ON_LINE_EPS = 1e-12


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameter(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def rotated(self, angle: float) -> Point2:
        """Rotate counter-clockwise about the origin."""
        c, s = math.cos(angle), math.sin(angle)
        return Point2(c * self.x - s * self.y, s * self.x + c * self.y)


@dataclass(frozen=True)
class SlopeLine:
    m: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and math.isfinite(self.z)):
            raise InvalidParameter("slope and intercept must be finite")

    def y_at(self, x: float) -> float:
        return self.m * x + self.z


@dataclass(frozen=True)
class GeneralLine:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.a == 0.0 and self.b == 0.0:
            raise InvalidParameter("a and b cannot both be zero")


@dataclass(frozen=True)
class PolarLine:
    p: float
    alpha: float

    def __post_init__(self):
        if self.p < 0.0:
            raise InvalidParameter(f"p must be non-negative, got {self.p}")
        if not 0.0 <= self.alpha < TWO_PI:
            raise InvalidParameter(f"alpha must lie in [0, 2*pi), got {self.alpha}")

    @classmethod
    def normalized(cls, p: float, alpha: float) -> PolarLine:
        a = math.fmod(alpha, TWO_PI)
        if a < 0.0:
            a += TWO_PI
        if a >= TWO_PI:
            a = 0.0
        return cls(p, a)

    def signed_offset(self, pt: Point2) -> float:
        """``x*cos(alpha) + y*sin(alpha) - p``; its sign tells the side of ``pt``."""
        return pt.x * math.cos(self.alpha) + pt.y * math.sin(self.alpha) - self.p

    def to_general(self) -> GeneralLine:
        return GeneralLine(math.cos(self.alpha), math.sin(self.alpha), -self.p)


class SideClassification(enum.Enum):
    ABOVE = "above"
    BELOW = "below"
    ON = "on"


@dataclass(frozen=True)
class SegmentObject:
    """The typical object: a segment of ``length`` centred at ``center``.

    ``alpha`` is the angle of the segment's normal, so the segment lies on the
    polar line ``(|center|, alpha)``.
    """

    center: Point2
    alpha: float
    length: float
    end1: Point2
    end2: Point2

    @property
    def line(self) -> PolarLine:
        return PolarLine.normalized(self.center.norm, self.alpha)

    def rotated(self, angle: float) -> SegmentObject:
        return SegmentObject(
            self.center.rotated(angle),
            self.alpha + angle,
            self.length,
            self.end1.rotated(angle),
            self.end2.rotated(angle),
        )


def line_through(p1: Point2, p2: Point2) -> SlopeLine:
    if abs(p1.x - p2.x) < VERTICAL_EPS * max(1.0, abs(p1.x)):
        raise VerticalLine(f"points share abscissa x={p1.x}")
    m = (p1.y - p2.y) / (p1.x - p2.x)
    return SlopeLine(m, p2.y - m * p2.x)


def mid_perpendicular(tx: Point2, rx: Point2) -> SlopeLine:
    """Perpendicular bisector of the Tx-Rx segment, as a slope line.

    Raises DegenerateSlope if the Tx-Rx line is horizontal or vertical.
    """
    try:
        m = line_through(tx, rx).m
    except VerticalLine as exc:
        raise DegenerateSlope("Tx-Rx line is vertical") from exc
    if m == 0.0:
        raise DegenerateSlope("Tx-Rx line is horizontal")
    z_p = (tx.x + rx.x) / (2.0 * m) + (tx.y + rx.y) / 2.0
    return SlopeLine(-1.0 / m, z_p)


def object_from_params(u: float, alpha: float, length: float, r_net: float) -> SegmentObject:
    """Build the segment whose centre sits at distance ``r_net*sqrt(u)`` along ``alpha``."""
    if not 0.0 <= u <= 1.0:
        raise InvalidParameter(f"u must lie in [0, 1], got {u}")
    if not length > 0.0:
        raise InvalidParameter(f"length must be positive, got {length}")
    if not r_net > 0.0:
        raise InvalidParameter(f"r_net must be positive, got {r_net}")
    p = r_net * math.sqrt(u)
    c, s = math.cos(alpha), math.sin(alpha)
    xo, yo = p * c, p * s
    h = 0.5 * length
    return SegmentObject(
        Point2(xo, yo),
        alpha,
        length,
        Point2(xo - h * s, yo + h * c),
        Point2(xo + h * s, yo - h * c),
    )


def side_of(line: GeneralLine, pt: Point2) -> SideClassification:
    """Classify ``pt`` against a non-vertical general line (``b != 0``)."""
    if line.b == 0.0:
        raise InvalidParameter("side_of needs a non-vertical line (b != 0)")
    value = line.a * pt.x + line.b * pt.y + line.c
    scale = max(1.0, abs(line.a * pt.x) + abs(line.b * pt.y) + abs(line.c))
    if abs(value) <= ON_LINE_EPS * scale:
        return SideClassification.ON
    # y1 - y_line = value / b
    return SideClassification.ABOVE if value / line.b > 0.0 else SideClassification.BELOW


def same_side(tx: Point2, rx: Point2, line: PolarLine) -> bool:
    # A point exactly on the line is never on the "same side".
    return line.signed_offset(tx) * line.signed_offset(rx) > 0.0


def intersect_slope_polar(line: SlopeLine, obj_line: PolarLine) -> Point2:
    s, c = math.sin(obj_line.alpha), math.cos(obj_line.alpha)
    denom = line.m * s + c
    if abs(denom) <= PARALLEL_EPS:
        raise ParallelLines(f"denominator {denom:.3e} vanishes")
    x = (obj_line.p - line.z * s) / denom
    return Point2(x, line.m * x + line.z)


def within_bbox(pt: Point2, c1: Point2, c2: Point2) -> bool:
    return (min(c1.x, c2.x) <= pt.x <= max(c1.x, c2.x)
            and min(c1.y, c2.y) <= pt.y <= max(c1.y, c2.y))
