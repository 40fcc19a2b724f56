"""Planar primitives: points, segments, hippodromes (capsules) and rectangles.

A hippodrome ``H(seg, rho)`` is the closed set of points within distance ``rho``
of a segment. A sensor at ``p`` with range ``rho`` covers a segment exactly when
``p`` lies in that segment's hippodrome, so every coverage question in the
package reduces to the predicates here.

All comparisons use an absolute tolerance (``get_tol()``, default 1e-9,
overridable with the ``SEGCOVER_TOL`` environment variable or ``set_tol``).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ValidationError

DEFAULT_TOL = 1e-9

_tol = float(os.environ.get("SEGCOVER_TOL", DEFAULT_TOL))


def get_tol() -> float:
    return _tol


def set_tol(value: float) -> None:
    """Set the package-wide comparison tolerance."""
    global _tol
    if not (value >= 0 and math.isfinite(value)):
        raise ValidationError("tol", f"must be a finite non-negative number, got {value!r}")
    _tol = float(value)


def _t(tol: float | None) -> float:
    return _tol if tol is None else tol


@dataclass(frozen=True, order=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValidationError("point", f"non-finite coordinates ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def dist(self, other: Point) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Segment:
    """Closed segment ``[a, b]``; ``a == b`` is a point segment."""

    a: Point
    b: Point

    @classmethod
    def of(cls, x1: float, y1: float, x2: float, y2: float) -> Segment:
        return cls(Point(float(x1), float(y1)), Point(float(x2), float(y2)))

    @property
    def length(self) -> float:
        return self.a.dist(self.b)

    @property
    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)

    @property
    def xmin(self) -> float:
        return min(self.a.x, self.b.x)

    @property
    def xmax(self) -> float:
        return max(self.a.x, self.b.x)

    @property
    def ymin(self) -> float:
        return min(self.a.y, self.b.y)

    @property
    def ymax(self) -> float:
        return max(self.a.y, self.b.y)

    def is_horizontal(self, tol: float | None = None) -> bool:
        return abs(self.a.y - self.b.y) <= _t(tol)

    def is_vertical(self, tol: float | None = None) -> bool:
        return abs(self.a.x - self.b.x) <= _t(tol)

    def transposed(self) -> Segment:
        """Mirror across the line y = x."""
        return Segment(Point(self.a.y, self.a.x), Point(self.b.y, self.b.x))

    def as_list(self) -> list[float]:
        return [self.a.x, self.a.y, self.b.x, self.b.y]


@dataclass(frozen=True)
class Rect:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        vals = (self.xmin, self.ymin, self.xmax, self.ymax)
        if not all(math.isfinite(v) for v in vals):
            raise ValidationError("region", "non-finite bounds")
        if self.xmin > self.xmax or self.ymin > self.ymax:
            raise ValidationError("region", f"inverted bounds {vals}")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def contains(self, p: Point, tol: float | None = None) -> bool:
        t = _t(tol)
        return (self.xmin - t <= p.x <= self.xmax + t) and (self.ymin - t <= p.y <= self.ymax + t)

    def clamp(self, p: Point) -> Point:
        return Point(min(max(p.x, self.xmin), self.xmax), min(max(p.y, self.ymin), self.ymax))

    def corners(self) -> list[Point]:
        return [
            Point(self.xmin, self.ymin),
            Point(self.xmax, self.ymin),
            Point(self.xmax, self.ymax),
            Point(self.xmin, self.ymax),
        ]

    def edges(self) -> list[Segment]:
        c = self.corners()
        return [Segment(c[i], c[(i + 1) % 4]) for i in range(4)]


@dataclass(frozen=True)
class Hippodrome:
    seg: Segment
    rho: float

    def __post_init__(self):
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise ValidationError("rho", f"must be positive, got {self.rho!r}")


# ---------------------------------------------------------------------------
# distances and predicates


def point_segment_distance(p: Point, s: Segment) -> float:
    ax, ay = s.a.x, s.a.y
    dx, dy = s.b.x - ax, s.b.y - ay
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return math.hypot(p.x - ax, p.y - ay)
    u = ((p.x - ax) * dx + (p.y - ay) * dy) / L2
    if u <= 0.0:
        return math.hypot(p.x - ax, p.y - ay)
    if u >= 1.0:
        return math.hypot(p.x - s.b.x, p.y - s.b.y)
    return math.hypot(p.x - (ax + u * dx), p.y - (ay + u * dy))


def _orient(p: Point, q: Point, r: Point) -> float:
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def _segments_cross(s1: Segment, s2: Segment) -> bool:
    """Proper or touching intersection, decided by orientation signs."""
    d1 = _orient(s2.a, s2.b, s1.a)
    d2 = _orient(s2.a, s2.b, s1.b)
    d3 = _orient(s1.a, s1.b, s2.a)
    d4 = _orient(s1.a, s1.b, s2.b)
    return ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4))


def segment_distance(s1: Segment, s2: Segment) -> float:
    """Minimum Euclidean distance between two closed segments."""
    if _segments_cross(s1, s2):
        return 0.0
    return min(
        point_segment_distance(s1.a, s2),
        point_segment_distance(s1.b, s2),
        point_segment_distance(s2.a, s1),
        point_segment_distance(s2.b, s1),
    )


def segment_covered_by(s: Segment, center: Point, rho: float, tol: float | None = None) -> bool:
    if not rho > 0:
        raise ValidationError("rho", f"invalid sensing range {rho!r}")
    return point_segment_distance(center, s) <= rho + _t(tol)


def hippodrome_contains(h: Hippodrome, p: Point, tol: float | None = None) -> bool:
    return point_segment_distance(p, h.seg) <= h.rho + _t(tol)


def hippodromes_intersect(h1: Hippodrome, h2: Hippodrome, tol: float | None = None) -> bool:
    return segment_distance(h1.seg, h2.seg) <= h1.rho + h2.rho + _t(tol)


def hippodrome_bbox(h: Hippodrome) -> Rect:
    s, r = h.seg, h.rho
    return Rect(s.xmin - r, s.ymin - r, s.xmax + r, s.ymax + r)


# ---------------------------------------------------------------------------
# boundary curves
#
# A capsule boundary is two end arcs plus two offset edges. We intersect the
# full end circles and offset edges, then keep only points whose distance to
# each segment equals its radius; that filter discards circle points hidden
# inside the capsule body.


@dataclass(frozen=True)
class _Circle:
    c: Point
    r: float


def _boundary_curves(h: Hippodrome) -> list[_Circle | Segment]:
    s, r = h.seg, h.rho
    L = s.length
    if L == 0.0:
        return [_Circle(s.a, r)]
    nx, ny = -(s.b.y - s.a.y) / L * r, (s.b.x - s.a.x) / L * r
    return [
        _Circle(s.a, r),
        _Circle(s.b, r),
        Segment(Point(s.a.x + nx, s.a.y + ny), Point(s.b.x + nx, s.b.y + ny)),
        Segment(Point(s.a.x - nx, s.a.y - ny), Point(s.b.x - nx, s.b.y - ny)),
    ]


def _circle_circle(c1: _Circle, c2: _Circle, tol: float) -> list[Point]:
    dx, dy = c2.c.x - c1.c.x, c2.c.y - c1.c.y
    d = math.hypot(dx, dy)
    if d <= tol:
        return []  # concentric: none, or the whole circle
    if d > c1.r + c2.r + tol or d < abs(c1.r - c2.r) - tol:
        return []
    a = (c1.r * c1.r - c2.r * c2.r + d * d) / (2 * d)
    h2 = c1.r * c1.r - a * a
    ux, uy = dx / d, dy / d
    mx, my = c1.c.x + a * ux, c1.c.y + a * uy
    if h2 <= (tol * max(1.0, c1.r)) ** 2:
        return [Point(mx, my)]
    h = math.sqrt(h2)
    return [Point(mx - h * uy, my + h * ux), Point(mx + h * uy, my - h * ux)]


def _circle_segment(c: _Circle, s: Segment, tol: float) -> list[Point]:
    dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
    L = math.hypot(dx, dy)
    if L == 0.0:
        return [s.a] if abs(s.a.dist(c.c) - c.r) <= tol else []
    ux, uy = dx / L, dy / L
    # foot of the perpendicular from the center, as arc length along s
    f = (c.c.x - s.a.x) * ux + (c.c.y - s.a.y) * uy
    px, py = s.a.x + f * ux, s.a.y + f * uy
    off = math.hypot(c.c.x - px, c.c.y - py)
    if off > c.r + tol:
        return []
    h2 = c.r * c.r - off * off
    hs = [0.0] if h2 <= (tol * max(1.0, c.r)) ** 2 else [-math.sqrt(h2), math.sqrt(h2)]
    out = []
    for h in hs:
        t = f + h
        if -tol <= t <= L + tol:
            t = min(max(t, 0.0), L)
            out.append(Point(s.a.x + t * ux, s.a.y + t * uy))
    return out


def _segment_segment(s1: Segment, s2: Segment, tol: float) -> list[Point]:
    rx, ry = s1.b.x - s1.a.x, s1.b.y - s1.a.y
    sx, sy = s2.b.x - s2.a.x, s2.b.y - s2.a.y
    qpx, qpy = s2.a.x - s1.a.x, s2.a.y - s1.a.y
    denom = rx * sy - ry * sx
    scale = max(math.hypot(rx, ry) * math.hypot(sx, sy), 1e-300)
    if abs(denom) <= 1e-12 * scale:
        # parallel; on collinear overlap report the overlap's end points
        if abs(qpx * ry - qpy * rx) > tol * max(math.hypot(rx, ry), 1.0):
            return []
        return [p for p in (s1.a, s1.b) if point_segment_distance(p, s2) <= tol] + [
            p for p in (s2.a, s2.b) if point_segment_distance(p, s1) <= tol
        ]
    t = (qpx * sy - qpy * sx) / denom
    u = (qpx * ry - qpy * rx) / denom
    et = tol / max(math.hypot(rx, ry), 1e-300)
    eu = tol / max(math.hypot(sx, sy), 1e-300)
    if -et <= t <= 1 + et and -eu <= u <= 1 + eu:
        t = min(max(t, 0.0), 1.0)
        return [Point(s1.a.x + t * rx, s1.a.y + t * ry)]
    return []


def _curve_intersections(c1, c2, tol: float) -> list[Point]:
    if isinstance(c1, _Circle) and isinstance(c2, _Circle):
        return _circle_circle(c1, c2, tol)
    if isinstance(c1, _Circle):
        return _circle_segment(c1, c2, tol)
    if isinstance(c2, _Circle):
        return _circle_segment(c2, c1, tol)
    return _segment_segment(c1, c2, tol)


def dedup_points(points: Iterable[Point], eps: float) -> list[Point]:
    """Drop points closer than ``eps`` to an earlier kept point (order-preserving)."""
    kept: list[Point] = []
    cell = max(eps, 1e-300)
    grid: dict[tuple[int, int], list[Point]] = {}
    for p in points:
        gx, gy = math.floor(p.x / cell), math.floor(p.y / cell)
        dup = False
        for ix in (gx - 1, gx, gx + 1):
            for iy in (gy - 1, gy, gy + 1):
                for q in grid.get((ix, iy), ()):
                    if p.dist(q) < eps:
                        dup = True
                        break
        if not dup:
            kept.append(p)
            grid.setdefault((gx, gy), []).append(p)
    return kept


def _on_boundary(p: Point, h: Hippodrome, eps: float) -> bool:
    return abs(point_segment_distance(p, h.seg) - h.rho) <= eps


def hippodrome_boundary_intersections(
    h1: Hippodrome, h2: Hippodrome, tol: float | None = None
) -> list[Point]:
    """All points where the two capsule outlines meet, deduplicated.

    Identical or collinear-overlapping capsules meet along whole arcs; for
    those only the end points of the shared pieces are reported.
    """
    t = _t(tol)
    if not hippodromes_intersect(h1, h2, t):
        return []
    eps = 10 * t
    raw: list[Point] = []
    for c1 in _boundary_curves(h1):
        for c2 in _boundary_curves(h2):
            raw.extend(_curve_intersections(c1, c2, t))
    pts = [p for p in raw if _on_boundary(p, h1, eps) and _on_boundary(p, h2, eps)]
    return dedup_points(pts, eps)


def hippodrome_edge_intersections(h: Hippodrome, edge: Segment, tol: float | None = None) -> list[Point]:
    """Points where a capsule outline crosses a straight edge."""
    t = _t(tol)
    eps = 10 * t
    raw: list[Point] = []
    for c in _boundary_curves(h):
        raw.extend(_curve_intersections(c, edge, t))
    return dedup_points([p for p in raw if _on_boundary(p, h, eps)], eps)


def two_disk_centers(x0: float, x1: float, y0: float, y1: float) -> tuple[Point, Point]:
    """Centers of two equal disks covering the box [x0, x1] x [y0, y1].

    The box is split into left and right halves; each center sits at the middle
    of its half. With x1 - x0 <= 2*rho and y1 - y0 <= sqrt(3)*rho the half
    diagonals are at most 2*rho, so radius-rho disks cover the whole box.
    """
    ym = (y0 + y1) / 2
    w = x1 - x0
    return Point(x0 + w / 4, ym), Point(x0 + 3 * w / 4, ym)
