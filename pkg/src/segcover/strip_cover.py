"""Constant-factor cover for axis-parallel segments.

Horizontal segments are bucketed into horizontal strips of height sqrt(3)*rho.
Inside a strip a greedy pass repeatedly takes the unprocessed segment with the
leftmost right endpoint ``v1``, removes every segment whose hippodrome meets
that segment's hippodrome, and places two sensors covering the box
``[v1.x, v1.x + 2*rho] x strip``. Vertical segments get the same treatment on
transposed coordinates. The union of both sensor sets is within 12x optimum.

The greedy anchors of one strip have pairwise disjoint hippodromes, and one
disk reaches at most three strips, so a third of the total anchor count is a
lower bound on the optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ValidationError
from .geom import Point, Segment, dedup_points, get_tol, segment_distance, two_disk_centers
from .instance import Instance, Placement

SQRT3 = math.sqrt(3.0)

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass
class Strip:
    index: int
    orientation: str
    lo: float
    hi: float
    member_indices: list[int] = field(default_factory=list)


@dataclass
class StripResult:
    sensors: list[Point]
    iterations: int


@dataclass
class AxisCoverResult:
    placement: Placement
    lower_bound: float
    iterations_h: int
    iterations_v: int
    strips_h: list[Strip]
    strips_v: list[Strip]


def strip_count(extent: float, rho: float) -> int:
    width = SQRT3 * rho
    return max(1, math.ceil(extent / width - get_tol()))


def classify(seg: Segment) -> str:
    """Point segments count as horizontal."""
    if seg.is_horizontal():
        return HORIZONTAL
    if seg.is_vertical():
        return VERTICAL
    raise ValidationError("segments", f"{seg.as_list()} is not axis-parallel")


def orientation_indices(inst: Instance) -> tuple[list[int], list[int]]:
    hs, vs = [], []
    for i, s in enumerate(inst.segments):
        try:
            kind = classify(s)
        except ValidationError:
            raise ValidationError(f"segments[{i}]", f"{s.as_list()} is not axis-parallel") from None
        (hs if kind == HORIZONTAL else vs).append(i)
    return hs, vs


def assign_strips(inst: Instance, orientation: str) -> list[Strip]:
    """Bucket the segments of one orientation into strips of width sqrt(3)*rho.

    Strip ``i`` spans ``[i*w, (i+1)*w)`` (the last one is clipped to the region),
    so a segment lying exactly on a boundary goes to the upper strip.
    """
    r = inst.region
    if orientation == HORIZONTAL:
        base, extent = r.ymin, r.height
    elif orientation == VERTICAL:
        base, extent = r.xmin, r.width
    else:
        raise ValidationError("orientation", f"unknown orientation {orientation!r}")
    width = SQRT3 * inst.rho
    t = strip_count(extent, inst.rho)
    strips = [
        Strip(i, orientation, base + i * width, base + min((i + 1) * width, extent)) for i in range(t)
    ]
    hs, vs = orientation_indices(inst)
    for i in hs if orientation == HORIZONTAL else vs:
        s = inst.segments[i]
        c = (s.a.y if orientation == HORIZONTAL else s.a.x) - base
        j = min(max(math.floor(c / width), 0), t - 1)
        strips[j].member_indices.append(i)
    return strips


def cover_strip(segs: Sequence[Segment], rho: float, strip: Strip, xlo: float, xhi: float) -> StripResult:
    """Greedy two-sensors-per-batch cover of horizontal segments in one strip.

    ``[xlo, xhi]`` is the region's horizontal extent; batch boxes are shifted
    left (or shrunk) so their sensors stay inside it.
    """
    tol = get_tol()
    n = len(segs)
    if n == 0:
        return StripResult([], 0)
    # ties on the right end point: x, then y, then input order
    by_right = sorted(range(n), key=lambda i: (segs[i].xmax, segs[i].a.y, i))
    by_left = sorted(range(n), key=lambda i: segs[i].xmin)
    removed = [False] * n
    pending: list[int] = []
    pr = pl = 0
    sensors: list[Point] = []
    iterations = 0
    reach = 2 * rho + tol
    while True:
        while pr < n and removed[by_right[pr]]:
            pr += 1
        if pr == n:
            break
        first = segs[by_right[pr]]
        v1x = first.xmax
        # every live segment ends at or right of v1x; it can only meet the
        # anchor's hippodrome if it starts within 2*rho of v1x
        limit = v1x + reach
        while pl < n and segs[by_left[pl]].xmin <= limit:
            pending.append(by_left[pl])
            pl += 1
        still = []
        for i in pending:
            if removed[i]:
                continue
            if segment_distance(segs[i], first) <= reach:
                removed[i] = True
            else:
                still.append(i)
        pending = still
        x0 = max(xlo, min(v1x, xhi - 2 * rho))
        x1 = min(xhi, x0 + 2 * rho)
        sensors.extend(two_disk_centers(x0, x1, strip.lo, strip.hi))
        iterations += 1
    return StripResult(sensors, iterations)


def _cover_orientation(inst: Instance, orientation: str) -> tuple[list[Point], int, list[Strip]]:
    strips = assign_strips(inst, orientation)
    r = inst.region
    sensors: list[Point] = []
    total = 0
    for strip in strips:
        segs = [inst.segments[i] for i in strip.member_indices]
        if orientation == HORIZONTAL:
            res = cover_strip(segs, inst.rho, strip, r.xmin, r.xmax)
            sensors.extend(res.sensors)
        else:
            res = cover_strip([s.transposed() for s in segs], inst.rho, strip, r.ymin, r.ymax)
            sensors.extend(Point(p.y, p.x) for p in res.sensors)
        total += res.iterations
    return sensors, total, strips


def cover_axis_parallel(inst: Instance) -> AxisCoverResult:
    """12-approximate sensor placement for horizontal/vertical segments."""
    qh, zh, strips_h = _cover_orientation(inst, HORIZONTAL)
    qv, zv, strips_v = _cover_orientation(inst, VERTICAL)
    sensors = dedup_points(qh + qv, 10 * get_tol())
    lb = max(zh, zv) / 3
    pl = Placement(tuple(sensors), algorithm="approx12", lower_bound=lb)
    return AxisCoverResult(pl, lb, zh, zv, strips_h, strips_v)


def lower_bound(inst: Instance) -> float:
    """Cheap lower bound on the optimum: max over orientations of (anchors / 3)."""
    _, zh, _ = _cover_orientation(inst, HORIZONTAL)
    _, zv, _ = _cover_orientation(inst, VERTICAL)
    return max(zh, zv) / 3
