"""Shifting-style PTAS for axis-parallel segments.

The sweep walks the sorted x-coordinates of hippodrome bounding boxes. It
accumulates the hippodromes lying strictly between the last cut and the
current line until their cheap lower bound (from the strip approximation)
reaches ``T = ceil(2t/eps)``. It then commits a cut: hippodromes crossing the
cut line are pierced by a column of at most ``2t`` points, and the accumulated
interior hippodromes are pierced exactly. Cuts are at most ``OPT / T + 1`` in
number, which gives ``|P| <= (1 + eps) * OPT + 2t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ResourceLimitError, ValidationError
from .exact_pierce import DEFAULT_WORK_LIMIT, PierceProblem, min_pierce
from .geom import Hippodrome, Point, dedup_points, get_tol, hippodrome_bbox, hippodrome_contains, two_disk_centers
from .instance import Instance, Placement
from .strip_cover import SQRT3, lower_bound, orientation_indices, strip_count


@dataclass(frozen=True)
class PtasConfig:
    eps: float
    t: int
    T: int

    @classmethod
    def for_instance(cls, inst: Instance, eps: float) -> PtasConfig:
        if not (eps > 0 and math.isfinite(eps)):
            raise ValidationError("eps", f"must be positive, got {eps!r}")
        t = strip_count(inst.height, inst.rho)
        return cls(eps, t, max(1, math.ceil(2 * t / eps)))


@dataclass
class SweepState:
    X: list[float]
    I: list[int] = field(default_factory=list)
    ell: float = 0.0


@dataclass
class CutRecord:
    index: int
    x: float
    psi: float
    crossing: list[int]
    interior: list[int]
    column_points: list[Point]
    exact_points: list[Point]


@dataclass
class PtasAxisResult:
    placement: Placement
    opt_interval: tuple[float, int]
    config: PtasConfig
    state: SweepState
    cuts: list[CutRecord]


def event_coordinates(inst: Instance) -> list[float]:
    r = inst.region
    xs = [r.xmin, r.xmax]
    for h in inst.hippodromes():
        b = hippodrome_bbox(h)
        xs.append(min(max(b.xmin, r.xmin), r.xmax))
        xs.append(min(max(b.xmax, r.xmin), r.xmax))
    xs.sort()
    tol = get_tol()
    out: list[float] = []
    for x in xs:
        if not out or x - out[-1] > tol:
            out.append(x)
    return out


def column_cover(x: float, inst: Instance, hippodromes: list[Hippodrome] | None = None) -> list[Point]:
    """At most 2t points piercing every hippodrome that meets the line at ``x``.

    Each horizontal strip of height sqrt(3)*rho gets the two centers covering
    the box ``[x - rho, x + rho] x strip`` (clipped to the region). When
    ``hippodromes`` is given, points piercing none of them are dropped.
    """
    r = inst.region
    rho = inst.rho
    t = strip_count(r.height, rho)
    width = SQRT3 * rho
    x0, x1 = max(r.xmin, x - rho), min(r.xmax, x + rho)
    pts: list[Point] = []
    for j in range(t):
        lo = r.ymin + j * width
        hi = r.ymin + min((j + 1) * width, r.height)
        pts.extend(two_disk_centers(x0, x1, lo, hi))
    if hippodromes is not None:
        pts = [p for p in pts if any(hippodrome_contains(h, p) for h in hippodromes)]
    return pts


def cover_ptas_axis(inst: Instance, eps: float, work_limit: int = DEFAULT_WORK_LIMIT) -> PtasAxisResult:
    orientation_indices(inst)  # rejects non-axis-parallel input
    cfg = PtasConfig.for_instance(inst, eps)
    tol = get_tol()
    hs = inst.hippodromes()
    boxes = [hippodrome_bbox(h) for h in hs]
    X = event_coordinates(inst)
    state = SweepState(X, [0], X[0])
    active = set(range(len(hs)))
    first_strip = True
    cuts: list[CutRecord] = []
    sensors: list[Point] = []
    exact_total = 0
    m = len(X) - 1
    for i in range(1, m + 1):
        xi = X[i]
        interior = sorted(
            j for j in active
            if boxes[j].xmax < xi - tol and (first_strip or boxes[j].xmin > state.ell + tol)
        )
        psi = lower_bound(inst.subset(interior)) if interior else 0.0
        if psi < cfg.T and i != m:
            continue
        crossing = sorted(
            j for j in active if boxes[j].xmin <= xi + tol and boxes[j].xmax >= xi - tol
        )
        col = column_cover(xi, inst, [hs[j] for j in crossing]) if crossing else []
        try:
            exact = min_pierce(PierceProblem([hs[j] for j in interior], inst.region), work_limit)
        except ResourceLimitError as e:
            raise ResourceLimitError(
                f"{e}; a strip of {len(interior)} hippodromes was too large, "
                "try a larger eps (smaller threshold T)"
            ) from None
        assert exact is not None  # uncapped search always succeeds
        exact_total += len(exact)
        sensors.extend(col)
        sensors.extend(exact.sensors)
        active -= set(crossing)
        active -= set(interior)
        state.I.append(i)
        state.ell = xi
        first_strip = False
        cuts.append(CutRecord(i, xi, psi, crossing, interior, col, list(exact.sensors)))
    if active:
        raise AssertionError(f"hippodromes {sorted(active)} were never assigned to a cut")
    pts = tuple(dedup_points(sensors, 10 * tol))
    pl = Placement(pts, algorithm="ptas-axis", lower_bound=float(exact_total), upper_bound=float(len(pts)))
    return PtasAxisResult(pl, (float(exact_total), len(pts)), cfg, state, cuts)
