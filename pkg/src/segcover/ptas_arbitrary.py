"""Shifted vertical-strip PTAS for arbitrarily oriented segments of length <= c*rho.

Vertical strips of width 2*rho repeat with period 2*rho*(c+2), leaving
2*rho*(c+1) blocks between them. A segment is too short to meet two strips.
Strips are split into k shift classes (strip j belongs to class j mod k). Each
class is solved exactly strip by strip. The cheapest class t is kept, its
segments are removed, and the rest of the region falls apart into slabs between
consecutive class-t strips. The slabs are pairwise independent and are also
solved exactly. Summing gives at most (1 + 1/k) * OPT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ResourceLimitError, ValidationError
from .exact_pierce import DEFAULT_WORK_LIMIT, PierceProblem, min_pierce
from .geom import Point, dedup_points, get_tol
from .instance import Instance, Placement

SQRT3 = math.sqrt(3.0)


@dataclass
class GridLayout:
    c: float
    k: int
    rho: float
    period: float
    strip_width: float
    vstrips: list[tuple[float, float]]
    hstrips: list[tuple[float, float]]
    M: int
    N: int

    @property
    def block_width(self) -> float:
        return self.period - self.strip_width


@dataclass
class SubgroupPartition:
    VST: list[list[int]]
    LS: list[list[int]]
    strip_of: dict[int, int]  # segment index -> vertical strip it crosses
    interior: list[int] = field(default_factory=list)


@dataclass
class PtasArbitraryResult:
    placement: Placement
    layout: GridLayout
    partition: SubgroupPartition
    class_sizes: list[int]
    chosen: int
    slabs: list[list[int]]


def auto_c(inst: Instance) -> float:
    """Smallest length factor (rounded up to 2 decimals) admitting every segment."""
    longest = max((s.length for s in inst.segments), default=0.0)
    return max(math.ceil(longest / inst.rho * 100 - 1e-9) / 100, 0.01)


def block_budget(c: float) -> int:
    """Sensors always enough for segments confined to one 2rho(c+1) block."""
    return math.ceil(2 * (c + 1) ** 2)


def strip_budget(c: float, rows: int = 1) -> int:
    """Sensors always enough for segments meeting ``rows`` 2rho(c+2) x 2rho strip pieces."""
    return math.ceil(rows * 4 / SQRT3 * (c + 2))


def slab_budget(c: float, M: int, k: int) -> int:
    return math.ceil(4 / SQRT3 * max(2 * M * k - M - k, 0) * (c + 2) + 2 * M * k * (c + 1) ** 2)


def build_grid(inst: Instance, c: float, k: int) -> GridLayout:
    if not (c > 0 and math.isfinite(c)):
        raise ValidationError("c", f"must be positive, got {c!r}")
    if not (isinstance(k, int) and k >= 1):
        raise ValidationError("k", f"must be an integer >= 1, got {k!r}")
    tol = get_tol()
    for i, s in enumerate(inst.segments):
        if s.length > c * inst.rho + tol:
            raise ValidationError(
                f"segments[{i}]", f"length {s.length:.6g} exceeds c*rho = {c * inst.rho:.6g}"
            )
    rho = inst.rho
    period = 2 * rho * (c + 2)
    sw = 2 * rho
    r = inst.region
    N = max(1, math.ceil(r.width / period - tol))
    M = max(1, math.ceil(r.height / period - tol))
    vstrips = [(r.xmin + j * period, r.xmin + j * period + sw) for j in range(N)]
    hstrips = [(r.ymin + j * period, r.ymin + j * period + sw) for j in range(M)]
    return GridLayout(c, k, rho, period, sw, vstrips, hstrips, M, N)


def partition_subgroups(layout: GridLayout, inst: Instance) -> SubgroupPartition:
    """Assign each segment to the shift class of the vertical strip it crosses.

    Membership is tol-open: touching a strip's edge does not count.
    """
    tol = get_tol()
    k = layout.k
    VST = [[j for j in range(layout.N) if j % k == i] for i in range(k)]
    LS: list[list[int]] = [[] for _ in range(k)]
    strip_of: dict[int, int] = {}
    interior: list[int] = []
    for idx, s in enumerate(inst.segments):
        hit = [j for j, (lo, hi) in enumerate(layout.vstrips) if s.xmax > lo + tol and s.xmin < hi - tol]
        if not hit:
            interior.append(idx)
            continue
        if len(hit) > 1:
            raise AssertionError(f"segment {idx} meets strips {hit}; length bound violated")
        strip_of[idx] = hit[0]
        LS[hit[0] % k].append(idx)
    return SubgroupPartition(VST, LS, strip_of, interior)


def _exact(inst: Instance, indices: list[int], cap: int, work_limit: int, what: str) -> list[Point]:
    if not indices:
        return []
    all_hs = inst.hippodromes()
    hs = [all_hs[i] for i in indices]
    try:
        res = min_pierce(PierceProblem(hs, inst.region, candidate_cap=min(cap, len(hs))), work_limit)
    except ResourceLimitError as e:
        raise ResourceLimitError(f"{e}; {what} with {len(hs)} segments is too large, try a larger k or a smaller instance") from None
    if res is None:
        raise AssertionError(f"{what}: optimum exceeds the covering budget {cap}")
    return list(res.sensors)


def cover_ptas_arbitrary(
    inst: Instance, c: float | None = None, k: int = 2, work_limit: int = DEFAULT_WORK_LIMIT
) -> PtasArbitraryResult:
    if c is None:
        c = auto_c(inst)
    layout = build_grid(inst, c, k)
    part = partition_subgroups(layout, inst)
    tol = get_tol()

    class_points: list[list[Point]] = []
    for i in range(k):
        pts: list[Point] = []
        for j in part.VST[i]:
            members = [s for s in part.LS[i] if part.strip_of[s] == j]
            pts.extend(_exact(inst, members, strip_budget(c, layout.M), work_limit, f"strip {j}"))
        class_points.append(pts)
    sizes = [len(p) for p in class_points]
    t = min(range(k), key=lambda i: (sizes[i], i))

    # slab q lies right of q class-t strips
    cuts = [layout.vstrips[j] for j in part.VST[t]]
    removed = set(part.LS[t])
    slabs: list[list[int]] = [[] for _ in range(len(cuts) + 1)]
    for idx, s in enumerate(inst.segments):
        if idx in removed:
            continue
        q = sum(1 for (lo, hi) in cuts if s.xmin >= hi - tol)
        slabs[q].append(idx)
    P = list(class_points[t])
    cap = slab_budget(c, layout.M, k)
    for q, members in enumerate(slabs):
        P.extend(_exact(inst, members, cap, work_limit, f"slab {q}"))
    pl = Placement(tuple(dedup_points(P, 10 * tol)), algorithm="ptas-arb")
    return PtasArbitraryResult(pl, layout, part, sizes, t, slabs)
