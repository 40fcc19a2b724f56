"""Exhaustive minimum piercing of a family of hippodromes.

A finite candidate set is enough: take any optimal piercing point and the set
S of hippodromes it pierces. The convex region (intersection of S, clipped to
the region) has a vertex on two boundaries, on a boundary and a region edge,
or at a region corner. If it has no vertex, it is one whole hippodrome, which
contains its segment midpoint. ``candidate_points`` emits all of these.

``min_pierce`` searches solution sizes 0, 1, 2, ... in order, so the first
feasible size is the minimum. Each size is a depth-limited search that branches
on the uncovered hippodrome with the fewest candidates. It prunes on a
disjoint-packing lower bound and memoizes failed states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ResourceLimitError
from .geom import (
    Hippodrome,
    Point,
    Rect,
    dedup_points,
    get_tol,
    hippodrome_boundary_intersections,
    hippodrome_bbox,
    hippodrome_contains,
    hippodrome_edge_intersections,
)
from .instance import Instance, Placement

DEFAULT_WORK_LIMIT = 10**8


@dataclass
class PierceProblem:
    hippodromes: list[Hippodrome]
    region: Rect
    candidate_cap: int | None = None  # None: no cap beyond len(hippodromes)
    extra_candidates: list[Point] = field(default_factory=list)
    only_extra: bool = False  # restrict the search to extra_candidates


def candidate_points(hs: Sequence[Hippodrome], region: Rect) -> list[Point]:
    tol = get_tol()
    raw: list[Point] = []
    boxes = [hippodrome_bbox(h) for h in hs]
    for i in range(len(hs)):
        bi = boxes[i]
        for j in range(i + 1, len(hs)):
            bj = boxes[j]
            if bi.xmax < bj.xmin or bj.xmax < bi.xmin or bi.ymax < bj.ymin or bj.ymax < bi.ymin:
                continue
            raw.extend(hippodrome_boundary_intersections(hs[i], hs[j]))
    for h in hs:
        raw.append(h.seg.midpoint)
        for e in region.edges():
            raw.extend(hippodrome_edge_intersections(h, e))
    raw.extend(region.corners())
    pts = [region.clamp(p) for p in raw if region.contains(p, 10 * tol)]
    return sorted(dedup_points(pts, 10 * tol))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reduce(masks: list[int]) -> list[int]:
    """Indices of candidates whose coverage is not contained in another's.

    Among equal masks the earliest (in sorted candidate order) survives.
    """
    order = sorted(range(len(masks)), key=lambda i: (-_popcount(masks[i]), i))
    kept: list[int] = []
    for i in order:
        m = masks[i]
        if m == 0:
            continue
        if any(m | masks[k] == masks[k] for k in kept):
            continue
        kept.append(i)
    return sorted(kept)


class _Search:
    def __init__(self, n: int, masks: list[int], work_limit: int):
        self.n = n
        self.masks = masks
        self.options: list[list[int]] = [[] for _ in range(n)]
        for c, m in enumerate(masks):
            for h in range(n):
                if m >> h & 1:
                    self.options[h].append(c)
        # union of everything a hippodrome shares a candidate with
        self.conflict = [0] * n
        for h in range(n):
            u = 0
            for c in self.options[h]:
                u |= masks[c]
            self.conflict[h] = u
        self.order = sorted(range(n), key=lambda h: (len(self.options[h]), h))
        self.work = 0
        self.work_limit = work_limit
        self.failed: dict[int, int] = {}

    def packing_bound(self, uncovered: int) -> int:
        count = 0
        blocked = 0
        for h in self.order:
            bit = 1 << h
            if uncovered & bit and not blocked & bit:
                count += 1
                blocked |= self.conflict[h]
        return count

    def solve(self, uncovered: int, budget: int) -> list[int] | None:
        if uncovered == 0:
            return []
        if budget == 0:
            return None
        if self.failed.get(uncovered, -1) >= budget:
            return None
        self.work += 1
        if self.work > self.work_limit:
            raise ResourceLimitError(
                f"exact piercing search exceeded work limit {self.work_limit}"
            )
        if self.packing_bound(uncovered) > budget:
            self.failed[uncovered] = budget
            return None
        best_h = -1
        best_len = 1 << 60
        for h in self.order:
            if uncovered >> h & 1:
                k = len(self.options[h])
                if k < best_len:
                    best_h, best_len = h, k
                    if k <= 1:
                        break
        for c in self.options[best_h]:
            sub = self.solve(uncovered & ~self.masks[c], budget - 1)
            if sub is not None:
                return [c] + sub
        self.failed[uncovered] = budget
        return None


def min_pierce(prob: PierceProblem, work_limit: int = DEFAULT_WORK_LIMIT) -> Placement | None:
    """Smallest candidate subset piercing every hippodrome, or None if none fits the cap.

    Raises ResourceLimitError when the search visits more than ``work_limit``
    nodes.
    """
    hs = list(prob.hippodromes)
    n = len(hs)
    cap = n if prob.candidate_cap is None else prob.candidate_cap
    if n == 0:
        return Placement((), algorithm="exact", lower_bound=0.0)
    tol = get_tol()
    if prob.only_extra:
        cands = sorted(dedup_points(prob.extra_candidates, 10 * tol))
    else:
        cands = candidate_points(hs, prob.region)
        if prob.extra_candidates:
            cands = sorted(dedup_points(cands + list(prob.extra_candidates), 10 * tol))
    masks = []
    for p in cands:
        m = 0
        for i, h in enumerate(hs):
            if hippodrome_contains(h, p):
                m |= 1 << i
        masks.append(m)
    full = (1 << n) - 1
    covered_any = 0
    for m in masks:
        covered_any |= m
    if covered_any != full:
        return None
    keep = _reduce(masks)
    cands = [cands[i] for i in keep]
    masks = [masks[i] for i in keep]
    search = _Search(n, masks, work_limit)
    start = search.packing_bound(full)
    for size in range(start, cap + 1):
        found = search.solve(full, size)
        if found is not None:
            pts = tuple(sorted(cands[c] for c in found))
            return Placement(pts, algorithm="exact", lower_bound=float(len(pts)),
                             extra={"work": search.work})
    return None


def solve_exact(inst: Instance, work_limit: int = DEFAULT_WORK_LIMIT, max_size: int | None = None) -> Placement | None:
    """Minimum sensor placement for a whole instance (the ground-truth oracle)."""
    prob = PierceProblem(inst.hippodromes(), inst.region, candidate_cap=max_size)
    return min_pierce(prob, work_limit)
