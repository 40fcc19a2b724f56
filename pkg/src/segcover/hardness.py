"""Vertex-cover-to-segment-cover reduction, as an instance generator.

A planar graph of max degree 3 is drawn orthogonally on an integer grid with
vertex-disjoint edge routes. Bends become extra ("white") vertices, and every
edge route is then subdivided to the same odd number ``2m + 1 >= 5`` of
axis-parallel segments. With rho below half the minimum separation, a sensor
covers only segments sharing one embedding vertex. The minimum cover is then
the vertex cover of the subdivided graph: ``tau + m * |E|``.

Vertex placement uses networkx's planar straight-line grid positions, scaled
up; edges are routed one by one with a bend-minimizing grid search. This is
not a linear-time <= 4-bend construction. Routes may bend more often, which
only raises ``m``.
"""

from __future__ import annotations

import heapq
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from .errors import ParseError, ResourceLimitError, ValidationError
from .exact_pierce import DEFAULT_WORK_LIMIT, PierceProblem, min_pierce
from .geom import Point, Rect, Segment, hippodromes_intersect, point_segment_distance, segment_distance
from .instance import Instance

GridPt = tuple[int, int]
_DIRS = ((1, 0), (0, 1), (-1, 0), (0, -1))


@dataclass(frozen=True)
class CubicPlanarGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 1:
            raise ValidationError("n", "graph needs at least one vertex")
        seen = set()
        deg = [0] * self.n
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edges[{i}]", f"vertex out of range in {(u, v)}")
            if u == v:
                raise ValidationError(f"edges[{i}]", "self-loop")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError(f"edges[{i}]", "duplicate edge")
            seen.add(key)
            deg[u] += 1
            deg[v] += 1
        for v, d in enumerate(deg):
            if d > 3:
                raise ValidationError("edges", f"vertex {v} has degree {d} > 3")
        g = self.to_networkx()
        if not nx.is_connected(g):
            raise ValidationError("edges", "graph is not connected")
        if not nx.check_planarity(g)[0]:
            raise ValidationError("edges", "graph is not planar")

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def parse_graph(text: str) -> CubicPlanarGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e}") from e
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ValidationError("graph", 'expected {"n": <int>, "edges": [[u, v], ...]}')
    if not isinstance(doc["n"], int) or not isinstance(doc["edges"], list):
        raise ValidationError("graph", "n must be an integer and edges a list")
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise ValidationError(f"edges[{i}]", "expected [u, v] with integer vertices")
        edges.append((e[0], e[1]))
    return CubicPlanarGraph(doc["n"], tuple(edges))


def named_graph(name: str) -> CubicPlanarGraph:
    """Small test corpus: K2, P3, K3, C4, K4."""
    table = {
        "K2": (2, [(0, 1)]),
        "P3": (3, [(0, 1), (1, 2)]),
        "K3": (3, [(0, 1), (1, 2), (0, 2)]),
        "C4": (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        "K4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    }
    if name not in table:
        raise ValidationError("graph", f"unknown named graph {name!r}")
    n, edges = table[name]
    return CubicPlanarGraph(n, tuple(edges))


@dataclass
class AugmentedEmbedding:
    black: dict[int, GridPt]
    white: list[GridPt]
    paths: list[list[GridPt]]  # vertex chain per edge, in graph edge order
    path_len: int
    d: int

    @property
    def m(self) -> int:
        return (self.path_len - 1) // 2

    def segments(self) -> list[Segment]:
        out = []
        for chain in self.paths:
            for p, q in zip(chain, chain[1:]):
                out.append(Segment.of(p[0], p[1], q[0], q[1]))
        return out


@dataclass
class Reduction:
    instance: Instance
    embedding: AugmentedEmbedding
    vertex_points: dict[int, Point]  # black vertex -> instance coordinates
    all_vertex_points: list[Point] = field(default_factory=list)


# ---------------------------------------------------------------------------
# routing
#
# Vertices sit at networkx's straight-line planar grid positions scaled by S.
# Each edge is routed inside a corridor around its straight segment; S is
# chosen so that corridors of non-incident edges are disjoint, which keeps the
# drawing's topology. Every edge leaves and enters its end vertices through a
# dedicated port (one of the four grid neighbours), assigned in the rotation
# order of the straight-line drawing.


def _clearance(pos: dict[int, tuple[float, float]], edges) -> float:
    """Smallest distance from a vertex to an edge not incident to it."""
    best = float("inf")
    for w, (wx, wy) in pos.items():
        for u, v in edges:
            if w in (u, v):
                continue
            s = Segment.of(pos[u][0], pos[u][1], pos[v][0], pos[v][1])
            best = min(best, point_segment_distance(Point(wx, wy), s))
    return best


def _assign_ports(pos: dict[int, GridPt], edges) -> dict[tuple[int, int], int]:
    """Map (vertex, edge index) to a direction index, preserving angular order."""
    inc: dict[int, list[tuple[float, int]]] = {v: [] for v in pos}
    for ei, (u, v) in enumerate(edges):
        for a, b in ((u, v), (v, u)):
            ang = math.atan2(pos[b][1] - pos[a][1], pos[b][0] - pos[a][0]) % (2 * math.pi)
            inc[a].append((ang, ei))
    out: dict[tuple[int, int], int] = {}
    for v, lst in inc.items():
        lst.sort()
        best = None
        for dirs in itertools.permutations(range(4), len(lst)):
            # directions must keep the same cyclic order as the edges
            if len(dirs) > 2:
                shift = dirs.index(min(dirs))
                rot = dirs[shift:] + dirs[:shift]
                if list(rot) != sorted(rot):
                    continue
            cost = 0.0
            for (ang, _), d in zip(lst, dirs):
                diff = abs(ang - d * math.pi / 2) % (2 * math.pi)
                cost += min(diff, 2 * math.pi - diff)
            if best is None or cost < best[0]:
                best = (cost, dirs)
        for (_, ei), d in zip(lst, best[1]):
            out[(v, ei)] = d
    return out


def _route(src: GridPt, dst: GridPt, step_cost, blocked: set[GridPt], bend_cost: float) -> list[GridPt] | None:
    """Cheapest grid path through unblocked cells.

    Entering a cell costs ``1 + step_cost(cell)`` (None forbids the cell), each
    bend adds ``bend_cost``.
    """
    start = (src[0], src[1], -1)
    dist = {start: 0}
    prev: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    heap = [(0, start)]
    while heap:
        cost, state = heapq.heappop(heap)
        if dist.get(state) != cost:
            continue
        x, y, d = state
        if (x, y) == dst:
            path = [(x, y)]
            while state in prev:
                state = prev[state]
                path.append((state[0], state[1]))
            return path[::-1]
        for nd, (dx, dy) in enumerate(_DIRS):
            cell = (x + dx, y + dy)
            if d >= 0 and nd == (d + 2) % 4:
                continue
            extra = 0.0 if cell == dst else (None if cell in blocked else step_cost(cell))
            if extra is None:
                continue
            nc = cost + 1 + extra + (bend_cost if d >= 0 and nd != d else 0)
            ns = (cell[0], cell[1], nd)
            if nc < dist.get(ns, nc + 1):
                dist[ns] = nc
                prev[ns] = state
                heapq.heappush(heap, (nc, ns))
    return None


def _corners(path: list[GridPt]) -> list[GridPt]:
    out = [path[0]]
    for i in range(1, len(path) - 1):
        a, b, c = path[i - 1], path[i], path[i + 1]
        if (b[0] - a[0], b[1] - a[1]) != (c[0] - b[0], c[1] - b[1]):
            out.append(b)
    out.append(path[-1])
    return out


def _route_all(g: CubicPlanarGraph, pos: dict[int, GridPt], scale: int, width: float | None,
               hug: float = 0.0, order: Sequence[int] | None = None):
    """Route every edge; ``width`` None only keeps routes near the drawing's box."""
    P = {v: (x * scale, y * scale) for v, (x, y) in pos.items()}
    xs = [p[0] for p in P.values()]
    ys = [p[1] for p in P.values()]
    box = (min(xs) - 2, max(xs) + 2, min(ys) - 2, max(ys) + 2)
    ports = _assign_ports(pos, g.edges)
    port_cell = {
        key: (P[key[0]][0] + _DIRS[d][0], P[key[0]][1] + _DIRS[d][1]) for key, d in ports.items()
    }
    blocked = set(P.values()) | set(port_cell.values())
    chains: dict[int, list[GridPt]] = {}
    for ei in (range(len(g.edges)) if order is None else order):
        u, v = g.edges[ei]
        a, b = port_cell[(u, ei)], port_cell[(v, ei)]
        (ux, uy), (vx, vy) = P[u], P[v]
        ex, ey = vx - ux, vy - uy
        ee = ex * ex + ey * ey

        def step_cost(cell):
            x, y = cell
            if not (box[0] <= x <= box[1] and box[2] <= y <= box[3]):
                return None
            if width is None:
                return 0.0
            # squared distance from cell to the straight edge u-v; hugging the
            # centre line leaves room for the neighbouring corridors
            t = min(1.0, max(0.0, ((x - ux) * ex + (y - uy) * ey) / ee))
            dx, dy = x - ux - t * ex, y - uy - t * ey
            d2 = dx * dx + dy * dy
            return hug * d2 if d2 <= width * width else None

        if a == b:
            path = [P[u], a, P[v]]
        else:
            mid = _route(a, b, step_cost, blocked, 4.0 * scale if not hug else 1.0)
            if mid is None:
                return None
            path = [P[u]] + mid + [P[v]]
        blocked.update(path)
        chains[ei] = _corners(path)
    return P, [chains[ei] for ei in range(len(g.edges))]


def _subdivide(chain: list[GridPt], extra: int) -> list[GridPt]:
    """Split the longest piece of an integral chain into ``extra + 1`` integral pieces."""
    if extra == 0:
        return chain
    lens = [abs(q[0] - p[0]) + abs(q[1] - p[1]) for p, q in zip(chain, chain[1:])]
    i = max(range(len(lens)), key=lambda j: (lens[j], -j))
    p, q = chain[i], chain[i + 1]
    L = lens[i]
    k = extra + 1
    ux, uy = (q[0] - p[0]) // L, (q[1] - p[1]) // L
    cuts, acc = [], 0
    for j in range(1, k):
        acc += L // k + (1 if j <= L % k else 0)
        cuts.append((p[0] + ux * acc, p[1] + uy * acc))
    return chain[: i + 1] + cuts + chain[i + 1 :]


def embed_cubic_planar(g: CubicPlanarGraph) -> AugmentedEmbedding:
    gx = g.to_networkx()
    _, emb = nx.check_planarity(gx)
    if g.n == 1:
        pos = {0: (0, 0)}
    else:
        pos = {v: (int(x), int(y)) for v, (x, y) in nx.combinatorial_embedding_to_pos(emb).items()}
    delta = _clearance(pos, g.edges)
    # free routing first (few bends). Then corridors of half-width w cells, at
    # least 2 cells apart at the tightest spot, with the shortest (most
    # constrained) edges routed first and routes pulled toward their centre lines.
    short_first = sorted(range(len(g.edges)), key=lambda e: (math.dist(pos[g.edges[e][0]], pos[g.edges[e][1]]), e))
    attempts: list[tuple[int, float | None, float, Sequence[int] | None]] = [(4, None, 0.0, None)]
    for hug, widths in ((0.3, (3, 5, 8)), (0.0, (5, 8, 12))):
        for w in widths:
            scale = max(4, math.ceil((2 * w + 2) / min(delta, 1.0)))
            attempts.append((scale, float(w), hug, short_first))
    result = None
    for scale, width, hug, order in attempts:
        result = _route_all(g, pos, scale, width, hug, order)
        if result is not None:
            break
    if result is None:
        raise ValidationError("graph", "could not route an orthogonal embedding")
    P, chains = result
    alpha = max((len(c) - 1 for c in chains), default=1)
    path_len = max(5, alpha)
    if path_len % 2 == 0:
        path_len += 1
    # stretch so every piece can be split into integral parts
    s = path_len
    black = {v: (x * s, y * s) for v, (x, y) in P.items()}
    paths = []
    for c in chains:
        c = [(x * s, y * s) for (x, y) in c]
        paths.append(_subdivide(c, path_len - (len(c) - 1)))
    black_set = set(black.values())
    white = sorted({p for c in paths for p in c[1:-1]} - black_set)
    d = min(
        (abs(q[0] - p[0]) + abs(q[1] - p[1]) for c in paths for p, q in zip(c, c[1:])),
        default=1,
    )
    out = AugmentedEmbedding(black, white, paths, path_len, d)
    _check_embedding(out)
    return out


def _check_embedding(e: AugmentedEmbedding) -> None:
    owner: dict[GridPt, int] = {}
    black = set(e.black.values())
    for ei, chain in enumerate(e.paths):
        if len(chain) - 1 != e.path_len:
            raise AssertionError(f"edge {ei} has {len(chain) - 1} segments, expected {e.path_len}")
        for p, q in zip(chain, chain[1:]):
            if p[0] != q[0] and p[1] != q[1]:
                raise AssertionError(f"edge {ei}: piece {p}-{q} is not axis-parallel")
            steps = abs(q[0] - p[0]) + abs(q[1] - p[1])
            ux, uy = (q[0] - p[0]) // steps, (q[1] - p[1]) // steps
            for k in range(1, steps):
                cell = (p[0] + ux * k, p[1] + uy * k)
                if cell in black or owner.setdefault(cell, ei) != ei:
                    raise AssertionError(f"edge routes collide at {cell}")
        for p in chain[1:-1]:
            if p in black or owner.setdefault(p, ei) != ei:
                raise AssertionError(f"edge routes collide at {p}")


def _near_pairs(segs: Sequence[Segment], r: float) -> list[tuple[int, int]]:
    """Index pairs whose bounding boxes come within ``r`` of each other (grid hash)."""
    cell = max(r, 1e-12)
    buckets: dict[tuple[int, int], list[int]] = {}
    for i, s in enumerate(segs):
        for gx in range(math.floor((s.xmin - r) / cell), math.floor((s.xmax + r) / cell) + 1):
            for gy in range(math.floor((s.ymin - r) / cell), math.floor((s.ymax + r) / cell) + 1):
                buckets.setdefault((gx, gy), []).append(i)
    pairs = set()
    for members in buckets.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                pairs.add((members[a], members[b]))
    return sorted(pairs)


def reduce_to_instance(g: CubicPlanarGraph) -> Reduction:
    emb = embed_cubic_planar(g)
    segs = emb.segments()
    # rho below half of both the shortest piece and the closest approach of
    # pieces that share no embedding vertex
    sep = float("inf")
    ends = [{(s.a.x, s.a.y), (s.b.x, s.b.y)} for s in segs]
    for i, j in _near_pairs(segs, float(emb.d)):
        if not ends[i] & ends[j]:
            sep = min(sep, segment_distance(segs[i], segs[j]))
    rho = min(float(emb.d), sep) / 4
    xs = [c for s in segs for c in (s.a.x, s.b.x)] or [0.0]
    ys = [c for s in segs for c in (s.a.y, s.b.y)] or [0.0]
    ox, oy = min(xs) - rho, min(ys) - rho
    shifted = tuple(Segment.of(s.a.x - ox, s.a.y - oy, s.b.x - ox, s.b.y - oy) for s in segs)
    region = Rect(0.0, 0.0, max(xs) - ox + rho, max(ys) - oy + rho)
    inst = Instance(region, rho, shifted)
    vpts = {v: Point(x - ox, y - oy) for v, (x, y) in emb.black.items()}
    allpts = sorted(set(vpts.values()) | {Point(x - ox, y - oy) for (x, y) in emb.white})
    return Reduction(inst, emb, vpts, allpts)


def separation_holds(red: Reduction) -> bool:
    """Hippodromes of pieces that share no embedding vertex never meet."""
    segs = red.instance.segments
    hs = red.instance.hippodromes()
    ends = [{(s.a.x, s.a.y), (s.b.x, s.b.y)} for s in segs]
    for i, j in _near_pairs(segs, 2 * red.instance.rho + 1):
        if not ends[i] & ends[j] and hippodromes_intersect(hs[i], hs[j]):
            return False
    return True


def min_vertex_cover(g: CubicPlanarGraph, max_vertices: int = 16) -> int:
    if g.n > max_vertices:
        raise ResourceLimitError(f"brute-force vertex cover limited to {max_vertices} vertices")
    for k in range(g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            s = set(sub)
            if all(u in s or v in s for u, v in g.edges):
                return k
    return g.n


@dataclass
class ReductionCheck:
    ok: bool
    tau: int
    m: int
    edges: int
    expected: int
    oracle: int


def check_reduction_detail(
    g: CubicPlanarGraph, vertex_candidates_only: bool = False, work_limit: int = DEFAULT_WORK_LIMIT
) -> ReductionCheck:
    red = reduce_to_instance(g)
    tau = min_vertex_cover(g)
    m = red.embedding.m
    expected = tau + m * len(g.edges)
    prob = PierceProblem(
        red.instance.hippodromes(),
        red.instance.region,
        extra_candidates=red.all_vertex_points,
        only_extra=vertex_candidates_only,
    )
    pl = min_pierce(prob, work_limit)
    oracle = -1 if pl is None else len(pl)
    return ReductionCheck(oracle == expected, tau, m, len(g.edges), expected, oracle)


def check_reduction(g: CubicPlanarGraph, vertex_candidates_only: bool = False,
                    work_limit: int = DEFAULT_WORK_LIMIT) -> bool:
    return check_reduction_detail(g, vertex_candidates_only, work_limit).ok
