"""Problem instances, sensor placements, coverage checks and JSON I/O.

Instance JSON::

    {"region": {"w": 10, "h": 10}, "rho": 1, "segments": [[x1, y1, x2, y2], ...]}

The region is anchored at the origin. Placement JSON::

    {"algorithm": "approx12", "sensors": [[x, y], ...], "lower_bound": 2.0}

Writers emit 17 significant digits so coordinates round-trip exactly.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import ParseError, ValidationError
from .geom import Hippodrome, Point, Rect, Segment, get_tol, segment_covered_by


@dataclass(frozen=True)
class Instance:
    region: Rect
    rho: float
    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not (isinstance(self.rho, (int, float)) and math.isfinite(self.rho) and self.rho > 0):
            raise ValidationError("rho", f"must be a positive number, got {self.rho!r}")
        for i, s in enumerate(self.segments):
            if not (self.region.contains(s.a) and self.region.contains(s.b)):
                raise ValidationError(f"segments[{i}]", f"{s.as_list()} lies outside the region")

    @property
    def width(self) -> float:
        return self.region.width

    @property
    def height(self) -> float:
        return self.region.height

    @property
    def n(self) -> int:
        return len(self.segments)

    def hippodromes(self) -> list[Hippodrome]:
        return [Hippodrome(s, self.rho) for s in self.segments]

    def subset(self, indices: Sequence[int]) -> Instance:
        return Instance(self.region, self.rho, tuple(self.segments[i] for i in indices))


@dataclass(frozen=True)
class Placement:
    sensors: tuple[Point, ...]
    algorithm: str = ""
    lower_bound: float | None = None
    upper_bound: float | None = None
    extra: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sensors", tuple(self.sensors))

    def __len__(self) -> int:
        return len(self.sensors)


@dataclass(frozen=True)
class CoverageReport:
    covered: tuple[bool, ...]

    @property
    def all_covered(self) -> bool:
        return all(self.covered)

    @property
    def uncovered_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.covered) if not c]


def verify_cover(inst: Instance, pl: Placement, tol: float | None = None) -> CoverageReport:
    covered = []
    for s in inst.segments:
        covered.append(any(segment_covered_by(s, p, inst.rho, tol) for p in pl.sensors))
    return CoverageReport(tuple(covered))


def sensors_in_region(inst: Instance, pl: Placement, tol: float | None = None) -> bool:
    return all(inst.region.contains(p, tol) for p in pl.sensors)


# ---------------------------------------------------------------------------
# JSON


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _as_float(v: Any, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(where, f"expected a number, got {v!r}")
    f = float(v)
    if not math.isfinite(f):
        raise ValidationError(where, "non-finite number")
    return f


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except (json.JSONDecodeError, TypeError) as e:
        raise ParseError(f"malformed JSON: {e}") from e


def instance_from_dict(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    for key in ("region", "rho", "segments"):
        if key not in doc:
            raise ValidationError(key, "missing")
    reg = doc["region"]
    if not isinstance(reg, dict) or "w" not in reg or "h" not in reg:
        raise ValidationError("region", 'expected {"w": <number>, "h": <number>}')
    w, h = _as_float(reg["w"], "region.w"), _as_float(reg["h"], "region.h")
    if w < 0 or h < 0:
        raise ValidationError("region", "negative extent")
    rho = _as_float(doc["rho"], "rho")
    if not isinstance(doc["segments"], list):
        raise ValidationError("segments", "expected a list")
    segs = []
    for i, row in enumerate(doc["segments"]):
        where = f"segments[{i}]"
        if not isinstance(row, list) or len(row) != 4:
            raise ValidationError(where, "expected [x1, y1, x2, y2]")
        segs.append(Segment.of(*(_as_float(v, where) for v in row)))
    return Instance(Rect(0.0, 0.0, w, h), rho, tuple(segs))


def parse_instance(text: str) -> Instance:
    return instance_from_dict(_loads(text))


def serialize_instance(inst: Instance) -> str:
    if inst.region.xmin != 0 or inst.region.ymin != 0:
        raise ValidationError("region", "only origin-anchored regions can be serialized")
    segs = ",\n    ".join("[" + ", ".join(_num(v) for v in s.as_list()) + "]" for s in inst.segments)
    body = f"[\n    {segs}\n  ]" if segs else "[]"
    return (
        "{\n"
        f'  "region": {{"w": {_num(inst.width)}, "h": {_num(inst.height)}}},\n'
        f'  "rho": {_num(inst.rho)},\n'
        f'  "segments": {body}\n'
        "}\n"
    )


def parse_placement(text: str) -> Placement:
    doc = _loads(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("sensors"), list):
        raise ValidationError("sensors", "expected a list of [x, y]")
    pts = []
    for i, row in enumerate(doc["sensors"]):
        where = f"sensors[{i}]"
        if not isinstance(row, list) or len(row) != 2:
            raise ValidationError(where, "expected [x, y]")
        pts.append(Point(_as_float(row[0], where), _as_float(row[1], where)))
    lb = doc.get("lower_bound")
    ub = doc.get("upper_bound")
    return Placement(
        tuple(pts),
        algorithm=str(doc.get("algorithm", "")),
        lower_bound=None if lb is None else _as_float(lb, "lower_bound"),
        upper_bound=None if ub is None else _as_float(ub, "upper_bound"),
    )


def serialize_placement(pl: Placement) -> str:
    sensors = ", ".join(f"[{_num(p.x)}, {_num(p.y)}]" for p in pl.sensors)
    lb = "null" if pl.lower_bound is None else _num(pl.lower_bound)
    parts = [
        f'"algorithm": {json.dumps(pl.algorithm)}',
        f'"sensors": [{sensors}]',
        f'"lower_bound": {lb}',
    ]
    if pl.upper_bound is not None:
        parts.append(f'"upper_bound": {_num(pl.upper_bound)}')
    return "{" + ", ".join(parts) + "}\n"


def serialize_report(rep: CoverageReport) -> str:
    return json.dumps({"all_covered": rep.all_covered, "uncovered": rep.uncovered_indices}) + "\n"


# ---------------------------------------------------------------------------
# random generation
#
# Uses random.Random (MT19937) and only its random() method, whose output
# sequence for a given integer seed is guaranteed stable across platforms and
# Python versions. Derived draws (uniform, choice) are computed here rather
# than through library helpers whose algorithms have changed between releases.


def _uniform(rng: random.Random, lo: float, hi: float) -> float:
    return lo + (hi - lo) * rng.random()


def random_instance(
    width: float,
    height: float,
    rho: float,
    n: int,
    orientation: str = "axis-parallel",
    max_len: float | None = None,
    seed: int = 0,
) -> Instance:
    if orientation not in ("axis-parallel", "arbitrary"):
        raise ValidationError("orientation", f"unknown orientation {orientation!r}")
    if n < 0:
        raise ValidationError("n", "must be non-negative")
    if width < 0 or height < 0:
        raise ValidationError("region", "negative extent")
    if max_len is None:
        max_len = min(width, height)
    if max_len < 0 or max_len > math.hypot(width, height) + get_tol():
        raise ValidationError("max_len", f"{max_len} does not fit in a {width}x{height} region")
    rng = random.Random(seed)
    segs = []
    for _ in range(n):
        if orientation == "axis-parallel":
            horizontal = rng.random() < 0.5
            span = width if horizontal else height
            L = _uniform(rng, 0.0, min(max_len, span))
            if horizontal:
                x = _uniform(rng, 0.0, width - L)
                y = _uniform(rng, 0.0, height)
                segs.append(Segment.of(x, y, x + L, y))
            else:
                x = _uniform(rng, 0.0, width)
                y = _uniform(rng, 0.0, height - L)
                segs.append(Segment.of(x, y, x, y + L))
        else:
            theta = _uniform(rng, 0.0, math.pi)
            L = _uniform(rng, 0.0, max_len)
            dx, dy = math.cos(theta), math.sin(theta)
            # shrink until the projections fit
            if abs(dx) * L > width:
                L = width / abs(dx)
            if abs(dy) * L > height:
                L = height / abs(dy)
            ex, ey = dx * L, dy * L
            x0 = _uniform(rng, max(0.0, -ex), min(width, width - ex))
            y0 = _uniform(rng, 0.0, height - ey)
            x1, y1 = min(max(x0 + ex, 0.0), width), min(y0 + ey, height)
            segs.append(Segment.of(x0, y0, x1, y1))
    return Instance(Rect(0.0, 0.0, float(width), float(height)), float(rho), tuple(segs))
