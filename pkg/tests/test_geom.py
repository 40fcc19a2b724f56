import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from segcover.errors import ValidationError
from segcover.geom import (
    Hippodrome,
    Point,
    Rect,
    Segment,
    dedup_points,
    get_tol,
    hippodrome_bbox,
    hippodrome_boundary_intersections,
    hippodrome_contains,
    hippodromes_intersect,
    point_segment_distance,
    segment_covered_by,
    segment_distance,
    set_tol,
    two_disk_centers,
)

from conftest import points, radii, segments

S = Segment.of


def P(x, y):
    return Point(x, y)


class TestPointSegmentDistance:
    def test_nearest_endpoint(self):
        assert point_segment_distance(P(0, 0), S(2, 0, 3, 0)) == 2

    def test_perpendicular_foot(self):
        assert point_segment_distance(P(1, 1), S(0, 0, 2, 0)) == 1

    def test_degenerate_segment(self):
        assert point_segment_distance(P(5, 5), S(5, 5, 5, 5)) == 0

    @given(points, segments)
    def test_zero_iff_on_segment(self, p, s):
        d = point_segment_distance(p, s)
        assert d >= 0
        # the closest point on s, recomputed by dense sampling, is never closer
        best = min(
            math.hypot(p.x - (s.a.x + t / 200 * (s.b.x - s.a.x)), p.y - (s.a.y + t / 200 * (s.b.y - s.a.y)))
            for t in range(201)
        )
        assert d <= best + 1e-9

    @given(segments, st.floats(0, 1))
    def test_points_on_segment_have_zero_distance(self, s, t):
        p = P(s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y))
        assert point_segment_distance(p, s) <= 1e-9


class TestCoverage:
    def test_inside(self):
        assert segment_covered_by(S(0.5, 0, 3, 0), P(0, 0), 1)

    def test_outside(self):
        assert not segment_covered_by(S(2, 0, 3, 0), P(0, 0), 1)

    def test_boundary_touch(self):
        assert segment_covered_by(S(3, 0, 4, 0), P(0, 0), 3)

    def test_nonpositive_rho(self):
        with pytest.raises(ValidationError):
            segment_covered_by(S(0, 0, 1, 0), P(0, 0), 0)

    def test_hippodrome_contains(self):
        h = Hippodrome(S(0, 0, 2, 0), 1)
        assert hippodrome_contains(h, P(3, 0))
        assert hippodrome_contains(h, P(1, 0.5))
        assert not hippodrome_contains(h, P(3.01, 0))

    def test_hippodrome_requires_positive_rho(self):
        with pytest.raises(ValidationError):
            Hippodrome(S(0, 0, 1, 0), -1)

    @given(segments, points, radii)
    def test_membership_consistency(self, s, p, r):
        assert hippodrome_contains(Hippodrome(s, r), p) == segment_covered_by(s, p, r)

    def test_tolerance_is_configurable(self):
        h = Hippodrome(S(0, 0, 0, 0), 1)
        assert not hippodrome_contains(h, P(1.001, 0))
        set_tol(0.01)
        assert get_tol() == 0.01
        assert hippodrome_contains(h, P(1.001, 0))

    def test_invalid_tolerance(self):
        with pytest.raises(ValidationError):
            set_tol(float("nan"))


class TestIntersect:
    def test_tangent(self):
        assert hippodromes_intersect(Hippodrome(S(0, 0, 1, 0), 1), Hippodrome(S(3, 0, 4, 0), 1))

    def test_far(self):
        assert not hippodromes_intersect(Hippodrome(S(0, 0, 1, 0), 1), Hippodrome(S(8, 0, 9, 0), 1))

    def test_identity(self):
        h = Hippodrome(S(0, 0, 1, 1), 0.3)
        assert hippodromes_intersect(h, h)

    def test_crossing_segments(self):
        assert segment_distance(S(0, 0, 2, 2), S(0, 2, 2, 0)) == 0

    @given(segments, segments, radii, radii)
    def test_symmetry(self, s1, s2, r1, r2):
        h1, h2 = Hippodrome(s1, r1), Hippodrome(s2, r2)
        assert hippodromes_intersect(h1, h2) == hippodromes_intersect(h2, h1)

    def test_monte_carlo_oracle(self):
        rng = random.Random(11)
        checked = 0
        for _ in range(60):
            s1 = S(*(rng.uniform(0, 6) for _ in range(4)))
            s2 = S(*(rng.uniform(0, 6) for _ in range(4)))
            r1, r2 = rng.uniform(0.2, 1.5), rng.uniform(0.2, 1.5)
            h1, h2 = Hippodrome(s1, r1), Hippodrome(s2, r2)
            gap = segment_distance(s1, s2) - r1 - r2
            if abs(gap) < 0.05:
                continue  # tol-margin cases
            # sample 10^4 points of h1 (uniform over its bbox, rejected outside)
            box = hippodrome_bbox(h1)
            hit = False
            for _ in range(10_000):
                p = P(rng.uniform(box.xmin, box.xmax), rng.uniform(box.ymin, box.ymax))
                if hippodrome_contains(h1, p) and hippodrome_contains(h2, p):
                    hit = True
                    break
            assert hit == hippodromes_intersect(h1, h2)
            checked += 1
        assert checked > 40


class TestBoundaryIntersections:
    def test_tangent_disks(self):
        pts = hippodrome_boundary_intersections(Hippodrome(S(0, 0, 0, 0), 1), Hippodrome(S(2, 0, 2, 0), 1))
        assert len(pts) == 1
        assert math.isclose(pts[0].x, 1) and abs(pts[0].y) < 1e-9

    def test_symmetric_disks(self):
        pts = hippodrome_boundary_intersections(Hippodrome(S(0, 0, 0, 0), 1), Hippodrome(S(1, 0, 1, 0), 1))
        got = sorted((round(p.x, 12), round(p.y, 12)) for p in pts)
        h = round(math.sqrt(3) / 2, 12)
        assert got == [(0.5, -h), (0.5, h)]

    def test_disjoint(self):
        assert hippodrome_boundary_intersections(Hippodrome(S(0, 0, 1, 0), 1), Hippodrome(S(8, 0, 9, 0), 1)) == []

    def test_crossing_capsules(self):
        # a horizontal and a vertical capsule crossing in a plus shape: 4 edge crossings
        pts = hippodrome_boundary_intersections(Hippodrome(S(-3, 0, 3, 0), 1), Hippodrome(S(0, -3, 0, 3), 1))
        got = sorted((round(p.x, 9), round(p.y, 9)) for p in pts)
        assert got == [(-1, -1), (-1, 1), (1, -1), (1, 1)]

    def test_collinear_overlap_reports_end_points(self):
        pts = hippodrome_boundary_intersections(Hippodrome(S(0, 0, 4, 0), 1), Hippodrome(S(2, 0, 6, 0), 1))
        assert pts
        for p in pts:
            assert abs(abs(p.y) - 1) < 1e-9 or abs(point_segment_distance(p, S(0, 0, 4, 0)) - 1) < 1e-9

    @settings(max_examples=300)
    @given(segments, segments, radii, radii)
    def test_points_lie_on_both_boundaries(self, s1, s2, r1, r2):
        h1, h2 = Hippodrome(s1, r1), Hippodrome(s2, r2)
        pts = hippodrome_boundary_intersections(h1, h2)
        assert len(pts) <= 8 or segment_distance(s1, s2) == 0
        eps = 10 * get_tol()
        for p in pts:
            assert abs(point_segment_distance(p, s1) - r1) <= eps * max(1, r1, abs(p.x), abs(p.y))
            assert abs(point_segment_distance(p, s2) - r2) <= eps * max(1, r2, abs(p.x), abs(p.y))

    @given(segments, segments, radii)
    def test_empty_when_disjoint(self, s1, s2, r):
        assume(segment_distance(s1, s2) > 2 * r + 1e-6)
        assert hippodrome_boundary_intersections(Hippodrome(s1, r), Hippodrome(s2, r)) == []


class TestBBoxAndRect:
    def test_bbox_examples(self):
        assert hippodrome_bbox(Hippodrome(S(0, 0, 2, 0), 1)) == Rect(-1, -1, 3, 1)
        assert hippodrome_bbox(Hippodrome(S(5, 5, 5, 5), 2)) == Rect(3, 3, 7, 7)
        assert hippodrome_bbox(Hippodrome(S(0, 0, 0, 3), 0.5)) == Rect(-0.5, -0.5, 0.5, 3.5)

    def test_rect_invariant(self):
        with pytest.raises(ValidationError):
            Rect(1, 0, 0, 1)

    def test_point_must_be_finite(self):
        with pytest.raises(ValidationError):
            Point(float("inf"), 0)

    def test_dedup(self):
        pts = [P(0, 0), P(0, 1e-12), P(1, 0), P(1, 0)]
        assert dedup_points(pts, 1e-9) == [P(0, 0), P(1, 0)]


class TestTwoDisks:
    def test_box_covered(self):
        rho = 1.0
        a, b = two_disk_centers(0, 2 * rho, 0, math.sqrt(3) * rho)
        for i in range(41):
            for j in range(41):
                p = P(2 * rho * i / 40, math.sqrt(3) * rho * j / 40)
                assert min(p.dist(a), p.dist(b)) <= rho + 1e-12
