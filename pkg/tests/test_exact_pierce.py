import itertools
import random

import pytest

from segcover.errors import ResourceLimitError
from segcover.exact_pierce import PierceProblem, candidate_points, min_pierce, solve_exact
from segcover.geom import Hippodrome, Point, Rect, Segment, hippodrome_contains
from segcover.instance import Instance, random_instance, verify_cover

R = Rect(-10, -10, 10, 10)


def H(x1, y1, x2, y2, rho=1.0):
    return Hippodrome(Segment.of(x1, y1, x2, y2), rho)


def pierces(points, hs):
    return all(any(hippodrome_contains(h, p) for p in points) for h in hs)


class TestCandidates:
    def test_disjoint_witnesses(self):
        pts = candidate_points([H(0, 0, 1, 0), H(5, 5, 6, 5)], Rect(0, 0, 6, 5))
        # midpoints plus region-edge crossings and corners; the midpoints are there
        assert Point(0.5, 0) in pts and Point(5.5, 5) in pts
        assert not any(hippodrome_contains(H(0, 0, 1, 0), p) and hippodrome_contains(H(5, 5, 6, 5), p) for p in pts)

    def test_tangent_disks(self):
        pts = candidate_points([H(0, 0, 0, 0), H(2, 0, 2, 0)], R)
        for q in (Point(0, 0), Point(2, 0)):
            assert q in pts
        assert any(abs(p.x - 1) < 1e-9 and abs(p.y) < 1e-9 for p in pts)

    def test_counting_bound(self):
        rng = random.Random(2)
        hs = [H(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(6)]
        big = Rect(-100, -100, 100, 100)
        pts = candidate_points(hs, big)
        k = len(hs)
        assert len(pts) <= 8 * k * (k - 1) // 2 + k + 4


class TestMinPierce:
    def test_empty(self):
        pl = min_pierce(PierceProblem([], R))
        assert pl is not None and len(pl) == 0

    def test_three_disjoint(self):
        hs = [H(0, 0, 1, 0), H(5, 0, 6, 0), H(0, 5, 1, 5)]
        pl = min_pierce(PierceProblem(hs, R))
        assert len(pl) == 3 and pierces(pl.sensors, hs)

    def test_overlap_pair(self):
        hs = [H(0, 0, 2, 0), H(1, 1, 1, 3)]
        pl = min_pierce(PierceProblem(hs, R))
        assert len(pl) == 1 and pierces(pl.sensors, hs)

    def test_cap_infeasible(self):
        hs = [H(0, 0, 1, 0), H(5, 0, 6, 0), H(0, 5, 1, 5)]
        assert min_pierce(PierceProblem(hs, R, candidate_cap=2)) is None

    def test_work_limit(self):
        inst = random_instance(60, 60, 1, 30, "arbitrary", 10, seed=1)
        with pytest.raises(ResourceLimitError):
            solve_exact(inst, work_limit=2)

    def test_deterministic(self):
        inst = random_instance(20, 20, 1.5, 10, "arbitrary", 6, seed=3)
        assert solve_exact(inst).sensors == solve_exact(inst).sensors

    def test_sensors_in_region(self):
        inst = Instance(Rect(0, 0, 4, 4), 1.0, (Segment.of(0, 0, 0, 0), Segment.of(4, 4, 4, 4)))
        pl = solve_exact(inst)
        assert len(pl) == 2 and all(inst.region.contains(p) for p in pl.sensors)

    @pytest.mark.parametrize("seed", range(25))
    def test_minimality_exhaustive(self, seed):
        # no subset of the candidates smaller than the answer pierces everything
        rng = random.Random(seed)
        k = rng.randint(1, 6)
        inst = random_instance(8, 8, 1.0, k, "arbitrary", 4, seed)
        hs = inst.hippodromes()
        pl = solve_exact(inst)
        assert verify_cover(inst, pl).all_covered
        cands = candidate_points(hs, inst.region)
        for size in range(len(pl)):
            for sub in itertools.combinations(cands, size):
                assert not pierces(sub, hs)

    def test_sensor_count_equivalence(self):
        inst = random_instance(15, 15, 1.2, 8, "arbitrary", 5, seed=21)
        pl = solve_exact(inst)
        assert pierces(pl.sensors, inst.hippodromes()) == verify_cover(inst, pl).all_covered
