import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segcover.errors import ParseError, ValidationError
from segcover.geom import Point, Rect, Segment
from segcover.instance import (
    Instance,
    Placement,
    parse_instance,
    parse_placement,
    random_instance,
    serialize_instance,
    serialize_placement,
    serialize_report,
    verify_cover,
)


def inst1(*segs, rho=1.0, w=10.0, h=10.0):
    return Instance(Rect(0, 0, w, h), rho, tuple(Segment.of(*s) for s in segs))


class TestParse:
    def test_minimal_document(self):
        inst = parse_instance('{"region":{"w":10,"h":10},"rho":1,"segments":[[0,1,1,1]]}')
        assert inst.n == 1
        assert inst.segments[0] == Segment.of(0, 1, 1, 1)

    def test_zero_rho(self):
        with pytest.raises(ValidationError) as e:
            parse_instance('{"region":{"w":10,"h":10},"rho":0,"segments":[]}')
        assert e.value.field == "rho"

    def test_segment_outside(self):
        with pytest.raises(ValidationError) as e:
            parse_instance('{"region":{"w":10,"h":10},"rho":1,"segments":[[11,0,1,1]]}')
        assert e.value.field == "segments[0]"

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            parse_instance("{not json")

    def test_wrong_row_shape(self):
        with pytest.raises(ValidationError) as e:
            parse_instance('{"region":{"w":10,"h":10},"rho":1,"segments":[[0,1,1]]}')
        assert e.value.field == "segments[0]"

    def test_non_numeric(self):
        with pytest.raises(ValidationError):
            parse_instance('{"region":{"w":"ten","h":10},"rho":1,"segments":[]}')

    def test_order_preserved(self):
        doc = {"region": {"w": 5, "h": 5}, "rho": 0.5, "segments": [[0, 0, 1, 0], [3, 3, 3, 4], [2, 2, 2, 2]]}
        inst = parse_instance(json.dumps(doc))
        assert [s.as_list() for s in inst.segments] == doc["segments"]


class TestVerify:
    def test_empty_placement(self):
        rep = verify_cover(inst1((0, 1, 1, 1)), Placement(()))
        assert not rep.all_covered
        assert rep.uncovered_indices == [0]

    def test_midpoints(self):
        inst = inst1((0, 1, 1, 1), (5, 5, 9, 9), (3, 3, 3, 3))
        rep = verify_cover(inst, Placement(tuple(s.midpoint for s in inst.segments)))
        assert rep.all_covered and rep.uncovered_indices == []

    def test_far_sensor(self):
        rep = verify_cover(inst1((2, 0, 3, 0)), Placement((Point(0, 0),)))
        assert rep.uncovered_indices == [0]

    def test_report_json(self):
        rep = verify_cover(inst1((2, 0, 3, 0), (0, 0, 1, 0)), Placement((Point(0, 0),)))
        assert json.loads(serialize_report(rep)) == {"all_covered": False, "uncovered": [0]}

    @settings(max_examples=50)
    @given(st.integers(0, 10**6), st.lists(st.tuples(st.floats(0, 20), st.floats(0, 20)), max_size=6))
    def test_monotone(self, seed, extra):
        inst = random_instance(20, 20, 1.5, 8, "arbitrary", 5, seed)
        base = Placement(tuple(Point(x, y) for x, y in extra[:3]))
        more = Placement(base.sensors + tuple(Point(x, y) for x, y in extra[3:]))
        a, b = verify_cover(inst, base), verify_cover(inst, more)
        assert all(cb or not ca for ca, cb in zip(a.covered, b.covered))


class TestRoundTrip:
    @settings(max_examples=60)
    @given(st.integers(0, 10**9), st.sampled_from(["axis-parallel", "arbitrary"]))
    def test_instance(self, seed, orientation):
        inst = random_instance(700, 300, 20, 12, orientation, 250, seed)
        again = parse_instance(serialize_instance(inst))
        assert again == inst
        for s, t in zip(inst.segments, again.segments):
            assert s.as_list() == t.as_list()

    def test_awkward_floats(self):
        inst = inst1((0.1, 1 / 3, math.pi, 2 ** 0.5), rho=1e-7)
        assert parse_instance(serialize_instance(inst)) == inst

    def test_placement(self):
        pl = Placement((Point(0.1, 1 / 3), Point(2, 3)), "exact", 2.0)
        again = parse_placement(serialize_placement(pl))
        assert again.sensors == pl.sensors and again.algorithm == "exact" and again.lower_bound == 2.0

    def test_placement_null_bound(self):
        doc = json.loads(serialize_placement(Placement((), "x")))
        assert doc == {"algorithm": "x", "sensors": [], "lower_bound": None}


class TestRandom:
    def test_empty(self):
        assert random_instance(10, 10, 1, 0).n == 0

    def test_deterministic(self):
        a = random_instance(700, 700, 20, 30, "arbitrary", 300, seed=5)
        b = random_instance(700, 700, 20, 30, "arbitrary", 300, seed=5)
        assert a == b
        assert a != random_instance(700, 700, 20, 30, "arbitrary", 300, seed=6)

    def test_table_scale(self):
        inst = random_instance(700, 700, 20, 30, "axis-parallel", 700, seed=1)
        assert inst.n == 30
        assert all(s.is_horizontal() or s.is_vertical() for s in inst.segments)

    @given(st.integers(0, 10**6))
    def test_arbitrary_lengths(self, seed):
        inst = random_instance(30, 10, 1, 10, "arbitrary", 8, seed)
        assert all(s.length <= 8 + 1e-9 for s in inst.segments)

    def test_infeasible_length(self):
        with pytest.raises(ValidationError):
            random_instance(3, 4, 1, 5, "arbitrary", 6)

    def test_bad_orientation(self):
        with pytest.raises(ValidationError):
            random_instance(3, 4, 1, 5, "diagonal")
