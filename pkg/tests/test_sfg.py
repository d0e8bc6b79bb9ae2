import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vanradix.complexity import Arithmetic, measured_count
from vanradix.core import make_spec
from vanradix.exceptions import EmptyGraph, NotRealizable, SpecMismatch
from vanradix.sfg import NodeKind, SfgGraph, build_sfg, export_dot, to_json
from vanradix.transform import TransformKind, transform

from conftest import random_complex, thetas

CW_KINDS = [TransformKind.VANC, TransformKind.VANCR]
D8 = math.sqrt(2) / 2 * (1 - 1j)


def dashed_edges(dot):
    return [line for line in dot.splitlines() if "style=dashed" in line]


class TestBuild:
    def test_two_point(self):
        g = build_sfg("vanc", make_spec(2, 0, 1, "cw"))
        assert g.count(NodeKind.INPUT) == 2
        assert g.adder_count == 2
        assert g.gdb_count == 0
        assert len(dashed_edges(export_dot(g))) == 1

    def test_eight_point_contains_d8(self):
        g = build_sfg("vanc", make_spec(8, 0, 1, "cw"))
        assert min(abs(w - D8) for w in g.weights()) <= 1e-15

    @pytest.mark.parametrize("kind", ["vancc", "vanccr"])
    def test_counterclockwise_not_realizable(self, kind):
        with pytest.raises(NotRealizable):
            build_sfg(kind, make_spec(8, 0.3, 1, "ccw"))

    def test_radius_on_vanc_rejected(self):
        with pytest.raises(SpecMismatch):
            build_sfg("vanc", make_spec(8, 0.3, 2, "cw"))

    def test_invariants(self):
        build_sfg("vancr", make_spec(32, 1.1, 1.2, "cw")).check_invariants()

    def test_radius_gains_labelled(self):
        g = build_sfg("vancr", make_spec(8, 0.4, 2, "cw"))
        gains = [node for node in g.nodes if node.kind is NodeKind.GAIN]
        # upper half r**1..r**3 are plain gains; the lower half rides on delays
        assert len(gains) == 3
        assert sum(node.gain is not None for node in g.nodes) == 4

    def test_one_stage_per_factor(self):
        g = build_sfg("vanc", make_spec(16, 0.2, 1, "cw"))
        names = [s.name for s in g.stages]
        assert names[0] == "input" and names[-1] == "output"
        assert names.count("butterfly[1]") == 1

    def test_batch_evaluation(self, rng):
        spec = make_spec(16, 0.8, 1.1, "cw")
        z = random_complex(rng, 3, 16)
        np.testing.assert_array_equal(build_sfg("vancr", spec).evaluate(z), transform("vancr", z, spec))


class TestExport:
    def test_empty_graph(self):
        empty = SfgGraph("vanc", 2, (), (), ())
        with pytest.raises(EmptyGraph):
            export_dot(empty)
        with pytest.raises(EmptyGraph):
            to_json(empty)

    def test_dot_is_byte_identical(self):
        spec = make_spec(8, 0.3, 1, "cw")
        assert export_dot(build_sfg("vanc", spec)) == export_dot(build_sfg("vanc", spec))

    def test_dot_header(self):
        text = export_dot(build_sfg("vanc", make_spec(4, 0, 1, "cw")))
        assert text.startswith('digraph "vanc_4" {') and text.rstrip().endswith("}")

    def test_json_schema(self):
        g = build_sfg("vancr", make_spec(8, 0.3, 1.5, "cw"))
        doc = json.loads(to_json(g))
        assert {"nodes", "edges", "stages"} <= set(doc)
        assert len(doc["nodes"]) == len(g.nodes)
        assert {e["weight"] if isinstance(e["weight"], str) else "complex" for e in doc["edges"]} <= {
            "+1", "-1", "complex"}
        gains = [n for n in doc["nodes"] if "gain" in n]
        assert gains and all(n["kind"] in ("gain", "delay") for n in gains)
        covered = sorted(i for s in doc["stages"] for i in s["nodes"])
        assert covered == list(range(len(g.nodes)))

    def test_json_weights_round_trip(self):
        g = build_sfg("vanc", make_spec(8, 0, 1, "cw"))
        doc = json.loads(to_json(g))
        complex_weights = [complex(e["weight"]["re"], e["weight"]["im"]) for e in doc["edges"]
                           if isinstance(e["weight"], dict)]
        assert complex_weights == [complex(w) for w in g.weights()]


@pytest.mark.property
@given(kind=st.sampled_from(CW_KINDS), t=st.integers(1, 7), theta=thetas,
       radius=st.floats(1.0, 2.0), seed=st.integers(0, 2**32 - 1))
def test_S1_dataflow_exact(kind, t, theta, radius, seed):
    n = 2**t
    spec = make_spec(n, theta, radius if kind.allows_radius else 1.0, "cw")
    z = random_complex(np.random.default_rng(seed), n)
    np.testing.assert_array_equal(build_sfg(kind, spec).evaluate(z), transform(kind, z, spec))


@pytest.mark.property
@given(kind=st.sampled_from(CW_KINDS), t=st.integers(1, 9), theta=st.floats(0.01, 3.1),
       radius=st.floats(1.01, 2.0))
def test_S2_gdb_count(kind, t, theta, radius):
    n = 2**t
    spec = make_spec(n, theta, radius if kind.allows_radius else 1.0, "cw")
    g = build_sfg(kind, spec)
    g.check_invariants()
    count = measured_count(kind, spec, Arithmetic.COMPLEX)
    assert g.gdb_count == count.multiplications
    assert g.adder_count == count.additions


@pytest.mark.property
@given(kind=st.sampled_from(CW_KINDS), t=st.integers(1, 6), theta=thetas, radius=st.floats(1.0, 2.0))
def test_S3_export_deterministic(kind, t, theta, radius):
    spec = make_spec(2**t, theta, radius if kind.allows_radius else 1.0, "cw")
    assert export_dot(build_sfg(kind, spec)) == export_dot(build_sfg(kind, spec))
    assert to_json(build_sfg(kind, spec)) == to_json(build_sfg(kind, spec))
