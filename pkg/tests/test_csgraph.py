import json
from pathlib import Path

import pytest

from cseqgraph.csgraph import (
    GraphWindow,
    build_window,
    cseq_rule,
    edge_test,
    export_graph,
    n_set,
    nonrefl_rule,
    parse_adjacency_json,
    verify_in_neighborhood,
    verify_triangle_free,
)
from cseqgraph.cseq import GFilter, build_canonical, build_from_spec
from cseqgraph.ordinals import OMEGA
from cseqgraph.windows import Window
from conftest import O

GOLDEN = Path(__file__).parent / "golden"
EVENS_AT_OMEGA = {"budget": "w", "overrides": [{"at": "w", "club": {"progression": {"step": "2"}}}]}


@pytest.fixture
def rule():
    return cseq_rule(build_from_spec(EVENS_AT_OMEGA))


def test_edge_test(rule):
    assert edge_test(rule, 2, OMEGA)
    assert not edge_test(rule, 0, OMEGA)


def test_n_set(rule):
    assert n_set(rule, OMEGA, range(10)) == [O(k) for k in (2, 4, 6, 8)]


def test_build_window_edges(rule):
    g = build_window(rule, [2, 4, OMEGA])
    assert g.sorted_edges() == [(O(2), OMEGA), (O(4), OMEGA)]


def test_build_window_trivial(rule):
    assert build_window(rule, [OMEGA]).edges == frozenset()
    assert build_window(rule, []).vertices == ()


def test_triangle_detector():
    k3 = GraphWindow.from_edges([0, 1, 2], [(0, 1), (1, 2), (0, 2)], {"rule": "hand-built"})
    assert sorted(verify_triangle_free(k3)) == [O(0), O(1), O(2)]
    assert verify_triangle_free(GraphWindow.from_edges([], [])) is None


def test_in_neighborhood(rule):
    assert verify_in_neighborhood(rule, OMEGA, range(10))
    assert verify_in_neighborhood(rule, O(1), range(10))


def test_nonrefl_lower_neighborhood():
    vec = build_canonical(O("w*3"))
    r = nonrefl_rule(vec, GFilter("limits"))
    W = Window(0, O("w*3+1"), 5)
    g = build_window(r, W)
    b = O("w*2")
    assert g.lower_neighbors(b) == vec.club(b).members_in(W.points)
    assert verify_in_neighborhood(r, b, W)
    assert g.lower_neighbors(O(3)) == []


def test_dot_golden(rule):
    g = build_window(rule, [*range(5), OMEGA])
    assert export_graph(g, "dot") == (GOLDEN / "evens_window.dot").read_text()


def test_empty_dot(rule):
    assert export_graph(build_window(rule, []), "dot") == "graph G {\n}\n"


def test_json_golden_and_roundtrip(rule):
    g = build_window(rule, [2, 4, OMEGA])
    text = export_graph(g, "json")
    assert text == (GOLDEN / "three_vertices.json").read_text()
    back = parse_adjacency_json(text)
    assert back.edges == g.edges and back.vertices == g.vertices
    assert export_graph(g, "json") == text


def test_adjacency_mismatch_rejected():
    doc = {"vertices": ["0", "1"], "adjacency": {"0": ["1"], "1": ["0"]}, "edges": []}
    with pytest.raises(ValueError):
        parse_adjacency_json(json.dumps(doc))
