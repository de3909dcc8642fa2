import pytest

from cseqgraph.chromatics import (
    Capture,
    Coloring,
    ExplicitInfinite,
    Finite,
    ImageOverflow,
    MonoEdge,
    NotAThread,
    NotCaptured,
    PaletteExhausted,
    PaletteSpec,
    PreconditionFailed,
    Proper,
    Tail,
    adversary,
    brute_force_chromatic,
    brute_force_chromatic_product,
    brute_force_coloring_number,
    captures_check,
    check_suitable,
    chromatic_number,
    coloring_number,
    extend_suitable,
    interval_ordering,
    neighborhood_witness,
    s_mu_set,
    thread_coloring,
)
from cseqgraph.clubs import full_below, limits_below, points, progression, union
from cseqgraph.csgraph import GraphWindow, build_window, cseq_rule, edge_test, nonrefl_rule
from cseqgraph.cseq import GFilter, build_canonical, build_from_spec, build_full
from cseqgraph.ordinals import ALEPH0, OMEGA, Fin
from cseqgraph.sampling import complete_bipartite
from cseqgraph.windows import Window, explicit_window
from conftest import O

K4 = GraphWindow.from_edges(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)])
C5 = GraphWindow.from_edges(range(5), [(i, (i + 1) % 5) for i in range(5)])
EDGELESS = GraphWindow.from_edges(range(4), [])
EVENS = {"budget": "w", "overrides": [{"at": "w", "club": {"progression": {"step": "2"}}}]}


def proper(g, col):
    return all(col.assign[a] != col.assign[b] for a, b in g.edges)


@pytest.mark.parametrize("g,k", [(K4, 4), (C5, 3), (EDGELESS, 1), (complete_bipartite(2, 3), 2)])
def test_chromatic_number(g, k):
    got, col = chromatic_number(g)
    assert got == k and proper(g, col) and len(col.colors()) == k
    assert brute_force_chromatic(g) == k == brute_force_chromatic_product(g)


@pytest.mark.parametrize("g,k", [(K4, 4), (C5, 3), (EDGELESS, 1)])
def test_coloring_number(g, k):
    got, w = coloring_number(g)
    assert got == k == brute_force_coloring_number(g)
    assert w.revalidate(g) and w.max_back_degree == k - 1


def test_palette_parsing():
    assert PaletteSpec.parse("finite:3") == Finite(3)
    assert PaletteSpec.parse("tail:1") == Tail(1)
    assert PaletteSpec.parse({"explicit": {"start": 0, "step": 2}}) == ExplicitInfinite(0, 2)
    with pytest.raises(ValueError):
        PaletteSpec.parse("rainbow")
    with pytest.raises(PaletteExhausted):
        Finite(2).least_not_in([0, 1])


@pytest.fixture
def evens_rule():
    return cseq_rule(build_from_spec(EVENS))


def test_empty_coloring_is_suitable(evens_rule):
    assert isinstance(check_suitable(evens_rule, Coloring({}), range(10), ALEPH0), Proper)


def test_constant_coloring_has_mono_edge(evens_rule):
    pts = [*range(10), OMEGA]
    cert = check_suitable(evens_rule, Coloring({p: 0 for p in pts}), pts, ALEPH0)
    assert isinstance(cert, MonoEdge) and cert.revalidate(evens_rule, Coloring({p: 0 for p in pts}))


def test_image_overflow(evens_rule):
    pts = [*range(10), OMEGA]
    assign = {p: 0 for p in pts}
    assign.update({2: 1, 4: 2, 6: 3, 8: 4})
    cert = check_suitable(evens_rule, Coloring(assign), pts, Fin(3))
    assert isinstance(cert, ImageOverflow) and cert.gamma == OMEGA
    assert isinstance(check_suitable(evens_rule, Coloring(assign), pts, ALEPH0), Proper)


def _w2_window():
    return explicit_window([*range(9), "w", *[f"w+{i}" for i in range(1, 7)]])


def test_extend_tail_palette():
    vec = build_canonical(O("w*2"))
    W = _w2_window()
    c = extend_suitable(vec, Coloring({}), O("w*2"), W, Tail(1))
    assert min(c.colors()) >= 1 and len(c.assign) == len(W)
    g = build_window(cseq_rule(vec), W)
    assert proper(g, c)
    assert isinstance(check_suitable(vec, c, W, ALEPH0), Proper)


def test_extend_fully_colored_is_identity():
    vec = build_canonical(O("w*2"))
    W = _w2_window()
    c = extend_suitable(vec, Coloring({}), O("w*2"), W, Tail(1))
    again = extend_suitable(vec, c, O("w*2"), W, Tail(1))
    assert again.assign == c.assign


def test_extend_explicit_evens():
    c = extend_suitable(build_canonical(O("w*2")), Coloring({}), O("w*2"), _w2_window(), ExplicitInfinite(0, 2))
    assert all(v % 2 == 0 for v in c.colors())


def test_thread_coloring_full():
    vec = build_full(O("w^2"))
    W = Window(0, O("w^2+1"), 4)
    c = thread_coloring(vec, full_below(O("w^2")), W)
    assert proper(build_window(cseq_rule(vec), W), c)


def test_thread_coloring_rejects_non_thread():
    with pytest.raises(NotAThread):
        thread_coloring(build_canonical(O("w^2")), full_below(O("w^2")), Window(0, O("w^2+1"), 4))


def test_capture_evens():
    evens = progression(0, 2, 0)
    cert = captures_check(evens, OMEGA, [evens], 1)
    assert isinstance(cert, Capture)
    assert cert.pairs == [(0, O(0), O(0), O(2))] and cert.revalidate(evens, [evens])


def test_capture_first_clause():
    cert = captures_check(progression(0, 2, 0), OMEGA, [progression(0, 2, 1)], 1)
    assert isinstance(cert, NotCaptured) and cert.exact


def test_capture_full_targets():
    vec = build_canonical(O("w^2"))
    full = full_below(O("w^2"))
    assert isinstance(captures_check(vec, O("w*3"), [full, full], 2), Capture)


def test_adversary_trivial_cases(evens_rule):
    pts = [*range(10), OMEGA]
    e = adversary(evens_rule, Coloring({p: 0 for p in pts}), pts, 2)
    assert isinstance(e, MonoEdge) and edge_test(evens_rule, e.a, e.b)
    c = extend_suitable(evens_rule, Coloring({}), O("w+1"), pts, Tail(0))
    assert adversary(evens_rule, c, pts, 2) is None
    with pytest.raises(PreconditionFailed):
        adversary(evens_rule, Coloring({}), pts, 2)


def test_adversary_replay_on_captured_window():
    spec = {"budget": "w^2", "overrides": [{"at": "w^2", "club": {"union": [["w+1", "w*2+1"], {"progression": {"base": "w*3", "step": "w", "offset": "2"}}]}}]}
    rule = cseq_rule(build_from_spec(spec))
    pts = ["0", "w", "w+1", "w*2", "w*2+1", "w*3", "w*3+2", "w*4", "w*4+2", "w*5", "w*5+1", "w*5+2", "w^2"]
    colors = {"w+1": 0, "w*2+1": 0, "w*5+1": 0, "w^2": 0, "w*3+2": 1, "w*4+2": 1, "w*5+2": 1}
    c = Coloring({p: colors.get(p, 2) for p in pts})
    trace = []
    e = adversary(rule, c, explicit_window(pts), 2, trace)
    assert e.route == "replay" and trace[0].delta == O("w^2")
    assert edge_test(rule, e.a, e.b) and c.assign[e.a] == c.assign[e.b]


def test_s_mu_star():
    star = GraphWindow.from_edges([*range(6), OMEGA], [(n, OMEGA) for n in range(6)])
    assert O(4) in s_mu_set(star, 3)
    assert s_mu_set(EDGELESS, 1) == []


def test_k34_witness():
    g = complete_bipartite(3, 4)
    w = neighborhood_witness(g, 3)
    assert [int(a) for a in w.A] == [0, 1, 2] and [int(b) for b in w.B] == [3, 4, 5, 6]
    assert w.revalidate(g) and coloring_number(g)[0] == 4 > 3
    assert neighborhood_witness(EDGELESS, 1) is None


def test_interval_ordering():
    vec = build_canonical(O("w*3"))
    rule = nonrefl_rule(vec, GFilter("set", limits_below(O("w*3"))))
    D = union(points([0]), progression(0, OMEGA, 1))
    W = Window(0, O("w*3"), 5)
    w = interval_ordering(rule, D, W)
    assert w.revalidate(build_window(rule, W))
    starts = [D.max_below(v + O(1)) for v in w.order]
    assert starts == sorted(starts)
    # each vertex sees at most its club's points from earlier intervals
    assert w.max_back_degree == 1


def test_interval_ordering_guard():
    rule = nonrefl_rule(build_canonical(O("w*3")), GFilter("limits"))
    with pytest.raises(PreconditionFailed):
        interval_ordering(rule, full_below(O("w*3")), Window(0, O("w*3"), 4))
