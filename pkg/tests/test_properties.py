"""Property tests over generated ordinals, graphs and C-sequences."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from cseqgraph.chromatics import brute_force_chromatic, chromatic_number, coloring_number
from cseqgraph.csgraph import GraphWindow, build_window, cseq_rule, verify_in_neighborhood, verify_triangle_free
from cseqgraph.forcing import extension_holds, extension_lemma, leq, project_star, validate
from cseqgraph.ordinals import Ordinal, ord_add, parse_ordinal
from cseqgraph.sampling import random_cofinal, random_cseq, random_window
from cseqgraph.suites import _random_condition

terms = st.lists(st.tuples(st.integers(0, 3), st.integers(1, 4)), max_size=3)


@st.composite
def ordinals(draw):
    ts = draw(terms)
    ts = sorted({e: c for e, c in ts}.items(), reverse=True)
    return Ordinal(tuple((Ordinal.of(e), c) for e, c in ts))


@given(ordinals(), ordinals(), ordinals())
def test_addition_is_associative(a, b, c):
    assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))


@given(ordinals(), ordinals())
def test_addition_is_monotone_on_the_right(a, b):
    assert ord_add(a, b) >= a
    if b.terms:
        assert ord_add(a, b) > a


@given(ordinals())
def test_print_parse_roundtrip(a):
    assert parse_ordinal(str(a)) == a


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return GraphWindow.from_edges(range(n), edges)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_chr_matches_oracle_and_is_below_col(g):
    k, col = chromatic_number(g)
    assert k == brute_force_chromatic(g)
    assert k <= coloring_number(g)[0]
    assert all(col.assign[a] != col.assign[b] for a, b in g.edges)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_window_graphs_are_triangle_free(seed):
    rng = random.Random(seed)
    vec = random_cseq(rng)
    w = random_window(rng, vec.budget, 80)
    rule = cseq_rule(vec)
    g = build_window(rule, w)
    assert verify_triangle_free(g) is None
    assert all(verify_in_neighborhood(rule, b, w, g) for b in g.vertices)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_extension_and_projection(seed, sigma):
    rng = random.Random(seed)
    budget = parse_ordinal("w^3")
    p = _random_condition(rng)
    A = random_cofinal(rng, budget)
    q = extension_lemma(p, A, sigma, budget, rng)
    assert extension_holds(p, q, A, sigma) == []
    s2 = project_star(p, q)
    assert validate(s2).ok and leq(s2, p, star=True) and leq(s2, q)
