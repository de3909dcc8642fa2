import random

import pytest

from cseqgraph.clubs import full_below, points, progression, successors_below, tail_from
from cseqgraph.cseq import BudgetExceeded, check_coherence
from cseqgraph.forcing import (
    EMPTY_CONDITION,
    Condition,
    PreconditionFailed,
    comparable,
    extension_adversary,
    extension_holds,
    extension_lemma,
    generic_sample,
    incomparable_adversary,
    leq,
    play_game,
    project_star,
    recertify,
    tree_like,
    validate,
)
from cseqgraph.ordinals import ALEPH0, OMEGA, ONE
from cseqgraph.windows import Window
from conftest import O

EVENS = progression(0, 2, 0)
W2, W3 = O("w^2"), O("w^3")


@pytest.fixture
def p():
    return Condition.make("w", {"w": EVENS})


def test_validate_evens(p):
    assert validate(p).ok


def test_validate_successor_clause():
    rep = validate(Condition.make("w", {"w": EVENS, 3: points([0, 2])}))
    assert rep.problems == [{"clause": "successor", "at": "3", "detail": "C_3 must be {2}"}]


def test_validate_coherence_clause():
    rep = validate(Condition.make("w*2", {"w*2": full_below(O("w*2")), "w": EVENS}))
    assert rep.problems == [{"clause": "coherence", "at": "w*2", "witness": "w"}]


def test_extension_example(p):
    A = progression(OMEGA, OMEGA, ONE)
    q = extension_lemma(p, A, 2, W2)
    assert extension_holds(p, q, A, 2) == []
    assert validate(q).ok and leq(q, p)


def test_extension_unrestricted(p):
    A = tail_from(full_below(W3), OMEGA + ONE)
    rng = random.Random(0)
    for _ in range(20):
        q = extension_lemma(p, A, 1, W3, rng)
        assert extension_holds(p, q, A, 1) == []


def test_extension_bounded_target(p):
    with pytest.raises(BudgetExceeded):
        extension_lemma(p, points([1, 2]), 1, W2)


def test_project_star(p):
    s1 = Condition.make("w*2", {"w": EVENS})
    s2 = project_star(p, s1)
    assert validate(s2).ok and leq(s2, p, star=True) and leq(s2, s1)
    top = s2.top_club()
    assert top.contains(O(4)) and top.contains(OMEGA) and top.contains(O("w*2+3")) and not top.contains(O(3))


def test_project_star_same(p):
    s2 = project_star(p, p)
    top = s2.top_club()
    assert top.contains(OMEGA) and top.contains(O("w+5")) and top.contains(O(6)) and not top.contains(O(5))


def test_project_star_guard(p):
    with pytest.raises(PreconditionFailed):
        project_star(Condition.make("w*2", {"w*2": full_below(O("w*2"))}), p)


def test_leq_and_tree_like(p):
    q = extension_lemma(p, full_below(W2), 1, W2)
    assert leq(q, p) and not leq(p, q) and comparable(p, q)
    assert leq(p, EMPTY_CONDITION)
    assert tree_like(p, q, q)


TARGETS = [full_below(W3), successors_below(W3), progression(0, OMEGA, 2)]


@pytest.mark.parametrize("length", ["6", "w", "w+1", "w*2"])
def test_master_chain_wins(length):
    tr = play_game(O(length), extension_adversary(TARGETS, W3), seed=1)
    assert tr.outcome == "IIWins"
    assert all(m.legal for m in tr.moves) and len(tr.moves) <= 40


def test_limit_move_validates():
    tr = play_game(OMEGA, extension_adversary(TARGETS, W3), seed=2)
    last = tr.moves[-1]
    assert last.stage == OMEGA and last.player == "II" and validate(last.condition).ok


def test_incomparable_adversary_loses():
    tr = play_game(O("w*2"), incomparable_adversary(W3, after=3))
    assert tr.outcome == "ILoses" and tr.at == O(3)


def test_game_length_cap():
    with pytest.raises(PreconditionFailed):
        play_game(O("w*3"), extension_adversary(TARGETS, W3))


def test_generic_sample_captures():
    targets = [successors_below(W2), progression(0, OMEGA, 2)]
    res = generic_sample(W2, targets, sigma=2, seed=3)
    assert res.capture_log and recertify(res, targets) == []
    assert check_coherence(res.vec, "sq_chi", Window(0, W2 + ONE, 6), ALEPH0).ok
    assert validate(res.condition).ok


def test_generic_sample_without_tasks():
    res = generic_sample(W2, [], seed=0)
    assert res.capture_log == [] and validate(res.condition).ok
    assert check_coherence(res.vec, "sq_chi", Window(0, W2 + ONE, 5), ALEPH0).ok


def test_condition_json_roundtrip(p):
    q = extension_lemma(p, successors_below(W2), 2, W2)
    back = Condition.from_json(q.to_json())
    assert back.to_json() == q.to_json() and leq(back, q) and leq(q, back)
