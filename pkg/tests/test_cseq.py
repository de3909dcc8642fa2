import pytest

from cseqgraph.clubs import full_below, progression, set_equal
from cseqgraph.cseq import (
    BudgetExceeded,
    ClubViolation,
    SpecError,
    build_canonical,
    build_from_spec,
    build_full,
    check_bounded,
    check_coherence,
    support_of,
    thread_check,
)
from cseqgraph.ordinals import ALEPH0, OMEGA
from cseqgraph.windows import Window
from conftest import O

W2 = O("w^2")
MIXED = {"budget": "w^2", "overrides": [{"at": "w*2", "club": {"full": "w*2"}}, {"at": "w", "club": {"progression": {"step": "2"}}}]}


def first(s, n=4):
    return [str(p) for p in s.members_in(Window(0, O("w^2"), 6).points)[:n]]


def test_canonical_omega_two():
    v = build_canonical(O("w*2"))
    assert first(v.club(OMEGA)) == ["0", "1", "2", "3"]
    assert first(v.club(O("w*2"))) == ["w", "w+1", "w+2", "w+3"]


def test_canonical_is_vacuously_coherent():
    rep = check_coherence(build_canonical(W2), "sq", Window(0, W2, 6))
    assert rep.ok and rep.checked_pairs == 0


def test_full_is_coherent():
    rep = check_coherence(build_full(W2), "sq", Window(0, W2, 6))
    assert rep.ok and rep.checked_pairs > 0


def test_spec_with_evens_accepted():
    v = build_from_spec({"budget": "w", "overrides": [{"at": "w", "club": {"progression": {"step": "2"}}}]})
    assert set_equal(v.club(OMEGA), progression(0, 2, 0))


def test_spec_not_cofinal_rejected():
    with pytest.raises(ClubViolation):
        build_from_spec({"budget": "w", "overrides": [{"at": "w", "club": [0, 1, 2]}]})


def test_spec_errors_cite_paths():
    with pytest.raises(SpecError) as err:
        build_from_spec({"budget": "w*2", "overrides": [{"at": "5", "club": [1]}]})
    assert "$.overrides[0].at" in str(err.value)
    with pytest.raises(BudgetExceeded):
        build_from_spec({"budget": "w^(w^2)"})


def test_mixed_table_violation():
    rep = check_coherence(build_from_spec(MIXED), "sq", Window(0, W2, 6))
    assert rep.violations == [(O("w*2"), OMEGA)]


def test_canonical_bounded():
    assert check_bounded(build_canonical(W2), ALEPH0, Window(0, W2, 6)).ok


def test_support():
    W = Window(0, W2, 6)
    lims = [p for p in W.points if p.is_limit()]
    assert support_of(build_full(W2), W) == lims
    assert support_of(build_canonical(W2), W) == lims
    assert O("w*2") not in support_of(build_from_spec(MIXED), W)


def test_thread_check():
    W = Window(0, W2, 6)
    assert thread_check(full_below(W2), build_full(W2), W) is None
    assert thread_check(full_below(W2), build_canonical(W2), W) == O("w*2")
    assert thread_check(progression(0, 2, 0), build_canonical(W2), W) is None


def test_successor_convention():
    v = build_canonical(O("w"))
    assert v.club(O(4)).to_list() == [O(3)]
    assert v.club(O(0)).is_empty()
