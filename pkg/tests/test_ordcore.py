import pytest

from cseqgraph.ordcore import (
    ALEPH0,
    OMEGA,
    Cofinality,
    Fin,
    OrdinalParseError,
    acc,
    closure,
    cofinality,
    full_below,
    is_club_in,
    nacc,
    ord_add,
    ord_cmp,
    ord_mul,
    parse_ordinal,
    points,
    progression,
    rel_sq,
    rel_sq_chi,
    rel_sq_x,
    relation_holds,
    set_equal,
    suc_sigma,
    union,
)
from conftest import O


def test_add_successor():
    assert ord_add(OMEGA, 1) == O("w+1")


def test_add_left_absorption():
    assert ord_add(1, OMEGA) == OMEGA


def test_mul_then_add_normalizes():
    assert ord_add(ord_mul(OMEGA, 2), OMEGA) == O("w*3")


def test_compare():
    assert ord_cmp(O("w^2"), O("w*5+3")) > 0
    assert ord_cmp(3, 3) == 0
    assert ord_cmp(O("w"), O("w+1")) < 0


@pytest.mark.parametrize("text,cf", [("0", Cofinality.ZERO), ("5", Cofinality.ONE), ("w^2", Cofinality.OMEGA), ("w*3+1", Cofinality.ONE)])
def test_cofinality(text, cf):
    assert cofinality(O(text)) == cf


def test_parser_roundtrip_and_errors():
    for t in ["0", "7", "w", "w+1", "w*2+3", "w^2", "w^3*2+w*4+1", "w^(w)"]:
        assert str(parse_ordinal(t)) == t or parse_ordinal(str(parse_ordinal(t))) == parse_ordinal(t)
    with pytest.raises(OrdinalParseError) as err:
        parse_ordinal("w+$")
    assert "position" in str(err.value)


def test_acc_of_evens_with_omega():
    s = union(progression(0, 2, 0), points([OMEGA]))
    a = acc(s)
    assert a.members_in([O(k) for k in range(10)] + [OMEGA]) == [OMEGA]


def test_acc_of_finite_set_is_empty():
    assert acc(points([1, 5, 9])).is_empty()


def test_suc_sigma_two_on_evens():
    assert suc_sigma(progression(0, 2, 0), 2).to_list() == [O(2), O(4)]


def test_nacc_and_closure():
    s = progression(0, OMEGA, 0)  # 0, w, w*2, ...
    assert set_equal(closure(s), s)
    assert nacc(full_below(O("w*2"))).contains(O(5))
    assert not nacc(full_below(O("w*2"))).contains(OMEGA)


def test_club_check():
    assert is_club_in(progression(0, 2, 0), OMEGA)[0]
    ok, reason = is_club_in(points([0, 1, 2]), OMEGA)
    assert not ok and "cofinal" in reason


def test_rel_sq_initial_segment():
    assert rel_sq(points([0, 2]), points([0, 2, 4, 6]))
    assert not rel_sq(points([1]), points([0, 2]))


def test_rel_sq_x_successor_sup():
    assert rel_sq_x(points([3]), points([5, 9]), ALEPH0)


def test_rel_sq_chi_small_otp_with_successor_naccs():
    c = points([1, 3])
    assert rel_sq_chi(points([2]), c, ALEPH0)
    assert not rel_sq_chi(points([2]), c, Fin(2))


def test_relation_holds_needs_chi():
    with pytest.raises(ValueError):
        relation_holds("sq_chi", points([0]), points([0]))
    assert relation_holds("sq", points([0]), points([0, 1]))
