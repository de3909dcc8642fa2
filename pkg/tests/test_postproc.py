from cseqgraph.clubs import EMPTY, acc, closure, full_below, points, progression, set_equal, union
from cseqgraph.ordinals import OMEGA, ZERO
from cseqgraph.postproc import (
    BFn,
    Compose,
    DiamondKit,
    PostprocFn,
    Predictor,
    Xi,
    ZFamily,
    ZFn,
    g_z,
    in_e,
    kit_h,
    kit_n,
    kit_phi_rho,
    kit_phi_theta,
    pair,
    phi_b,
    phi_xi,
    phi_z,
    unpair,
    verify_postproc,
)
from cseqgraph.windows import Window
from conftest import O

EVENS = progression(0, 2, 0)
ODDS = progression(0, 2, 1)


def first(s, n=5):
    return [int(p) for p in s.members_in([O(k) for k in range(40)])[:n]]


def test_phi_xi_drops_below_x_xi():
    assert first(phi_xi(EVENS, 2)) == [4, 6, 8, 10, 12]


def test_phi_xi_short_and_zero():
    x = closure(union(points([1, 3]), progression(OMEGA, 1, 0)))
    assert phi_xi(points([1, 3]), 5) is points([1, 3])
    assert set_equal(phi_xi(EVENS, 0), EVENS)
    assert phi_xi(x, 0).min() == O(1)


def test_phi_b_cofinal_branch():
    assert first(phi_b(EVENS, progression(0, 4, 0))) == [0, 4, 8, 12, 16]


def test_phi_b_bounded_branch():
    assert first(phi_b(EVENS, points([0, 2]))) == [2, 4, 6, 8, 10]


def test_phi_b_superset_is_identity():
    assert set_equal(phi_b(EVENS, full_below(OMEGA)), EVENS)


def test_g_z_odds():
    g = g_z(EVENS, ZFamily.of(ODDS), range(8))
    assert {int(k): int(v) for k, v in g.items()} == {0: 0, 2: 1, 4: 3, 6: 5}


def test_g_z_empty_is_identity():
    assert phi_z(EVENS, ZFamily.of()) is EVENS


def test_phi_z_acc_preserving():
    x = closure(union(EVENS, progression(OMEGA, 2, 0)))
    x = closure(union(x, progression(0, OMEGA, 0)))
    y = phi_z(x, ZFamily.of(ODDS))
    assert set_equal(acc(y), acc(x))
    rep = verify_postproc(ZFn(ZFamily.of(ODDS)), [(x, Window(0, O("w*3"), 6))])
    assert rep.ok and rep.acc_preserving


def test_x_dependent_family_breaks_coherence():
    x = closure(union(EVENS, progression(OMEGA, 2, 0)))
    bad = PostprocFn("zdep", lambda xx, b: full_below(b) if xx.otp() > OMEGA else EMPTY)
    rep = verify_postproc(bad, [(x, Window(0, O("w*2"), 8))])
    assert not rep.ok and rep.violations[0]["clause"] == "coherence"


def test_verifier_accepts_basic_families():
    x = closure(union(EVENS, progression(OMEGA, 3, 1)))
    W = Window(0, O("w*2"), 6)
    for f in [Xi(2), Xi("w"), BFn(ODDS), ZFn(ZFamily.of(ODDS, {O(4): points([1, 2])})), Compose(Xi(1), BFn(EVENS))]:
        assert verify_postproc(f, [(x, W)]).ok, f.describe()


def test_pairing_is_a_bijection_on_small_block():
    seen = {pair(a, b) for a in range(6) for b in range(6)}
    assert len(seen) == 36
    for a in range(4):
        for b in range(4):
            assert unpair(pair(a, b)) == (O(a), O(b))
    assert in_e(ZERO) and in_e(O(1)) and in_e(O("w^2")) and not in_e(O(2))


def test_kit_n_empty_predictor():
    kit = DiamondKit(Predictor(default=()))
    x = closure(progression(1, 1, 0))
    assert x.min() == O(1) and kit_n(x, kit) == []


def test_kit_n_full_predictor():
    kit = DiamondKit()
    x = full_below(O("w^2*2"))
    n = kit_n(x, kit)
    assert O("w") not in n  # w is a limit of x, hence not in nacc(x)
    assert O(1) in n


def test_kit_h_theta_cycles():
    kit = DiamondKit()
    x = full_below(O("w^2*2"))
    h = kit_h(x, kit, ("theta", 3), Window(0, O("w^2*2"), 3))
    vals = [h[b] for b in sorted(h)]
    assert set(vals) <= {0, 1, 2} and vals[:3] == [0, 1, 2]


def test_kit_outputs_pass_axioms():
    kit = DiamondKit(rho=OMEGA)
    x = full_below(O("w^2*2"))
    W = Window(0, O("w^2*2"), 4)
    assert verify_postproc(PostprocFn("kit_rho", kit), [(x, W)]).ok
    assert verify_postproc(PostprocFn("kit_theta", (kit, 3)), [(x, W)]).ok


def test_kit_rho_degenerates_to_phi_xi():
    kit = DiamondKit(Predictor(default=()), rho=O(2))
    x = closure(union(progression(1, 2, 0), progression(OMEGA, 1, 0)))
    y = kit_phi_rho(x, kit)
    W = list(Window(0, O("w*2"), 8).points)
    assert y.members_in(W) == phi_xi(x, 2).members_in(W)


def test_kit_theta_one_is_deterministic():
    kit = DiamondKit()
    x = full_below(O("w^2*2"))
    W = list(Window(0, O("w^2*2"), 3).points)
    assert kit_phi_theta(x, kit, 1).members_in(W) == kit_phi_theta(x, kit, 1).members_in(W)


def test_kit_json_roundtrip():
    kit = DiamondKit(Predictor("full", ((O(5), (O(1), O(2))),)), rho=O("w*2"))
    back = DiamondKit.from_json(kit.to_json())
    assert back.to_json() == kit.to_json()
