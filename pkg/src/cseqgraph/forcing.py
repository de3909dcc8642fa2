"""Conditions of the square-adding posets, the extension lemma, the closure game, projection and a generic sampler."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .chromatics import Capture, captures_check
from .clubs import (
    EMPTY,
    OrdSet,
    Undecidable,
    acc,
    club_from_json,
    difference,
    fundamental_club,
    interval,
    is_club_in,
    points,
    set_equal,
    singleton,
    union,
)
from .cseq import BudgetExceeded, CSequence, SpecError
from .ordcore import rel_sq, rel_sq_chi
from .ordinals import ALEPH0, OMEGA, ONE, ZERO, CardinalTag, Ordinal, as_ordinal, parse_cardinal


class PreconditionFailed(ValueError):
    pass


class IllegalMove(ValueError):
    def __init__(self, at: Ordinal, player: str, reason: str):
        super().__init__(f"{player} moved illegally at stage {at}: {reason}")
        self.at, self.player, self.reason = at, player, reason


@dataclass(frozen=True)
class Condition:
    """top None is the empty condition; table holds explicit clubs, every other limit gets its fundamental club."""

    top: Ordinal | None
    table: tuple = ()  # sorted (alpha, club) pairs
    chi: CardinalTag = ALEPH0

    @staticmethod
    def make(top, table: dict | None = None, chi: CardinalTag = ALEPH0) -> "Condition":
        t = None if top is None else as_ordinal(top)
        items = tuple(sorted(((as_ordinal(k), v) for k, v in (table or {}).items()), key=lambda kv: kv[0]))
        return Condition(t, items, chi)

    @property
    def is_empty(self) -> bool:
        return self.top is None

    def entries(self) -> dict:
        return dict(self.table)

    def club(self, a) -> OrdSet:
        a = as_ordinal(a)
        for k, v in self.table:
            if k == a:
                return v
        if not a.terms:
            return EMPTY
        if a.is_successor():
            return singleton(a.pred())
        return fundamental_club(a)

    def top_club(self) -> OrdSet:
        if self.top is None:
            raise PreconditionFailed("the empty condition has no top club")
        return self.club(self.top)

    def with_entry(self, top: Ordinal, club: OrdSet) -> "Condition":
        d = self.entries()
        d[top] = club
        return Condition.make(top, d, self.chi)

    def to_cseq(self, budget=None) -> CSequence:
        budget = as_ordinal(budget) if budget is not None else (self.top or ZERO)
        ov = {k: v for k, v in self.table if k.is_limit()}
        return CSequence(budget, "canonical", ov, provenance={"rule": "condition", "top": str(self.top)})

    def to_json(self) -> dict:
        return {
            "budget": None if self.top is None else str(self.top),
            "top": None if self.top is None else str(self.top),
            "chi": str(self.chi),
            "default": "canonical",
            "overrides": [{"at": str(k), "club": v.to_json()} for k, v in self.table],
        }

    @staticmethod
    def from_json(doc) -> "Condition":
        if not isinstance(doc, dict):
            raise SpecError("condition must be a JSON object")
        top = doc.get("top", doc.get("budget"))
        chi = parse_cardinal(doc.get("chi", "w"))
        if top is None:
            return Condition(None, (), chi)
        table = {}
        for i, e in enumerate(doc.get("overrides", [])):
            path = f"$.overrides[{i}]"
            if not isinstance(e, dict) or "at" not in e or "club" not in e:
                raise SpecError("entry needs 'at' and 'club'", path)
            table[as_ordinal(e["at"])] = club_from_json(e["club"], path + ".club")
        return Condition.make(top, table, chi)

    def describe(self) -> str:
        if self.top is None:
            return "1"
        return f"<top {self.top}: {self.top_club().describe()}>"


EMPTY_CONDITION = Condition(None)


# ---------------------------------------------------------------------------------------
# validation and order


@dataclass
class ValidationReport:
    problems: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_json(self):
        return {"valid": self.ok, "problems": self.problems}


def _coh(p: Condition, d: OrdSet, c: OrdSet) -> bool:
    return rel_sq_chi(d, c, p.chi)


def validate(p: Condition) -> ValidationReport:
    """Club, successor and coherence clauses, decided exactly on the whole table."""
    rep = ValidationReport()
    if p.top is None:
        if p.table:
            rep.problems.append({"clause": "empty", "detail": "the empty condition has no entries"})
        return rep
    if not p.top.is_limit():
        rep.problems.append({"clause": "top", "at": str(p.top), "detail": "top must be a limit ordinal"})
        return rep
    limit_keys = []
    for a, c in p.table:
        if a > p.top:
            rep.problems.append({"clause": "domain", "at": str(a), "detail": f"entry above top {p.top}"})
            continue
        if not a.is_limit():
            want = EMPTY if not a.terms else singleton(a.pred())
            if not set_equal(c, want):
                rep.problems.append({"clause": "successor", "at": str(a), "detail": f"C_{a} must be {{{a.pred()}}}" if a.terms else "C_0 must be empty"})
            continue
        ok, why = is_club_in(c, a)
        if not ok:
            rep.problems.append({"clause": "club", "at": str(a), "detail": why})
            continue
        limit_keys.append(a)
    if rep.problems:
        return rep
    keyset = points(limit_keys)
    for a in limit_keys:
        c = p.club(a)
        ac = acc(c)
        for ab in limit_keys:
            if ab < a and ac.contains(ab) and not _coh(p, p.club(ab), c):
                rep.problems.append({"clause": "coherence", "at": str(a), "witness": str(ab)})
        # default clubs are omega-type, so at most one of them can be an initial segment of c:
        # the first two non-explicit accumulation points decide all of them
        rest = difference(ac, keyset)
        d1 = rest.min()
        d2 = None if d1 is None else rest.next_at_or_above(d1 + ONE)
        for ab in (d1, d2):
            if ab is not None and not _coh(p, fundamental_club(ab), c):
                rep.problems.append({"clause": "coherence", "at": str(a), "witness": str(ab)})
                break
    return rep


def leq(q: Condition, p: Condition, star: bool = False) -> bool:
    """q <= p: q end-extends p as a sequence; star also asks C^p_top to be an initial segment of C^q_top."""
    if p.top is None:
        return True
    if q.top is None or q.top < p.top:
        return False
    keys = {k for k, _ in p.table} | {k for k, _ in q.table if k <= p.top}
    for a in keys:
        if a <= p.top and not set_equal(q.club(a), p.club(a)):
            return False
    if star:
        return rel_sq(p.top_club(), q.top_club())
    return True


def comparable(p: Condition, q: Condition) -> bool:
    return leq(p, q) or leq(q, p)


# ---------------------------------------------------------------------------------------
# extension lemma


def extension_lemma(p: Condition, A: OrdSet, sigma: int, budget, rng: random.Random | None = None) -> Condition:
    """q <= p with C^p_top an initial segment of C^q_top and suc_sigma(C^q_top minus top(p)) inside A."""
    if sigma < 1:
        raise ValueError("sigma must be a positive integer")
    budget = as_ordinal(budget)
    if p.top is None:
        head = A.min()
        if head is None or head >= budget:
            raise BudgetExceeded("A has no members below the budget")
        base = points([head])
        lo = head + ONE
    else:
        base = union(p.top_club(), points([p.top]))
        lo = p.top + ONE
    deltas = []
    for _ in range(sigma):
        d = A.next_at_or_above(lo)
        if d is not None and rng is not None:
            for _ in range(rng.randrange(3)):
                nxt = A.next_at_or_above(d + ONE)
                if nxt is None or nxt >= budget:
                    break
                d = nxt
        if d is None or d >= budget:
            raise BudgetExceeded(f"A has fewer than {sigma} members in ({p.top or ZERO}, {budget})")
        deltas.append(d)
        lo = d + ONE
    last = deltas[-1]
    top = last.limit_part() + OMEGA
    if top > budget:
        raise BudgetExceeded(f"the new top {top} exceeds the budget {budget}")
    club = union(union(base, points(deltas)), interval(last + ONE, top))
    return p.with_entry(top, club)


def extension_holds(p: Condition, q: Condition, A: OrdSet, sigma: int) -> list[str]:
    """The lemma's two postconditions plus validity and q <= p; returns the failures."""
    from .clubs import suc_sigma, tail_from

    bad = []
    if not validate(q).ok:
        bad.append("q invalid")
    if not leq(q, p):
        bad.append("q not <= p")
    if p.top is not None and not rel_sq(p.top_club(), q.top_club()):
        bad.append("top clubs do not end-extend")
    start = p.top if p.top is not None else ZERO
    block = suc_sigma(tail_from(q.top_club(), start), sigma)
    if any(not A.contains(b) for b in block.to_list()) or len(block.to_list()) != sigma:
        bad.append("suc_sigma block leaves A")
    return bad


# ---------------------------------------------------------------------------------------
# projection


def project_star(s0: Condition, s1: Condition) -> Condition:
    """s2 with top g1+w and top club C^{s0}_{g0} U {g0} U {g1+n}: s2 <=* s0 and s2 <= s1."""
    if not leq(s1, s0):
        raise PreconditionFailed("s1 must extend s0")
    g1 = s1.top if s1.top is not None else ZERO
    top = g1 + OMEGA
    tail = interval(g1, top)
    if s0.top is None:
        club = tail
    else:
        club = union(union(s0.top_club(), points([s0.top])), tail)
    s2 = s1.with_entry(top, club) if s1.top is not None else Condition.make(top, {top: club}, s1.chi)
    return s2


# ---------------------------------------------------------------------------------------
# the strategic closure game


@dataclass
class Move:
    stage: Ordinal
    player: str
    condition: Condition
    legal: bool = True
    reason: str = ""

    def to_json(self):
        return {"stage": str(self.stage), "player": self.player, "legal": self.legal, "reason": self.reason, "condition": self.condition.to_json()}


@dataclass
class GameTranscript:
    moves: list[Move]
    length: Ordinal
    outcome: str
    at: Ordinal | None = None

    def to_json(self):
        return {
            "length": str(self.length),
            "outcome": self.outcome,
            "at": None if self.at is None else str(self.at),
            "moves": [m.to_json() for m in self.moves],
        }


def master_chain(history: list[Move]) -> Condition:
    """II's end-extension move: the projection step on II's last move and the last move overall."""
    mine = [m.condition for m in history if m.player == "II"]
    s0 = mine[-1] if mine else EMPTY_CONDITION
    s1 = history[-1].condition
    return project_star(s0, s1)


def _stages(length: Ordinal, max_stages: int) -> list[Ordinal]:
    """Materialized stages below length (and the closing limit when length is a limit): at most max_stages."""
    out: list[Ordinal] = []
    lp = length.limit_part() if length.terms else ZERO
    blocks = []
    b = ZERO
    while b < lp:
        blocks.append(b)
        b = b + OMEGA
    fin = length.finite_part()
    # one finite run per omega-block, split evenly, the final partial block gets its exact count
    room = max_stages - len(blocks) - (1 if length.is_limit() else 0) - fin
    per = max(2, room // max(1, len(blocks))) if blocks else 0
    per += per % 2  # even so each block ends with I and the next limit belongs to II
    for b in blocks:
        out.extend(b + Ordinal.of(n) for n in range(per))
    out.extend(lp + Ordinal.of(n) for n in range(fin))
    if length.is_limit():
        out.append(length)
    return out[:max_stages]


def play_game(
    length,
    adversary: Callable[[list[Move], random.Random], Condition],
    strategy: Callable[[list[Move]], Condition] = master_chain,
    max_stages: int = 40,
    seed: int = 0,
) -> GameTranscript:
    """I moves at odd stages, II at even and limit stages; the first illegal move loses."""
    length = as_ordinal(length)
    if length > OMEGA * Ordinal.of(2):
        raise PreconditionFailed("game lengths above w*2 are not materialized")
    rng = random.Random(seed)
    hist: list[Move] = []
    for st in _stages(length, max_stages):
        player = "II" if (st.is_limit() or not st.terms or st.finite_part() % 2 == 0) else "I"
        if not st.terms:
            cond = EMPTY_CONDITION
        elif player == "II":
            cond = strategy(hist)
        else:
            cond = adversary(hist, rng)
        rep = validate(cond)
        reason = ""
        if not rep.ok:
            reason = f"invalid condition: {rep.problems[0]}"
        else:
            for m in hist:
                if not leq(cond, m.condition):
                    reason = f"does not extend the move at stage {m.stage}"
                    break
        hist.append(Move(st, player, cond, not reason, reason))
        if reason:
            return GameTranscript(hist, length, f"{player}Loses", st)
    return GameTranscript(hist, length, "IIWins", None)


def extension_adversary(targets: list[OrdSet], budget, sigma_max: int = 3) -> Callable:
    """I plays the extension lemma against a random target."""
    budget = as_ordinal(budget)

    def move(hist: list[Move], rng: random.Random) -> Condition:
        p = hist[-1].condition
        A = rng.choice(targets)
        return extension_lemma(p, A, rng.randint(1, sigma_max), budget, rng)

    return move


def incomparable_adversary(budget, after: int = 3) -> Callable:
    """I plays honestly for a while, then restarts from the empty condition (not below II's last move)."""
    from .clubs import full_below

    budget = as_ordinal(budget)

    def move(hist: list[Move], rng: random.Random) -> Condition:
        p = hist[-1].condition if len(hist) < after else EMPTY_CONDITION
        return extension_lemma(p, full_below(budget), 1, budget, rng)

    return move


# ---------------------------------------------------------------------------------------
# the generic sampler


@dataclass
class GenericResult:
    condition: Condition
    vec: CSequence
    capture_log: list[dict]
    markers: list[Ordinal]
    rounds: int

    def to_json(self):
        return {
            "top": str(self.condition.top),
            "rounds": self.rounds,
            "markers": [str(m) for m in self.markers],
            "captureLog": self.capture_log,
            "sequence": self.vec.to_json(),
        }


def generic_sample(
    budget,
    targets: list[OrdSet],
    club_tasks: list[OrdSet] | None = None,
    sigma: int = 2,
    seed: int = 0,
    rounds: int | None = None,
    chi: CardinalTag = ALEPH0,
) -> GenericResult:
    """Round robin over the targets with the extension lemma, epsilon markers from the club tasks,
    and a capture check at the top reached after each round."""
    budget = as_ordinal(budget)
    rng = random.Random(seed)
    club_tasks = club_tasks or []
    rounds = rounds if rounds is not None else rng.randint(2, 4)
    p = Condition(None, (), chi)
    log: list[dict] = []
    markers: list[Ordinal] = []
    done = 0
    try:
        for _ in range(rounds):
            if not targets:
                p = project_star(p, p)
            for A in targets:
                p = extension_lemma(p, A, sigma, budget, rng)
                for D in club_tasks:
                    eps = D.next_at_or_above(p.top + ONE)
                    if eps is None or eps >= budget:
                        raise BudgetExceeded("club task has no point above the current top")
                    p = extension_lemma(p, D, 1, budget, rng)
                    markers.append(eps)
            done += 1
            if targets:
                cert = captures_check(p.top_club(), p.top, targets, len(targets))
                if isinstance(cert, Capture):
                    log.append({"delta": str(p.top), "certificate": cert.to_json(), "_delta": p.top})
    except BudgetExceeded:
        if done == 0:
            raise
    vec = p.to_cseq(budget)
    for e in log:
        e.pop("_delta", None)
    return GenericResult(p, vec, log, markers, done)


def recertify(result: GenericResult, targets: list[OrdSet]) -> list[str]:
    """Re-run the capture check on every logged point against the output sequence."""
    bad = []
    for e in result.capture_log:
        d = as_ordinal(e["delta"])
        cert = captures_check(result.vec.club(d), d, targets, len(targets))
        if not isinstance(cert, Capture) or not cert.revalidate(result.vec.club(d), targets):
            bad.append(str(d))
    return bad


def tree_like(p: Condition, q: Condition, r: Condition) -> bool:
    """If r extends both p and q then p, q are comparable."""
    if leq(r, p) and leq(r, q):
        return comparable(p, q)
    return True


__all__ = [
    "Condition",
    "EMPTY_CONDITION",
    "GameTranscript",
    "GenericResult",
    "IllegalMove",
    "PreconditionFailed",
    "Undecidable",
    "comparable",
    "extension_adversary",
    "extension_holds",
    "extension_lemma",
    "generic_sample",
    "incomparable_adversary",
    "leq",
    "master_chain",
    "play_game",
    "project_star",
    "recertify",
    "tree_like",
    "validate",
]
