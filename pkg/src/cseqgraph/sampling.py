"""Seeded generators for clubs, C-sequence specs, windows and small graphs."""

from __future__ import annotations

import random

from .clubs import (
    OrdSet,
    closure,
    full_below,
    fundamental_club,
    points,
    progression,
    tail_from,
    union,
)
from .csgraph import GraphWindow
from .cseq import CSequence, GFilter
from .ordinals import OMEGA, ONE, ZERO, Ordinal, omega_pow
from .windows import Window


def _split_last(a: Ordinal) -> tuple[Ordinal, int]:
    """a = b + w^e with e the last exponent; returns (b, e)."""
    e, c = a.terms[-1]
    b = Ordinal(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    return b, int(e)


def random_small(rng: random.Random, below: Ordinal, width: int = 4) -> Ordinal:
    """A random ordinal < below on a coarse CNF grid."""
    if not below.terms:
        raise ValueError("nothing below 0")
    top = below.lead_exp_int()
    for _ in range(50):
        terms = []
        for e in range(top, -1, -1):
            c = rng.randrange(width)
            if c:
                terms.append((Ordinal.of(e), c))
        o = Ordinal(tuple(terms))
        if o < below:
            return o
    return ZERO


def random_cofinal(rng: random.Random, a: Ordinal) -> OrdSet:
    """A cofinal subset of the limit a (not necessarily closed)."""
    b, e = _split_last(a)
    step_unit = omega_pow(Ordinal.of(e - 1))
    kind = rng.randrange(4)
    if kind == 0:
        s = fundamental_club(a)
    elif kind == 1:
        m = rng.randint(1, 3)
        off = random_small(rng, step_unit) if e > 1 else Ordinal.of(rng.randrange(m))
        s = progression(b, step_unit * Ordinal.of(m), off)
    elif kind == 2:
        lo = b + random_small(rng, omega_pow(Ordinal.of(e)))
        s = tail_from(full_below(a), lo)
    else:
        s = union(progression(b, step_unit, ZERO), progression(b, step_unit, ONE))
    extra = [random_small(rng, a) for _ in range(rng.randrange(3))]
    if extra:
        s = union(s, points(extra))
    return s


def random_club(rng: random.Random, a: Ordinal) -> OrdSet:
    """A club in the limit a."""
    return closure(random_cofinal(rng, a))


def random_k_member(rng: random.Random, max_exp: int = 3) -> OrdSet:
    """A nonempty club in its own (limit) supremum."""
    return random_club(rng, random_limit(rng, omega_pow(Ordinal.of(max_exp)) + ONE))


def random_limit(rng: random.Random, bound: Ordinal) -> Ordinal:
    """A limit ordinal <= bound, bound at most w^3-ish."""
    for _ in range(200):
        o = random_small(rng, bound + ONE) if bound.terms else ZERO
        if o.is_limit():
            return o
    return OMEGA


BUDGETS = ["w", "w*2", "w*3", "w^2", "w^2+w", "w^2*2", "w^3"]


def random_budget(rng: random.Random) -> Ordinal:
    from .ordinals import parse_ordinal

    return parse_ordinal(rng.choice(BUDGETS))


def random_cseq(rng: random.Random, budget: Ordinal | None = None, table: str | None = None) -> CSequence:
    """canonical, full, or a mixed table with random clubs at some limits."""
    budget = budget or random_budget(rng)
    table = table or rng.choice(["canonical", "full", "mixed"])
    if table != "mixed":
        return CSequence(budget, table, provenance={"rule": table})
    overrides = {}
    for _ in range(rng.randint(1, 6)):
        a = random_limit(rng, budget)
        overrides[a] = random_club(rng, a)
    default = rng.choice(["canonical", "full"])
    return CSequence(budget, default, overrides, provenance={"rule": "mixed", "default": default})


def random_window(rng: random.Random, budget: Ordinal, max_vertices: int = 200) -> Window:
    """A window [lo, budget+1) with at most max_vertices points."""
    lo = ZERO if rng.random() < 0.6 else random_small(rng, budget, 3)
    hi = budget + ONE
    width = rng.randint(3, 8)
    while width > 1:
        w = Window(lo, hi, width, (budget,))
        if len(w) <= max_vertices:
            return w
        width -= 1
    return Window(lo, hi, 1, (budget,))


def random_graph(rng: random.Random, n: int, p: float) -> GraphWindow:
    vs = list(range(n))
    edges = [(a, b) for a in vs for b in vs if a < b and rng.random() < p]
    return GraphWindow.from_edges(vs, edges, {"rule": "random", "n": n, "p": p})


def complete_bipartite(m: int, n: int, offset: int = 0) -> GraphWindow:
    A = list(range(offset, offset + m))
    B = list(range(offset + m, offset + m + n))
    return GraphWindow.from_edges(A + B, [(a, b) for a in A for b in B], {"rule": f"K_{m},{n}"})


def limits_filter() -> GFilter:
    return GFilter("limits")
