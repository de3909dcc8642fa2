"""Seeded property and oracle suites; shared by `verify all` and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .chromatics import (
    Coloring,
    ExplicitInfinite,
    Proper,
    Tail,
    adversary,
    brute_force_chromatic,
    brute_force_chromatic_product,
    brute_force_coloring_number,
    check_suitable,
    chromatic_number,
    coloring_number,
    extend_suitable,
    neighborhood_witness,
)
from .clubs import full_below, points, progression, successors_below, union
from .csgraph import build_window, cseq_rule, verify_in_neighborhood, verify_triangle_free
from .cseq import BudgetExceeded, check_coherence
from .forcing import (
    EMPTY_CONDITION,
    Condition,
    extension_adversary,
    extension_holds,
    extension_lemma,
    generic_sample,
    leq,
    play_game,
    project_star,
    recertify,
    validate,
)
from .ordinals import ALEPH0, OMEGA, ONE, Ordinal, parse_ordinal
from .postproc import BFn, Compose, Xi, ZFamily, ZFn, verify_postproc
from .sampling import (
    complete_bipartite,
    random_club,
    random_cofinal,
    random_cseq,
    random_graph,
    random_k_member,
    random_limit,
    random_small,
    random_window,
)
from .windows import Window


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def fail(self, item):
        if len(self.failures) < 10:
            self.failures.append(item)
        else:
            self.notes["moreFailures"] = self.notes.get("moreFailures", 0) + 1

    def to_json(self):
        return {"suite": self.name, "ok": self.ok, "checked": self.checked, "failures": self.failures, "notes": self.notes}


def graph_corpus(seed: int, n: int = 100, max_vertices: int = 200):
    """(rule, window, graph) triples over random canonical / full / mixed sequences."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        vec = random_cseq(rng, table=rng.choice(["canonical", "full", "mixed", "mixed", "mixed"]))
        w = random_window(rng, vec.budget, max_vertices)
        rule = cseq_rule(vec)
        out.append((rule, w, build_window(rule, w)))
    return out


def triangle_free(seed: int = 0, n: int = 100, corpus=None) -> SuiteResult:
    r = SuiteResult("triangle_free")
    corpus = corpus or graph_corpus(seed, n)
    edges = 0
    for rule, w, g in corpus:
        r.checked += 1
        edges += len(g.edges)
        t = verify_triangle_free(g)
        if t is not None:
            r.fail({"window": w.describe(), "triangle": [str(x) for x in t]})
    r.notes["edges"] = edges
    return r


def chromatic_oracle(seed: int = 0, n: int = 200, max_n: int = 9) -> SuiteResult:
    r = SuiteResult("chromatic_oracle")
    rng = random.Random(seed)
    for _ in range(n):
        g = random_graph(rng, rng.randint(0, max_n), rng.choice([0.2, 0.35, 0.5, 0.7, 0.9]))
        r.checked += 1
        k, col = chromatic_number(g)
        bf = brute_force_chromatic(g)
        if len(g.vertices) <= 8:
            literal = brute_force_chromatic_product(g)
            r.notes["literal"] = r.notes.get("literal", 0) + 1
            if literal != bf:
                r.fail({"edges": [[str(a), str(b)] for a, b in g.sorted_edges()], "oracle": bf, "literal": literal})
        proper = all(col.assign[a] != col.assign[b] for a, b in g.edges) and len(col.colors()) == k
        if k != bf or not proper:
            r.fail({"edges": [[str(a), str(b)] for a, b in g.sorted_edges()], "solver": k, "oracle": bf})
    return r


def coloring_oracle(seed: int = 0, n: int = 100, max_n: int = 7) -> SuiteResult:
    r = SuiteResult("coloring_oracle")
    rng = random.Random(seed)
    for _ in range(n):
        g = random_graph(rng, rng.randint(0, max_n), rng.choice([0.2, 0.4, 0.6, 0.8]))
        r.checked += 1
        k, w = coloring_number(g)
        bf = brute_force_coloring_number(g)
        if k != bf or not w.revalidate(g) or w.max_back_degree >= k:
            r.fail({"edges": [[str(a), str(b)] for a, b in g.sorted_edges()], "solver": k, "oracle": bf})
    return r


def chr_le_col(seed: int = 0, n: int = 100, corpus=None) -> SuiteResult:
    r = SuiteResult("chr_le_col")
    corpus = corpus or graph_corpus(seed, n)
    for rule, w, g in corpus:
        r.checked += 1
        try:
            k, _ = chromatic_number(g, cap=None)
            c, _ = coloring_number(g)
        except Exception as exc:  # any exception fails the criterion
            r.fail({"window": w.describe(), "error": repr(exc)})
            continue
        if k > c:
            r.fail({"window": w.describe(), "chr": k, "col": c})
    return r


def _random_b(rng: random.Random):
    choice = rng.randrange(4)
    if choice == 0:
        return progression(0, rng.randint(2, 4), rng.randrange(2))
    if choice == 1:
        return points(random_small(rng, parse_ordinal("w^3")) for _ in range(rng.randint(1, 4)))
    if choice == 2:
        return successors_below(parse_ordinal("w^3"))
    return random_cofinal(rng, parse_ordinal("w^2"))


def _random_z(rng: random.Random) -> ZFamily:
    uni = rng.choice([progression(0, 2, 1), progression(0, 3, 0), successors_below(parse_ordinal("w^3")), points([])])
    ov = {}
    for _ in range(rng.randrange(3)):
        b = random_small(rng, parse_ordinal("w^3"))
        ov[b] = points(random_small(rng, parse_ordinal("w^3")) for _ in range(2))
    return ZFamily.of(uni, ov)


def _random_fn(rng: random.Random, depth: int = 0):
    kind = rng.choice(["xi", "B", "Z", "compose"] if depth == 0 else ["xi", "B", "Z"])
    if kind == "xi":
        return Xi(rng.choice([0, 1, 2, 5, "w", "w+1", "w*2"]))
    if kind == "B":
        return BFn(_random_b(rng))
    if kind == "Z":
        return ZFn(_random_z(rng))
    return Compose(*[_random_fn(rng, 1) for _ in range(rng.randint(2, 3))])


def postproc_axioms(seed: int = 0, n: int = 520) -> SuiteResult:
    r = SuiteResult("postproc_axioms")
    rng = random.Random(seed)
    per_kind = {"xi": 0, "B": 0, "Z": 0, "compose": 0}
    for i in range(n):
        fn = _random_fn(rng)
        x = random_k_member(rng, 3)
        w = Window(0, x.sup() + ONE, rng.randint(3, 5))
        rep = verify_postproc(fn, [(x, w)])
        r.checked += 1
        per_kind[fn.kind] += 1
        if not rep.ok:
            r.fail({"function": fn.describe(), "x": x.describe(), "violations": rep.violations[:2]})
        if fn.kind == "Z" and not rep.acc_preserving:
            r.fail({"function": fn.describe(), "x": x.describe(), "clause": "acc-preserving"})
    r.notes["perKind"] = per_kind
    return r


_W3 = parse_ordinal("w^3")
W2 = parse_ordinal("w^2")


def _random_condition(rng: random.Random, budget: Ordinal = _W3) -> Condition:
    p = EMPTY_CONDITION
    if rng.random() < 0.5:
        a = random_limit(rng, parse_ordinal("w^2"))
        cand = Condition.make(a, {a: random_club(rng, a)})
        if validate(cand).ok:
            p = cand
    for _ in range(rng.randrange(4)):
        p = extension_lemma(p, random_cofinal(rng, budget), rng.randint(1, 3), budget, rng)
    return p


def extension_contracts(seed: int = 0, n: int = 1000) -> SuiteResult:
    r = SuiteResult("extension_contracts")
    rng = random.Random(seed)
    for _ in range(n):
        p = _random_condition(rng)
        A = random_cofinal(rng, _W3) if rng.random() < 0.7 else rng.choice([successors_below(_W3), progression(0, W2, 1), full_below(_W3)])
        sigma = rng.randint(1, 4)
        r.checked += 1
        try:
            q = extension_lemma(p, A, sigma, _W3, rng)
        except BudgetExceeded as exc:
            r.fail({"p": p.describe(), "error": str(exc)})
            continue
        bad = extension_holds(p, q, A, sigma)
        if bad:
            r.fail({"p": p.describe(), "A": A.describe(), "sigma": sigma, "problems": bad})
    return r


def projection_contracts(seed: int = 0, n: int = 100) -> SuiteResult:
    r = SuiteResult("projection_contracts")
    rng = random.Random(seed)
    for _ in range(n):
        s0 = _random_condition(rng)
        s1 = s0
        for _ in range(rng.randrange(3)):
            s1 = extension_lemma(s1, random_cofinal(rng, _W3), rng.randint(1, 3), _W3, rng)
        s2 = project_star(s0, s1)
        r.checked += 1
        if not (validate(s2).ok and leq(s2, s0, star=True) and leq(s2, s1)):
            r.fail({"s0": s0.describe(), "s1": s1.describe(), "s2": s2.describe()})
    return r


GAME_LENGTHS = ["2", "5", "8", "13", "20", "w", "w+1", "w+4", "w+9", "w*2"]


def game_safety(seed: int = 0, n: int = 100) -> SuiteResult:
    r = SuiteResult("game_safety")
    rng = random.Random(seed)
    targets = [full_below(_W3), successors_below(_W3), progression(0, OMEGA, 2), union(progression(0, OMEGA, 1), progression(0, OMEGA, 3))]
    for i in range(n):
        length = parse_ordinal(rng.choice(GAME_LENGTHS))
        adv = extension_adversary(rng.sample(targets, rng.randint(1, len(targets))), _W3, rng.randint(1, 4))
        tr = play_game(length, adv, max_stages=40, seed=rng.randrange(10**6))
        r.checked += 1
        bad_ii = [m for m in tr.moves if m.player == "II" and not m.legal]
        if tr.outcome == "IILoses" or bad_ii or len(tr.moves) > 40:
            r.fail({"length": str(length), "outcome": tr.outcome, "at": None if tr.at is None else str(tr.at)})
    return r


def capture_targets(rng: random.Random) -> list:
    return [
        successors_below(W2),
        progression(0, OMEGA, 2),
        union(progression(0, OMEGA, 5), progression(0, OMEGA, 7)),
        random_cofinal(rng, W2),
    ]


def generic_capture(seed: int = 0, n: int = 20) -> SuiteResult:
    r = SuiteResult("generic_capture")
    for s in range(seed, seed + n):
        rng = random.Random(s)
        targets = capture_targets(rng)
        res = generic_sample(W2, targets, [], 2, seed=s)
        r.checked += 1
        coh = check_coherence(res.vec, "sq_chi", Window(0, W2 + ONE, 6), ALEPH0)
        bad = recertify(res, targets)
        if not res.capture_log or bad or not coh.ok or not validate(res.condition).ok:
            r.fail({"seed": s, "log": len(res.capture_log), "recertifyFailures": bad, "coherent": coh.ok})
    return r


def suitable_contracts(seed: int = 0, n: int = 100) -> SuiteResult:
    r = SuiteResult("suitable_contracts")
    rng = random.Random(seed)
    for _ in range(n):
        vec = random_cseq(rng, table=rng.choice(["canonical", "full", "mixed", "mixed"]))
        w = random_window(rng, vec.budget, 120)
        rule = cseq_rule(vec)
        pal = rng.choice([Tail(0), Tail(1), ExplicitInfinite(0, 2), ExplicitInfinite(1, 3)])
        verts = [p for p in w.points if rule.vertex_ok(p)]
        cut = rng.randrange(len(verts) + 1)
        d1 = verts[cut] if cut < len(verts) else vec.budget + ONE
        c0 = extend_suitable(rule, Coloring({}, pal), d1, w, pal)
        c = extend_suitable(rule, c0, vec.budget + ONE, w, pal)
        r.checked += 1
        problems = []
        if not isinstance(check_suitable(rule, c, w, ALEPH0), Proper):
            problems.append("not suitable")
        if any(c.assign.get(k) != v for k, v in c0.assign.items()):
            problems.append("does not extend input")
        if any(not pal.contains(v) for v in c.assign.values()):
            problems.append("color outside palette")
        if len(c.assign) != len(verts):
            problems.append("not total on the window")
        if adversary(rule, c, w, 2) is not None:
            problems.append("adversary found an edge")
        if problems:
            r.fail({"window": w.describe(), "problems": problems})
    return r


def neighborhood_coincidence(seed: int = 0, n: int = 100, corpus=None) -> SuiteResult:
    r = SuiteResult("neighborhood_coincidence")
    corpus = corpus or graph_corpus(seed, n)
    for rule, w, g in corpus:
        for b in g.vertices:
            r.checked += 1
            if not verify_in_neighborhood(rule, b, w, g):
                r.fail({"window": w.describe(), "beta": str(b)})
    return r


def crafted_witness_windows(seed: int = 0, n: int = 50):
    rng = random.Random(seed)
    out = [(complete_bipartite(3, 4), 3)]
    while len(out) < n:
        m = rng.randint(1, 4)
        extra = rng.randint(1, 3)
        g = complete_bipartite(m, m + extra)
        if rng.random() < 0.5:
            noise = random_graph(rng, len(g.vertices) + rng.randint(0, 4), 0.15)
            from .csgraph import GraphWindow

            g = GraphWindow.from_edges(noise.vertices, set(g.edges) | set(noise.edges), {"rule": "planted"})
        out.append((g, m))
    return out


def witness_soundness(seed: int = 0, n: int = 50) -> SuiteResult:
    r = SuiteResult("witness_soundness")
    produced = 0
    for g, mu in crafted_witness_windows(seed, n):
        r.checked += 1
        w = neighborhood_witness(g, mu)
        if w is None:
            r.notes.setdefault("noWitness", 0)
            r.notes["noWitness"] += 1
            continue
        produced += 1
        col, _ = coloring_number(g)
        if not w.revalidate(g) or not col > mu:
            r.fail({"A": [str(a) for a in w.A], "B": [str(b) for b in w.B], "mu": mu, "col": col})
    r.notes["produced"] = produced
    k34 = neighborhood_witness(complete_bipartite(3, 4), 3)
    if k34 is None or sorted(map(int, k34.A)) != [0, 1, 2] or sorted(map(int, k34.B)) != [3, 4, 5, 6]:
        r.fail({"K34": "witness missing or wrong sides"})
    return r


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "01_triangle_free": triangle_free,
    "02_chromatic_oracle": chromatic_oracle,
    "03_coloring_oracle": coloring_oracle,
    "04_chr_le_col": chr_le_col,
    "05_postproc_axioms": postproc_axioms,
    "06_extension_contracts": extension_contracts,
    "07_projection_contracts": projection_contracts,
    "08_game_safety": game_safety,
    "09_generic_capture": generic_capture,
    "10_suitable_contracts": suitable_contracts,
    "11_neighborhood_coincidence": neighborhood_coincidence,
    "12_witness_soundness": witness_soundness,
}

QUICK_SIZES = {
    "01_triangle_free": 20,
    "02_chromatic_oracle": 40,
    "03_coloring_oracle": 20,
    "04_chr_le_col": 20,
    "05_postproc_axioms": 100,
    "06_extension_contracts": 100,
    "07_projection_contracts": 20,
    "08_game_safety": 20,
    "09_generic_capture": 5,
    "10_suitable_contracts": 20,
    "11_neighborhood_coincidence": 10,
    "12_witness_soundness": 50,
}


def run_suite(name: str, seed: int, quick: bool = False) -> dict:
    fn = SUITES[name]
    res = fn(seed, QUICK_SIZES[name]) if quick else fn(seed)
    d = res.to_json()
    d["suite"] = name
    return d
