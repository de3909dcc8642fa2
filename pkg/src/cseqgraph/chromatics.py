"""Chromatic and coloring numbers of graph windows, suitable colorings and their certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable

from .clubs import EPSet, IndexOutOfRange, OrdSet, intersect, pred_in
from .csgraph import EdgeRule, GraphWindow, build_window, edge_test, n_set
from .cseq import thread_check
from .ordinals import ONE, ZERO, CardinalTag, Ordinal, as_ordinal
from .windows import Window


class CapExceeded(ValueError):
    pass


class PaletteExhausted(RuntimeError):
    pass


class NotAThread(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


# ---------------------------------------------------------------------------------------
# palettes and colorings


@dataclass(frozen=True)
class PaletteSpec:
    """finite(k) = {0..k-1}; tail(k) = {k, k+1, ...}; explicit(start, step) = {start + step*i}."""

    kind: str
    k: int = 0
    step: int = 1

    def contains(self, n: int) -> bool:
        if self.kind == "finite":
            return 0 <= n < self.k
        if self.kind == "tail":
            return n >= self.k
        return n >= self.k and (n - self.k) % self.step == 0

    def least_not_in(self, excluded: Iterable[int]) -> int:
        ex = set(excluded)
        if self.kind == "finite":
            for n in range(self.k):
                if n not in ex:
                    return n
            raise PaletteExhausted(f"all {self.k} colors are excluded")
        n = self.k
        while n in ex:
            n += self.step if self.kind == "explicit" else 1
        return n

    def is_infinite(self) -> bool:
        return self.kind != "finite"

    def to_json(self):
        if self.kind == "explicit":
            return {"explicit": {"start": self.k, "step": self.step}}
        return {self.kind: self.k}

    @staticmethod
    def parse(text) -> "PaletteSpec":
        """'finite:3', 'tail:1', 'explicit:0:2' (start 0, step 2), or the JSON forms."""
        if isinstance(text, dict):
            (kind, v), = text.items()
            if kind == "explicit":
                return PaletteSpec("explicit", int(v["start"]), int(v["step"]))
            return PaletteSpec(kind, int(v))
        parts = str(text).split(":")
        kind = parts[0]
        if kind == "finite" and len(parts) == 2:
            return PaletteSpec("finite", int(parts[1]))
        if kind == "tail" and len(parts) == 2:
            return PaletteSpec("tail", int(parts[1]))
        if kind == "explicit" and len(parts) == 3 and int(parts[2]) > 0:
            return PaletteSpec("explicit", int(parts[1]), int(parts[2]))
        raise ValueError(f"bad palette {text!r}; use finite:K, tail:K or explicit:START:STEP")


def Finite(k: int) -> PaletteSpec:
    return PaletteSpec("finite", k)


def Tail(k: int) -> PaletteSpec:
    return PaletteSpec("tail", k)


def ExplicitInfinite(start: int, step: int) -> PaletteSpec:
    return PaletteSpec("explicit", start, step)


@dataclass
class Coloring:
    assign: dict
    palette: PaletteSpec = field(default_factory=lambda: Tail(0))

    def __post_init__(self):
        self.assign = {as_ordinal(k): int(v) for k, v in self.assign.items()}

    def colors(self) -> set[int]:
        return set(self.assign.values())

    def to_json(self) -> dict:
        return {
            "palette": self.palette.to_json(),
            "assign": {str(k): self.assign[k] for k in sorted(self.assign)},
        }

    @staticmethod
    def from_json(d) -> "Coloring":
        pal = PaletteSpec.parse(d["palette"]) if "palette" in d else Tail(0)
        src = d["assign"] if "assign" in d else d
        return Coloring({as_ordinal(k): v for k, v in src.items()}, pal)


# ---------------------------------------------------------------------------------------
# certificates


@dataclass
class Proper:
    kind: str = "Proper"

    def to_json(self):
        return {"certificate": "Proper"}


@dataclass
class MonoEdge:
    a: Ordinal
    b: Ordinal
    color: int
    route: str = "scan"
    kind: str = "MonoEdge"

    def to_json(self):
        return {"certificate": "MonoEdge", "edge": [str(self.a), str(self.b)], "color": self.color, "route": self.route}

    def revalidate(self, rule: EdgeRule, c: Coloring) -> bool:
        return edge_test(rule, self.a, self.b) and c.assign.get(self.a) == self.color == c.assign.get(self.b)


@dataclass
class ImageOverflow:
    gamma: Ordinal
    colors: list[int]
    chi: str
    kind: str = "ImageOverflow"

    def to_json(self):
        return {"certificate": "ImageOverflow", "gamma": str(self.gamma), "colors": self.colors, "chi": self.chi}


@dataclass
class NbrWitness:
    A: list[Ordinal]
    B: list[Ordinal]
    mu: int
    kind: str = "NbrWitness"

    def to_json(self):
        return {"certificate": "NbrWitness", "A": [str(a) for a in self.A], "B": [str(b) for b in self.B], "mu": self.mu}

    def revalidate(self, g: GraphWindow) -> bool:
        A, B = set(self.A), set(self.B)
        if not (A <= set(g.vertices) and B <= set(g.vertices)):
            return False
        # the lemma's clauses; |A| = mu keeps the finite reading sound (a K_{mu,mu+1} inside g)
        if not (self.mu <= len(A) < len(B) and len(A) == self.mu):
            return False
        return all(len(g.adj[y] & A) >= self.mu for y in B)


@dataclass
class Capture:
    delta: Ordinal
    pairs: list[tuple[int, Ordinal, Ordinal, Ordinal]]  # (i, iota, C(iota), C(iota+1))
    kind: str = "Capture"

    def to_json(self):
        return {
            "certificate": "Capture",
            "delta": str(self.delta),
            "pairs": [{"i": i, "iota": str(io), "lo": str(a), "hi": str(b)} for i, io, a, b in self.pairs],
        }

    def revalidate(self, club: OrdSet, targets: list[OrdSet]) -> bool:
        m0 = targets[0].min() if targets else None
        if m0 is not None and club.min0() < m0:
            return False
        for i, io, a, b in self.pairs:
            if club.index(io) != a or club.index(io + ONE) != b:
                return False
            if not (club.contains(a) and club.contains(b) and targets[i].contains(a) and targets[i].contains(b)):
                return False
        return True


@dataclass
class NotCaptured:
    reason: str
    exact: bool
    kind: str = "NotCaptured"

    def to_json(self):
        return {"certificate": "NotCaptured", "reason": self.reason, "exact": self.exact}


@dataclass
class OrderingWitness:
    order: list[Ordinal]
    back_degrees: dict
    max_back_degree: int
    kind: str = "OrderingWitness"

    def to_json(self):
        return {
            "certificate": "OrderingWitness",
            "order": [str(v) for v in self.order],
            "backDegrees": {str(k): v for k, v in sorted(self.back_degrees.items())},
            "maxBackDegree": self.max_back_degree,
        }

    def revalidate(self, g: GraphWindow) -> bool:
        if sorted(self.order) != list(g.vertices):
            return False
        pos = {v: i for i, v in enumerate(self.order)}
        worst = 0
        for v in self.order:
            back = sum(1 for u in g.adj[v] if pos[u] < pos[v])
            if back != self.back_degrees.get(v):
                return False
            worst = max(worst, back)
        return worst == self.max_back_degree


# ---------------------------------------------------------------------------------------
# exact solvers


def _components(g: GraphWindow) -> list[list[Ordinal]]:
    seen, comps = set(), []
    for v in g.vertices:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _two_color(vs, adj):
    col = {}
    for s in vs:
        if s in col:
            continue
        col[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in col:
                    col[w] = 1 - col[u]
                    stack.append(w)
                elif col[w] == col[u]:
                    return None
    return col


def _greedy_clique(vs, adj) -> int:
    best = 1 if vs else 0
    for v in vs:
        clique = [v]
        for u in sorted(adj[v], key=lambda w: -len(adj[w])):
            if all(u in adj[w] for w in clique):
                clique.append(u)
        best = max(best, len(clique))
    return best


def _dsatur_greedy(vs, adj):
    col = {}
    sat = {v: set() for v in vs}
    while len(col) < len(vs):
        v = max((u for u in vs if u not in col), key=lambda u: (len(sat[u]), len(adj[u]), -vs.index(u)))
        c = 0
        while c in sat[v]:
            c += 1
        col[v] = c
        for w in adj[v]:
            sat[w].add(c)
    return (max(col.values()) + 1 if col else 0), col


def _exact_component(vs, adj):
    if not vs:
        return 0, {}
    if all(not adj[v] for v in vs):
        return 1, {v: 0 for v in vs}
    two = _two_color(vs, adj)
    if two is not None:
        return 2, two
    lb = max(3, _greedy_clique(vs, adj))
    best_k, best = _dsatur_greedy(vs, adj)
    if best_k <= lb:
        return best_k, best
    order_index = {v: i for i, v in enumerate(vs)}
    colors: dict = {}
    state = {"k": best_k, "col": best}

    def pick():
        bestv, bestkey = None, None
        for u in vs:
            if u in colors:
                continue
            s = len({colors[w] for w in adj[u] if w in colors})
            key = (s, sum(1 for w in adj[u] if w not in colors), -order_index[u])
            if bestkey is None or key > bestkey:
                bestv, bestkey = u, key
        return bestv

    def rec(used: int):
        if state["k"] <= lb:
            return
        if len(colors) == len(vs):
            state["k"], state["col"] = used, dict(colors)
            return
        v = pick()
        forbidden = {colors[w] for w in adj[v] if w in colors}
        for c in range(min(used + 1, state["k"] - 1)):
            if c in forbidden:
                continue
            colors[v] = c
            rec(max(used, c + 1))
            del colors[v]
            if state["k"] <= lb:
                return

    rec(0)
    return state["k"], state["col"]


def chromatic_number(g: GraphWindow, cap: int | None = 64) -> tuple[int, Coloring]:
    """Exact chromatic number with an optimal coloring (per component: bipartite test, DSATUR, branch and bound)."""
    if cap is not None and len(g.vertices) > cap:
        raise CapExceeded(f"{len(g.vertices)} vertices exceed the exact-solver cap {cap}")
    k, assign = 0, {}
    for comp in _components(g):
        kc, col = _exact_component(comp, g.adj)
        k = max(k, kc)
        assign.update(col)
    return k, Coloring(assign, Finite(max(k, 1)))


def brute_force_chromatic(g: GraphWindow) -> int:
    """Minimum over all colorings (restricted growth strings enumerate every partition once)."""
    vs = list(g.vertices)
    n = len(vs)
    if n == 0:
        return 0
    idx = {v: i for i, v in enumerate(vs)}
    nbrs = [[idx[u] for u in g.adj[v] if idx[u] < i] for i, v in enumerate(vs)]
    best = n

    def rec(i, col, used):
        nonlocal best
        if used >= best:
            return
        if i == n:
            best = used
            return
        for c in range(used + 1):
            if all(col[j] != c for j in nbrs[i]):
                col.append(c)
                rec(i + 1, col, max(used, c + 1))
                col.pop()

    rec(0, [], 0)
    return best


def brute_force_chromatic_product(g: GraphWindow) -> int:
    """Literal minimum over all palette assignments; only for tiny graphs."""
    from itertools import product

    vs = list(g.vertices)
    for k in range(0 if not vs else 1, len(vs) + 1):
        for assign in product(range(k), repeat=len(vs)):
            col = dict(zip(vs, assign))
            if all(col[a] != col[b] for a, b in g.edges):
                return k
    return len(vs)


def coloring_number(g: GraphWindow) -> tuple[int, OrderingWitness]:
    """Degeneracy + 1 by repeated minimum-degree removal; witness is the reversed removal order."""
    deg = {v: len(g.adj[v]) for v in g.vertices}
    removed: set = set()
    removal = []
    back = {}
    buckets: dict[int, set] = {}
    for v, d in deg.items():
        buckets.setdefault(d, set()).add(v)
    cur = 0
    for _ in range(len(g.vertices)):
        cur = 0
        while not buckets.get(cur):
            cur += 1
        v = min(buckets[cur])
        buckets[cur].discard(v)
        removed.add(v)
        removal.append(v)
        back[v] = cur
        for u in g.adj[v]:
            if u not in removed:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets.setdefault(deg[u], set()).add(u)
    order = list(reversed(removal))
    worst = max(back.values(), default=0)
    return worst + 1 if g.vertices else 1, OrderingWitness(order, back, worst)


def brute_force_coloring_number(g: GraphWindow) -> int:
    vs = list(g.vertices)
    if not vs:
        return 1
    best = len(vs)
    for perm in permutations(vs):
        pos = {v: i for i, v in enumerate(perm)}
        worst = max(sum(1 for u in g.adj[v] if pos[u] < pos[v]) for v in vs)
        best = min(best, worst)
    return best + 1


# ---------------------------------------------------------------------------------------
# suitable colorings


def _as_rule(rule) -> EdgeRule:
    from .cseq import CSequence
    from .csgraph import cseq_rule

    return cseq_rule(rule) if isinstance(rule, CSequence) else rule


def _window_vertices(rule: EdgeRule, window) -> list[Ordinal]:
    pts = window.points if isinstance(window, Window) else [as_ordinal(p) for p in window]
    return sorted(set(p for p in pts if p <= rule.vec.budget and rule.vertex_ok(p)))


def check_suitable(rule: EdgeRule, c: Coloring, window, chi: CardinalTag):
    """Proper on the window graph and |c[N_gamma cap window]| < chi for every window point gamma."""
    rule = _as_rule(rule)
    verts = _window_vertices(rule, window)
    colored = [v for v in verts if v in c.assign]
    extra = set(c.assign) - set(verts)
    if extra:
        raise PreconditionFailed(f"coloring domain leaves the window: {sorted(map(str, extra))[:3]}")
    g = build_window(rule, colored)
    for a, b in g.sorted_edges():
        if c.assign[a] == c.assign[b]:
            return MonoEdge(a, b, c.assign[a], "scan")
    pts = window.points if isinstance(window, Window) else [as_ordinal(p) for p in window]
    for gam in sorted(set(p for p in pts if p <= rule.vec.budget)):
        img = sorted({c.assign[a] for a in n_set(rule, gam, colored)})
        if not chi.exceeds_ordinal(Ordinal.of(len(img))):
            return ImageOverflow(gam, img, str(chi))
    return Proper()


class _Extender:
    """Window instantiation of the suitable-extension recursion."""

    def __init__(self, rule: EdgeRule, verts: list[Ordinal], palette: PaletteSpec):
        self.rule = rule
        self.verts = verts
        self.vset = set(verts)
        self.palette = palette
        self._n: dict = {}

    def N(self, d: Ordinal) -> list[Ordinal]:
        v = self._n.get(d)
        if v is None:
            v = n_set(self.rule, d, [p for p in self.verts if p < d])
            self._n[d] = v
        return v

    def pending(self, lo: Ordinal, hi: Ordinal, col: dict) -> list[Ordinal]:
        return [p for p in self.verts if lo <= p < hi and p not in col]

    def extend(self, delta: Ordinal, eps: Ordinal, col: dict, avoid: frozenset) -> dict:
        """Color window points in [eps, delta); points below eps are already colored."""
        steps = []
        while True:
            if not self.pending(eps, delta, col):
                out = col
                break
            if delta.is_successor():
                d0 = delta.pred()
                if d0 not in self.vset:
                    m = max(p for p in self.verts if p < delta)
                    lam = d0.limit_part()
                    delta = lam if lam > m else m + ONE
                    continue
                y = {col[a] for a in self.N(d0) if a in col}
                xi = self.palette.least_not_in(y | avoid)
                steps.append((d0, xi))
                avoid = avoid | {xi}
                delta = d0
                continue
            out = self._limit(delta, eps, col, avoid)
            break
        if steps:
            out = dict(out)
            for d0, xi in steps:
                out[d0] = xi
        return out

    def _limit(self, delta, eps, col, avoid):
        y = {col[a] for a in self.N(delta) if a in col}
        xi = self.palette.least_not_in(y | avoid)
        club = self.rule.club(delta)
        e0 = club.next_at_or_above(eps)
        cur = self.extend(e0, eps, col, avoid)
        nd = set(self.N(delta))
        groups: dict[Ordinal, None] = {}
        for p in self.pending(e0, delta, cur):
            groups.setdefault(club.next_at_or_above(p + ONE), None)
        for eta in sorted(groups):
            epsp = club.max_below(eta)
            d = self.extend(eta, epsp, cur, avoid | {xi})
            cur = dict(d)
            for b in d:
                if b > e0 and b in nd:
                    cur[b] = xi
        return cur


def _domain_start(verts: list[Ordinal], c: Coloring) -> Ordinal:
    dom = set(c.assign)
    eps = max(dom) + ONE if dom else ZERO
    for p in verts:
        if p < eps and p not in dom:
            raise PreconditionFailed(f"coloring domain is not an initial segment of the window (misses {p})")
    return eps


def extend_suitable(rule: EdgeRule, c: Coloring, delta, window, palette: PaletteSpec) -> Coloring:
    """Extend c to every window vertex below delta; new colors come from the palette."""
    rule = _as_rule(rule)
    delta = as_ordinal(delta)
    verts = [p for p in _window_vertices(rule, window) if p < delta]
    stray = [p for p in c.assign if p not in set(verts)]
    if stray:
        raise PreconditionFailed(f"coloring domain leaves the window below delta: {stray[0]}")
    eps = _domain_start(verts, c)
    ext = _Extender(rule, verts, palette)
    out = ext.extend(delta, eps, dict(c.assign), frozenset())
    return Coloring(out, palette)


def thread_coloring(rule: EdgeRule, D: OrdSet, window) -> Coloring:
    """Color 0 on N = {a in D : min(C_a) > sup(D cap a) >= min(D)} above min(D); suitable extensions elsewhere."""
    rule = _as_rule(rule)
    verts = _window_vertices(rule, window)
    win = window if isinstance(window, Window) else None
    if win is not None and thread_check(D, rule.vec, win) is not None:
        raise NotAThread(f"D disagrees with C at {thread_check(D, rule.vec, win)}")
    if win is None:
        from .clubs import acc as _acc, restrict_below, set_equal

        for a in _acc(D).members_in(verts):
            if not set_equal(restrict_below(D, a), rule.vec.club(a)):
                raise NotAThread(f"D disagrees with C at {a}")
    palette = Tail(0)
    e0 = D.min0()
    ext = _Extender(rule, verts, palette)
    N = set()
    for a in verts:
        if D.contains(a) and rule.vec.club(a).min0() > D.sup_below(a) >= e0:
            N.add(a)
    cur = ext.extend(e0, ZERO, {}, frozenset())
    top = D.sup()
    groups: dict = {}
    for p in ext.pending(e0, top, cur):
        groups.setdefault(D.next_at_or_above(p + ONE), None)
    for eta in sorted(groups):
        epsp = D.max_below(eta)
        d = ext.extend(eta, epsp, cur, frozenset({0}))
        cur = dict(d)
        for b in d:
            if b > e0 and b in N:
                cur[b] = 0
    rest = ext.pending(top, verts[-1] + ONE, cur) if verts else []
    if rest:
        cur = ext.extend(verts[-1] + ONE, top, cur, frozenset({0}))
    return Coloring(cur, palette)


# ---------------------------------------------------------------------------------------
# capturing and the lower-bound adversary


def captures_check(club, delta, targets: list[OrdSet], theta: int, search_budget: int = 256):
    """Capture certificate, or NotCaptured (exact when the sets are eventually periodic).

    club may be C_delta itself or the C-sequence it comes from.
    """
    delta = as_ordinal(delta)
    if hasattr(club, "club") and not isinstance(club, OrdSet):
        club = club.club(delta)
    if not targets:
        return Capture(delta, [])
    m0 = targets[0].min()
    if m0 is not None and club.min0() < m0:
        return NotCaptured(f"min(C_delta)={club.min0()} < min(A_0)={m0}", True)
    n = theta if not delta.is_finite() else min(theta, int(delta))
    pairs = []
    for i in range(min(n, len(targets))):
        A = targets[i]
        found = None
        if isinstance(club, EPSet) and isinstance(A, EPSet):
            hits = intersect(pred_in(club, intersect(club, A)), A)
            y = hits.min()
            if y is None:
                return NotCaptured(f"no consecutive pair of C_delta inside A_{i}", True)
            lo = club.max_below(y)
            iota = intersect(club, _below(lo)).otp()
            found = (i, iota, lo, y)
        else:
            for j in range(search_budget):
                try:
                    lo, hi = club.index(j), club.index(j + 1)
                except IndexOutOfRange:
                    break
                if A.contains(lo) and A.contains(hi):
                    found = (i, Ordinal.of(j), lo, hi)
                    break
            if found is None:
                return NotCaptured(f"no pair for A_{i} among the first {search_budget} indices", False)
        pairs.append(found)
    return Capture(delta, pairs)


def _below(a: Ordinal):
    from .clubs import full_below

    return full_below(a)


def _scan_mono(g: GraphWindow, c: Coloring):
    for a, b in g.sorted_edges():
        if a in c.assign and c.assign.get(a) == c.assign.get(b):
            return MonoEdge(a, b, c.assign[a], "scan")
    return None


@dataclass
class AdversaryTrace:
    classes: dict
    D: list
    A: dict
    delta: Ordinal | None
    note: str

    def to_json(self):
        return {
            "classes": {str(i): [str(a) for a in v] for i, v in sorted(self.classes.items())},
            "D": [str(d) for d in self.D],
            "A": {str(i): [str(a) for a in v] for i, v in sorted(self.A.items())},
            "delta": None if self.delta is None else str(self.delta),
            "note": self.note,
        }


def adversary(rule: EdgeRule, c: Coloring, window, theta: int, trace: list | None = None):
    """Replay the lower-bound argument on the window; a MonoEdge when it closes, else None."""
    rule = _as_rule(rule)
    verts = _window_vertices(rule, window)
    missing = [v for v in verts if v not in c.assign]
    if missing:
        raise PreconditionFailed(f"coloring must be total on the window (misses {missing[0]})")
    g = build_window(rule, verts)
    H = {i: [a for a in verts if c.assign[a] == i] for i in range(theta)}
    mins = {a: rule.club(a).min0() for a in verts}

    def f(i, eta):
        for a in H[i]:
            if mins[a] > eta:
                return a
        return None

    etas = {i: sorted({ZERO} | {mins[a] for a in H[i]}) for i in range(theta)}
    rng = {i: sorted({f(i, e) for e in etas[i]} - {None}) for i in range(theta)}

    # closure points of the f_i; a finite window cannot resolve them, so a limit point b counts
    # once every f_i(eta), eta < b, is defined (the true closure point lies at or above b)
    def in_D(b):
        if not b.is_limit():
            return False
        for i in range(theta):
            for e in etas[i]:
                if e >= b:
                    break
                if f(i, e) is None:
                    return False
        return True

    pts = window.points if isinstance(window, Window) else verts
    D = [b for b in sorted(set(pts) | set(verts)) if in_D(b)]
    A: dict[int, list[Ordinal]] = {}
    for i in range(theta):
        chosen: list[Ordinal] = []
        for a in rng[i]:
            if D and a < D[0]:
                continue
            if chosen and not any(chosen[-1] < d < a for d in D):
                continue
            chosen.append(a)
        A[i] = chosen
    result = None
    delta_used = None
    from .clubs import points as _pts

    targets = [_pts(A[i]) for i in range(theta)]
    if D and all(A[i] for i in range(theta)):
        for delta in verts:
            if delta.is_finite() and int(delta) < theta:
                continue
            cert = captures_check(rule.club(delta), delta, targets, theta, search_budget=len(verts) + 2)
            if not isinstance(cert, Capture):
                continue
            j = c.assign[delta]
            for i, _io, _lo, hi in cert.pairs:
                if i == j and hi in c.assign and c.assign[hi] == j and edge_test(rule, hi, delta):
                    result = MonoEdge(hi, delta, j, "replay")
                    delta_used = delta
                    break
            if result:
                break
    note = "replay closed" if result else "replay did not close; scanned"
    if result is None:
        result = _scan_mono(g, c)
    if trace is not None:
        trace.append(AdversaryTrace(H, D, A, delta_used, note))
    return result


# ---------------------------------------------------------------------------------------
# coloring-number witnesses


def s_mu_set(g: GraphWindow, mu: int) -> list[Ordinal]:
    """{a : |N(b) cap a| >= mu for some window vertex b >= a}."""
    out = []
    vs = g.vertices
    for a in vs:
        for b in vs:
            if b < a:
                continue
            if sum(1 for u in g.adj[b] if u < a) >= mu:
                out.append(a)
                break
    return out


def s_mu_set_rule(rule: EdgeRule, mu: int, window) -> list[Ordinal]:
    return s_mu_set(build_window(rule, window), mu)


def neighborhood_witness(g: GraphWindow, mu: int, max_candidates: int = 16) -> NbrWitness | None:
    """A with |A| = mu and B, |B| > mu, each y in B adjacent to all of A."""
    if mu < 1:
        raise ValueError("mu must be positive")
    cands = sorted((v for v in g.vertices if len(g.adj[v]) >= mu + 1), key=lambda v: (-len(g.adj[v]), v))
    if len(cands) < mu:
        return None
    # greedy: high-degree neighbours of a high-degree vertex
    for y0 in cands[:4]:
        nb = sorted((u for u in g.adj[y0] if len(g.adj[u]) >= mu + 1), key=lambda v: (-len(g.adj[v]), v))
        if len(nb) >= mu:
            A = nb[:mu]
            B = set.intersection(*(g.adj[a] for a in A))
            if len(B) >= mu + 1:
                return NbrWitness(sorted(A), sorted(B), mu)
    for A in combinations(cands[:max_candidates], mu):
        B = set.intersection(*(g.adj[a] for a in A))
        if len(B) >= mu + 1:
            return NbrWitness(sorted(A), sorted(B), mu)
    return None


def interval_ordering(rule: EdgeRule, D: OrdSet, window) -> OrderingWitness:
    """Order by interval [D(i), D(i+1)), then by a minimum back-degree order inside each interval."""
    if rule.kind != "nonrefl":
        raise PreconditionFailed("interval ordering is defined for the non-reflecting graph")
    verts = _window_vertices(rule, window)
    hits = [p for p in verts if D.contains(p) and rule.gamma.contains(p)]
    if hits:
        raise PreconditionFailed(f"D meets Gamma at {hits[0]}")
    if not D.contains(ZERO):
        raise PreconditionFailed("0 must belong to D")
    g = build_window(rule, verts)
    blocks: dict[Ordinal, list[Ordinal]] = {}
    for v in verts:
        start = D.max_below(v + ONE)
        blocks.setdefault(start, []).append(v)
    order: list[Ordinal] = []
    for start in sorted(blocks):
        sub = g.induced(blocks[start])
        _, w = coloring_number(sub)
        order.extend(w.order)
    pos = {v: i for i, v in enumerate(order)}
    back = {v: sum(1 for u in g.adj[v] if pos[u] < pos[v]) for v in order}
    return OrderingWitness(order, back, max(back.values(), default=0))
