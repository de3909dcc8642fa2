"""Postprocessing functions on clubs, the diamond-kit transformers and an axiom verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .clubs import (
    EMPTY,
    EPSet,
    OrdSet,
    Undecidable,
    acc,
    closure,
    difference,
    ep_from_points,
    full_below,
    intersect,
    is_club_in,
    nacc,
    points,
    pred_in,
    restrict_below,
    small,
    tail_from,
    union,
)
from .ordinals import ALEPH0, ONE, ZERO, CardinalTag, Ordinal, as_ordinal
from .windows import Window


class SupUndecidable(Undecidable):
    pass


def in_k(x: OrdSet) -> bool:
    """x is a nonempty club in sup(x) (so it has no maximum)."""
    try:
        if x.is_empty() or x.has_max():
            return False
        return is_club_in(x, x.sup())[0]
    except Undecidable:
        return False


# ---------------------------------------------------------------------------------------
# lazily mapped clubs: range of a map g on x with g(b) in (pred_x(b), b]


class MappedClub(OrdSet):
    """{g(b) : b in x, b >= start}; g is the identity on acc(x) and g(b) lies in (pred_x(b), b]."""

    def __init__(self, x: OrdSet, g: Callable[[Ordinal], Ordinal], start: Ordinal = ZERO, label: str = "g"):
        self.x = x
        self.g = g
        self.start = start
        self.label = label
        self._memo: dict[Ordinal, Ordinal] = {}

    def at(self, b: Ordinal) -> Ordinal:
        v = self._memo.get(b)
        if v is None:
            v = self.g(b)
            self._memo[b] = v
        return v

    def _nx(self, a: Ordinal):
        return self.x.next_at_or_above(a if a > self.start else self.start)

    def contains(self, y):
        b = self._nx(y)
        return b is not None and self.at(b) == y

    def min(self):
        b = self._nx(ZERO)
        return None if b is None else self.at(b)

    def sup(self):
        return self.x.sup()

    def sup_below(self, a):
        if a <= self.start or self.min() is None or self.min() >= a:
            return ZERO
        b = self.x.next_at_or_above(a)
        if b is not None and b >= self.start and self.at(b) < a:
            return self.at(b)
        m = self.x.max_below(a)
        if m is not None and m >= self.start:
            return self.at(m)
        return self.x.sup_below(a)

    def next_at_or_above(self, a):
        b = self._nx(a)
        if b is None:
            return None
        if self.at(b) >= a:
            return self.at(b)
        b2 = self.x.next_at_or_above(b + ONE)
        return None if b2 is None else self.at(b2)

    def otp(self):
        return tail_from(self.x, self.start).otp() if self.start.terms else self.x.otp()

    def index(self, j):
        base = tail_from(self.x, self.start) if self.start.terms else self.x
        return self.at(base.index(j))

    def is_finite(self):
        return False

    def with_start(self, s: Ordinal) -> "MappedClub":
        m = MappedClub(self.x, self.g, max(s, self.start), self.label)
        m._memo = self._memo
        return m

    def describe(self):
        return f"{self.label}[{self.x.describe()} from {self.start}]"


def _least_in_zone(Z: OrdSet, lo: Ordinal, b: Ordinal) -> Ordinal:
    """min(((Z cap b) U {b}) minus lo)."""
    t = Z.next_at_or_above(lo)
    return t if t is not None and t < b else b


def g_value(x: OrdSet, zb: OrdSet, b: Ordinal) -> Ordinal:
    """g_{x,Z}(b) for b in x, with zb = Z_{x,b}."""
    if b.terms and x.sup_below(b) == b:
        return b
    if b == x.min():
        return _least_in_zone(zb, ZERO, b)
    return _least_in_zone(zb, x.max_below(b) + ONE, b)


# ---------------------------------------------------------------------------------------
# the three basic families


def phi_xi(x: OrdSet, xi) -> OrdSet:
    """x minus x(xi) when otp(x) > xi, else x."""
    xi = as_ordinal(xi)
    if not in_k(x) and not isinstance(x, MappedClub):
        return x
    if x.otp() <= xi:
        return x
    cut = x.index(xi)
    if isinstance(x, MappedClub):
        # x(xi) = g(x'(xi)) and every member >= it comes from some b >= x'(xi)
        base = tail_from(x.x, x.start) if x.start.terms else x.x
        return x.with_start(base.index(xi))
    return tail_from(x, cut)


def phi_b(x: OrdSet, B: OrdSet) -> OrdSet:
    """cl(nacc(x) cap B) if that is cofinal in sup(x), else x minus sup(nacc(x) cap B)."""
    if not in_k(x):
        return x
    nb = intersect(nacc(x), B)
    try:
        e = nb.sup()
    except Undecidable as exc:
        raise SupUndecidable(str(exc)) from None
    if e == x.sup():
        return closure(nb)
    return tail_from(x, e)


@dataclass(frozen=True)
class ZFamily:
    """Z_b = overrides[b] if present, else the uniform set; independent of x."""

    uniform: OrdSet = EMPTY
    overrides: tuple = ()  # sorted (b, Z_b) pairs

    def at(self, b: Ordinal) -> OrdSet:
        for k, z in self.overrides:
            if k == b:
                return z
        return self.uniform

    @staticmethod
    def of(uniform: OrdSet = EMPTY, overrides: dict | None = None) -> "ZFamily":
        ov = tuple(sorted(((as_ordinal(k), v) for k, v in (overrides or {}).items()), key=lambda kv: kv[0]))
        return ZFamily(uniform, ov)

    def to_json(self):
        return {
            "uniform": self.uniform.to_json(),
            "overrides": [{"at": str(k), "set": v.to_json()} for k, v in self.overrides],
        }


def g_z(x: OrdSet, Z: ZFamily, window) -> dict:
    """g_{x,Z} on nacc(x), listed at the window points."""
    pts = window.points if isinstance(window, Window) else [as_ordinal(p) for p in window]
    na = nacc(x)
    return {b: g_value(x, Z.at(b), b) for b in pts if na.contains(b)}


def phi_z(x: OrdSet, Z: ZFamily) -> OrdSet:
    """rng(g_{x,Z}).

    With U = Z U x, the uniform part of the range is
    acc(x) U (pred_in(U, x) below sup(x)) U {min U}; overridden points are patched after.
    """
    if not in_k(x):
        return x
    if isinstance(x, EPSet) and isinstance(Z.uniform, EPSet) and small(x.sup()):
        U = union(Z.uniform, x)
        R = union(union(acc(x), restrict_below(pred_in(U, x), x.sup())), points([U.min()]))
        na = nacc(x)
        drop, add = [], []
        for b, zb in Z.overrides:
            if b < x.sup() and na.contains(b):
                drop.append(g_value(x, Z.uniform, b))
                add.append(g_value(x, zb, b))
        if drop:
            R = union(difference(R, ep_from_points(drop)), points(add))
        return R
    return MappedClub(x, lambda b: g_value(x, Z.at(b), b), ZERO, "gZ")


def phi_z_dependent(x: OrdSet, zfun: Callable[[OrdSet, Ordinal], OrdSet]) -> OrdSet:
    """rng(g_{x,Z}) for a family that may depend on x; not a postprocessing function in general."""
    if not in_k(x):
        return x
    return MappedClub(x, lambda b: g_value(x, zfun(x, b), b), ZERO, "gZx")


# ---------------------------------------------------------------------------------------
# diamond kit


def _cantor(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def _uncantor(n: int) -> tuple[int, int]:
    w = int(((8 * n + 1) ** 0.5 - 1) // 2)
    while (w + 1) * (w + 2) // 2 <= n:
        w += 1
    while w * (w + 1) // 2 > n:
        w -= 1
    b = n - w * (w + 1) // 2
    return w - b, b


def pair(a, b) -> Ordinal:
    """Digit-wise Cantor pairing of CNF coefficients: a bijection on every w^k."""
    a, b = as_ordinal(a), as_ordinal(b)
    exps = sorted({int(e) for e, _ in a.terms} | {int(e) for e, _ in b.terms}, reverse=True)
    terms = []
    for e in exps:
        E = Ordinal.of(e)
        c = _cantor(a.coef(E), b.coef(E))
        if c:
            terms.append((E, c))
    return Ordinal(tuple(terms))


def unpair(n) -> tuple[Ordinal, Ordinal]:
    n = as_ordinal(n)
    ta, tb = [], []
    for e, c in n.terms:
        x, y = _uncantor(c)
        if x:
            ta.append((e, x))
        if y:
            tb.append((e, y))
    return Ordinal(tuple(ta)), Ordinal(tuple(tb))


def in_e(b: Ordinal) -> bool:
    """Closure points of the default pairing, f and g: 0, 1 and the powers w^k."""
    if not b.terms:
        return True
    if len(b.terms) != 1:
        return False
    e, c = b.terms[0]
    return c == 1 and e.is_finite()


@dataclass(frozen=True)
class Predictor:
    """S_b from a table; values are 'full' (S_b = b), ('below', c) (S_b = b cap c) or finite lists."""

    default: object = "full"
    table: tuple = ()

    def value(self, b: Ordinal):
        for k, v in self.table:
            if k == b:
                return v
        return self.default

    def S(self, b: Ordinal) -> OrdSet:
        v = self.value(b)
        if v == "full":
            return full_below(b)
        if isinstance(v, tuple) and v and v[0] == "below":
            return full_below(min(b, v[1]))
        return points(p for p in v if p < b)

    @staticmethod
    def parse_value(v):
        if v == "full":
            return "full"
        if isinstance(v, dict) and set(v) == {"below"}:
            return ("below", as_ordinal(v["below"]))
        if isinstance(v, list):
            return tuple(sorted(as_ordinal(p) for p in v))
        raise ValueError(f"bad predictor value {v!r}")

    @staticmethod
    def from_json(d) -> "Predictor":
        d = d or {}
        default = Predictor.parse_value(d.get("default", "full"))
        table = tuple(sorted(((as_ordinal(k), Predictor.parse_value(v)) for k, v in d.get("table", {}).items()), key=lambda kv: kv[0]))
        return Predictor(default, table)


_G_REGISTRY = {"identity": lambda k: k}


@dataclass
class DiamondKit:
    predictor: Predictor = field(default_factory=Predictor)
    rho: Ordinal = field(default_factory=lambda: as_ordinal("w"))
    lam: CardinalTag = ALEPH0
    g_name: str = "identity"
    varphi_table: dict | None = None  # eps -> (a, b); default (eps, 0)

    def g(self, k: int) -> int:
        return _G_REGISTRY[self.g_name](k)

    def f(self, n: int) -> tuple[Ordinal, Ordinal]:
        return unpair(Ordinal.of(n))

    def varphi_inverse(self, target: tuple[Ordinal, Ordinal], below: Ordinal) -> Ordinal | None:
        if self.varphi_table is not None:
            for eps, v in self.varphi_table.items():
                if v == target and eps < below:
                    return eps
            return None
        a, b = target
        return a if not b.terms and a < below else None

    def to_json(self):
        def val(v):
            if v == "full":
                return v
            if isinstance(v, tuple) and v and v[0] == "below":
                return {"below": str(v[1])}
            return [str(p) for p in v]

        return {
            "predictor": {"default": val(self.predictor.default), "table": {str(k): val(v) for k, v in self.predictor.table}},
            "rho": str(self.rho),
            "lambda": str(self.lam),
            "g": self.g_name,
        }

    @staticmethod
    def from_json(d) -> "DiamondKit":
        from .ordinals import parse_cardinal

        vt = d.get("varphi")
        table = None
        if vt is not None:
            table = {as_ordinal(k): (as_ordinal(v[0]), as_ordinal(v[1])) for k, v in vt.items()}
        g = d.get("g", "identity")
        if g not in _G_REGISTRY:
            raise ValueError(f"unknown g {g!r}; known: {sorted(_G_REGISTRY)}")
        return DiamondKit(
            Predictor.from_json(d.get("predictor")),
            as_ordinal(d.get("rho", "w")),
            parse_cardinal(d.get("lambda", "w")),
            g,
            table,
        )


def _n_member(kit: DiamondKit, b: Ordinal) -> bool:
    """for all eps, gamma < b some tau in [gamma, b) has pi(eps, tau) in S_b."""
    if not b.terms:
        return True
    v = kit.predictor.value(b)
    if b == ONE:
        return kit.predictor.S(b).contains(ZERO)
    if v == "full":
        return True
    if isinstance(v, tuple) and v and v[0] == "below":
        return v[1] >= b
    return False  # a finite S_b is bounded in the infinite b


def kit_n(x: OrdSet, kit: DiamondKit, window=None) -> list[Ordinal]:
    """N_x (it is finite: nacc(x) cap E has finitely many points below w^omega)."""
    top = x.sup()
    cands = [ZERO, ONE] + [as_ordinal(f"w^{k}") for k in range(1, 64) if as_ordinal(f"w^{k}") < top]
    na = nacc(x)
    out = [b for b in cands if b < top and na.contains(b) and _n_member(kit, b)]
    if window is not None:
        pts = set(window.points if isinstance(window, Window) else map(as_ordinal, window))
        out = [b for b in out if b in pts]
    return out


def _h(x: OrdSet, kit: DiamondKit, Nx: list[Ordinal], gamma: Ordinal, mode) -> int:
    Sg = kit.predictor.S(gamma)
    cnt = 0
    for b in Nx:
        if b >= gamma:
            break
        if not _same(kit.predictor.S(b), restrict_below(Sg, b)):
            continue
        if mode == "above_rho" and not (restrict_below(x, b).otp() > kit.rho):
            continue
        cnt += 1
    if mode == "mod_lambda":
        return cnt if not kit.lam.is_finite() else cnt % kit.lam.n
    if isinstance(mode, tuple):
        return cnt % mode[1]
    return cnt


def _same(a: OrdSet, b: OrdSet) -> bool:
    from .clubs import set_equal

    return set_equal(a, b)


def _mode_for(x: OrdSet, kit: DiamondKit):
    return "above_rho" if x.otp() > kit.rho else "mod_lambda"


def kit_h(x: OrdSet, kit: DiamondKit, mode, window) -> dict:
    """h_x on nacc(x) at the window points; mode 'auto', 'above_rho', 'mod_lambda' or ('theta', n)."""
    if mode == "auto":
        mode = _mode_for(x, kit)
    Nx = kit_n(x, kit)
    pts = window.points if isinstance(window, Window) else [as_ordinal(p) for p in window]
    na = nacc(x)
    return {b: _h(x, kit, Nx, b, mode) for b in pts if b < x.sup() and na.contains(b)}


def _least_tau(kit: DiamondKit, e: Ordinal, b: Ordinal, lo: Ordinal) -> Ordinal:
    """min({tau in [lo, b) : pi(e, tau) in S_b} U {b}); pi(e, .) is strictly increasing."""
    v = kit.predictor.value(b)
    if v == "full" or (isinstance(v, tuple) and v and v[0] == "below"):
        cap = b if v == "full" else min(b, v[1])
        if lo < b and pair(e, lo) < cap:
            return lo
        return b
    best = b
    for s in v:
        if s >= b:
            continue
        a, t = unpair(s)
        if a == e and lo <= t < best:
            best = t
    return best


def _kit_club(x: OrdSet, kit: DiamondKit, code: Callable[[int], Ordinal], mode) -> OrdSet:
    Nx = kit_n(x, kit)
    xmin = x.min()

    def g(b: Ordinal) -> Ordinal:
        if b.terms and x.sup_below(b) == b:
            return b
        e = code(_h(x, kit, Nx, b, mode))
        lo = ZERO if b == xmin else x.max_below(b) + ONE
        return _least_tau(kit, e, b, lo)

    return MappedClub(x, g, ZERO, "kit")


def kit_phi_rho(x: OrdSet, kit: DiamondKit, window=None) -> OrdSet:
    """Phi_rho o Phi_Z with Z_{x,b} = {tau < b : pi(phi_x(b), tau) in S_b}."""
    if not in_k(x):
        return x
    mode = _mode_for(x, kit)
    Nx = kit_n(x, kit)
    xmin = x.min()

    def g(b: Ordinal) -> Ordinal:
        if b.terms and x.sup_below(b) == b:
            return b
        h = _h(x, kit, Nx, b, mode)
        eps = kit.varphi_inverse(kit.f(kit.g(h)), b)
        e = ZERO if eps is None else eps
        lo = ZERO if b == xmin else x.max_below(b) + ONE
        return _least_tau(kit, e, b, lo)

    return phi_xi(MappedClub(x, g, ZERO, "kit_rho"), kit.rho)


def kit_phi_theta(x: OrdSet, kit: DiamondKit, theta: int, window=None) -> OrdSet:
    """Phi_Z with Z_{x,b} = {tau < b : pi(h_x(b), tau) in S_b}, h_x counted mod theta."""
    if not in_k(x):
        return x
    return _kit_club(x, kit, lambda h: Ordinal.of(h), ("theta", theta))


# ---------------------------------------------------------------------------------------
# descriptors and the verifier


@dataclass(frozen=True)
class PostprocFn:
    """kind: 'xi' (arg ordinal), 'B' (arg set), 'Z' (arg ZFamily), 'compose' (arg tuple, applied left to right),
    'kit_rho' (arg DiamondKit), 'kit_theta' (arg (DiamondKit, theta)), 'zdep' (arg callable)."""

    kind: str
    arg: object

    def __call__(self, x: OrdSet) -> OrdSet:
        k = self.kind
        if k == "xi":
            return phi_xi(x, self.arg)
        if k == "B":
            return phi_b(x, self.arg)
        if k == "Z":
            return phi_z(x, self.arg)
        if k == "compose":
            for f in self.arg:
                x = f(x)
            return x
        if k == "kit_rho":
            return kit_phi_rho(x, self.arg)
        if k == "kit_theta":
            return kit_phi_theta(x, self.arg[0], self.arg[1])
        if k == "zdep":
            return phi_z_dependent(x, self.arg)
        raise ValueError(f"unknown postprocessing kind {k!r}")

    def describe(self) -> str:
        if self.kind == "compose":
            return " then ".join(f.describe() for f in self.arg)
        if self.kind == "xi":
            return f"Phi_xi({self.arg})"
        if self.kind == "B":
            return f"Phi_B({self.arg.describe()})"
        return f"Phi_{self.kind}"


def Xi(xi) -> PostprocFn:
    return PostprocFn("xi", as_ordinal(xi))


def BFn(B: OrdSet) -> PostprocFn:
    return PostprocFn("B", B)


def ZFn(Z: ZFamily) -> PostprocFn:
    return PostprocFn("Z", Z)


def Compose(*fs: PostprocFn) -> PostprocFn:
    return PostprocFn("compose", tuple(fs))


@dataclass
class PostprocReport:
    function: str
    samples: int = 0
    checked_points: int = 0
    violations: list[dict] = field(default_factory=list)
    acc_preserving: bool = True
    exact_samples: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self):
        return {
            "function": self.function,
            "samples": self.samples,
            "exactSamples": self.exact_samples,
            "checkedPoints": self.checked_points,
            "violations": self.violations,
            "accPreserving": self.acc_preserving,
            "ok": self.ok,
        }


def _window_pts(window, top: Ordinal) -> list[Ordinal]:
    pts = window.points if isinstance(window, Window) else [as_ordinal(p) for p in window]
    return [p for p in pts if p < top]


def _is_acc(s: OrdSet, p: Ordinal) -> bool:
    return bool(p.terms) and s.contains(p) and s.sup_below(p) == p


def verify_postproc(phi: PostprocFn, samples) -> PostprocReport:
    """Club, acc-inclusion and restriction coherence on each (x, window) sample."""
    rep = PostprocReport(phi.describe())
    for x, window in samples:
        rep.samples += 1
        y = phi(x)
        top = x.sup()
        exact = isinstance(y, EPSet) and isinstance(x, EPSet)
        pts = _window_pts(window, top)
        if exact:
            rep.exact_samples += 1
            ok, why = is_club_in(y, top)
            if not ok:
                rep.violations.append({"clause": "club", "x": x.describe(), "reason": why})
                continue
            ay, ax = acc(y), acc(x)
            extra = difference(ay, ax)
            if extra is not EMPTY:
                rep.violations.append({"clause": "acc", "x": x.describe(), "at": str(extra.min())})
            if ay is not ax:
                rep.acc_preserving = False
            for ab in ay.members_in(pts):
                rep.checked_points += 1
                if phi(restrict_below(x, ab)) is not restrict_below(y, ab):
                    rep.violations.append({"clause": "coherence", "x": x.describe(), "at": str(ab)})
            continue
        # lazily mapped output: decide every clause at the window points
        if y.sup() != top:
            rep.violations.append({"clause": "club", "x": x.describe(), "reason": f"sup {y.sup()} != {top}"})
            continue
        for p in pts:
            rep.checked_points += 1
            lim_y = bool(p.terms) and y.sup_below(p) == p and y.has_member_below(p)
            if lim_y and not y.contains(p):
                rep.violations.append({"clause": "club", "x": x.describe(), "at": str(p), "reason": "not closed"})
            is_ax = _is_acc(x, p)
            if lim_y and y.contains(p) and not is_ax:
                rep.violations.append({"clause": "acc", "x": x.describe(), "at": str(p)})
            if is_ax and not (lim_y and y.contains(p)):
                rep.acc_preserving = False
            if lim_y and y.contains(p):
                z = phi(restrict_below(x, p))
                below = [q for q in pts if q < p]
                if any(z.contains(q) != y.contains(q) for q in below) or z.sup() != p:
                    rep.violations.append({"clause": "coherence", "x": x.describe(), "at": str(p)})
    return rep
