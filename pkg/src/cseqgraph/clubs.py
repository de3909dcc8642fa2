"""Sets of ordinals with exact queries.

Below w^omega every set we build is *hereditarily eventually periodic*: a set S below
w^k is a sequence of blocks B_n (n < w), each a set below w^(k-1), with
S = union of w^(k-1)*n + B_n, and the block sequence is a finite prefix followed by a
repeating cycle.  Nodes are hash-consed, so equality is identity and every boolean
operation, acc/nacc/cl, sup, order type and indexing is computed exactly.

Larger sets (the full interval below some bound >= w^omega, fundamental
omega-sequences, explicit finite sets) have their own classes; algebra that mixes them
falls back to membership-only derived sets.
"""

from __future__ import annotations

from math import lcm
from typing import Callable, Iterable, Iterator, Sequence

from .ordinals import ONE, OMEGA, ZERO, Ordinal, as_ordinal, omega_pow


class IndexOutOfRange(IndexError):
    pass


class Undecidable(RuntimeError):
    """A query that the generator at hand cannot certify."""


class NotRepresentable(Undecidable):
    pass


# ---------------------------------------------------------------------------------------
# base interface


class OrdSet:
    """Queryable set of ordinals."""

    exact = True

    def __contains__(self, a) -> bool:
        return self.contains(as_ordinal(a))

    def contains(self, a: Ordinal) -> bool:
        raise NotImplementedError

    def is_empty(self) -> bool:
        return self.min() is None

    def min(self) -> Ordinal | None:
        raise Undecidable(f"min of {self.describe()}")

    def min0(self) -> Ordinal:
        """min with the convention min(emptyset) = 0."""
        m = self.min()
        return ZERO if m is None else m

    def sup(self) -> Ordinal:
        raise Undecidable(f"sup of {self.describe()}")

    def sup_below(self, a: Ordinal) -> Ordinal:
        raise Undecidable(f"sup below {a} of {self.describe()}")

    def has_member_below(self, a: Ordinal) -> bool:
        m = self.min()
        return m is not None and m < a

    def max_below(self, a: Ordinal) -> Ordinal | None:
        """max(S cap a) when it exists."""
        if not self.has_member_below(a):
            return None
        s = self.sup_below(a)
        if s < a and self.contains(s):
            return s
        return None

    def has_max(self) -> bool:
        if self.is_empty():
            return False
        return self.contains(self.sup())

    def next_at_or_above(self, a: Ordinal) -> Ordinal | None:
        raise Undecidable(f"successor query on {self.describe()}")

    def otp(self) -> Ordinal:
        raise Undecidable(f"order type of {self.describe()}")

    def index(self, j) -> Ordinal:
        raise Undecidable(f"indexing of {self.describe()}")

    def is_finite(self) -> bool:
        return self.otp().is_finite()

    def members_in(self, points: Iterable[Ordinal]) -> list[Ordinal]:
        return [p for p in points if self.contains(p)]

    def iter_from(self, a: Ordinal = ZERO, limit: int = 10**6) -> Iterator[Ordinal]:
        cur = self.next_at_or_above(a)
        n = 0
        while cur is not None and n < limit:
            yield cur
            n += 1
            cur = self.next_at_or_above(cur + ONE)

    def to_list(self, limit: int = 10**5) -> list[Ordinal]:
        if not self.is_finite():
            raise Undecidable("infinite set cannot be listed")
        return list(self.iter_from(ZERO, limit))

    def describe(self) -> str:
        return type(self).__name__

    def to_json(self):
        raise NotRepresentable(f"{self.describe()} has no descriptor")


# ---------------------------------------------------------------------------------------
# ordinal helpers for w^omega-small ordinals

_EXP = [Ordinal.of(j) for j in range(64)]
_EXPKEY = [e._key for e in _EXP]


def _exp(j: int) -> Ordinal:
    return _EXP[j] if j < 64 else Ordinal.of(j)


def _split(a: Ordinal, j: int) -> tuple[int, Ordinal]:
    """For a < w^(j+1): (n, r) with a = w^j*n + r and r < w^j."""
    t = a.terms
    if t and t[0][0]._key == (_EXPKEY[j] if j < 64 else Ordinal.of(j)._key):
        return t[0][1], Ordinal(t[1:])
    return 0, a


def _join(j: int, n: int, r: Ordinal) -> Ordinal:
    """w^j*n + r for r < w^j."""
    if n == 0:
        return r
    return Ordinal(((_exp(j), n),) + r.terms)


def small(a: Ordinal) -> bool:
    """a < w^omega."""
    return not a.terms or a.terms[0][0].is_finite()


def _level_of(a: Ordinal) -> int:
    """Least k with a < w^k."""
    if not a.terms:
        return 0
    return int(a.terms[0][0]) + 1


# ---------------------------------------------------------------------------------------
# eventually periodic nodes

_TABLE: dict = {}
_MEMO: dict = {}
MAX_BLOCKS = 200_000


class EPSet(OrdSet):
    __slots__ = ("level", "prefix", "cycle", "has0", "_c")

    def __init__(self, level, prefix, cycle, has0):
        self.level = level
        self.prefix = prefix
        self.cycle = cycle
        self.has0 = has0
        self._c = {}

    # canonical construction is through _make/_leaf only
    def __repr__(self):
        return f"EPSet({self.show()})"

    def __reduce__(self):
        return (from_tree, (self.tree(),))

    # queries --------------------------------------------------------------------------
    def contains(self, a: Ordinal) -> bool:
        node = self
        while True:
            k = node.level
            if k == 0:
                return node.has0 and not a.terms
            if not a.below_omega_pow(k):
                return False
            n, a = _split(a, k - 1)
            t = len(node.prefix)
            node = node.prefix[n] if n < t else node.cycle[(n - t) % len(node.cycle)]

    def is_empty(self) -> bool:
        return self is EMPTY

    def min(self) -> Ordinal | None:
        c = self._c
        if "min" not in c:
            c["min"] = _min(self)
        return c["min"]

    def sup(self) -> Ordinal:
        c = self._c
        if "sup" not in c:
            c["sup"] = _sup(self)
        return c["sup"]

    def sup_below(self, a: Ordinal) -> Ordinal:
        return _sup_below(self, as_ordinal(a))

    def next_at_or_above(self, a: Ordinal) -> Ordinal | None:
        return _next(self, as_ordinal(a))

    def otp(self) -> Ordinal:
        return _otp(self)

    def index(self, j) -> Ordinal:
        j = as_ordinal(j)
        try:
            return _index(self, j)
        except (ValueError, IndexOutOfRange):
            raise IndexOutOfRange(f"index {j} out of range for set of order type {self.otp()}") from None

    def is_finite(self) -> bool:
        c = self._c
        if "fin" not in c:
            if self.level == 0:
                c["fin"] = True
            else:
                c["fin"] = all(b is EMPTY for b in self.cycle) and all(b.is_finite() for b in self.prefix)
        return c["fin"]

    def cofinal_top(self) -> bool:
        """sup = w^level (the set is unbounded in its own level)."""
        return self.level >= 1 and any(b is not EMPTY for b in self.cycle)

    def has_max(self) -> bool:
        return self is not EMPTY and self.contains(self.sup())

    # serialization ------------------------------------------------------------------------
    def tree(self):
        if self.level == 0:
            return 1 if self.has0 else 0
        return {"k": self.level, "pre": [b.tree() for b in self.prefix], "cyc": [b.tree() for b in self.cycle]}

    def to_json(self):
        if self.is_finite():
            return {"explicit": [str(p) for p in self.to_list()]}
        return {"ep": self.tree()}

    def show(self, limit: int = 12) -> str:
        items = []
        for i, p in enumerate(self.iter_from(ZERO)):
            if i >= limit:
                items.append("...")
                break
            items.append(str(p))
        return "{" + ", ".join(items) + "}"

    def describe(self) -> str:
        return "EPSet" + self.show(6)


def _leaf(has0: bool) -> EPSet:
    key = (0, has0)
    node = _TABLE.get(key)
    if node is None:
        node = EPSet(0, (), (), has0)
        _TABLE[key] = node
    return node


EMPTY = _leaf(False)
ZSET = _leaf(True)  # {0}
_EC = (EMPTY,)


def _min_period(cyc: tuple) -> tuple:
    n = len(cyc)
    for p in range(1, n):
        if n % p == 0 and all(cyc[i] is cyc[i % p] for i in range(p, n)):
            return cyc[:p]
    return cyc


def _make(k: int, prefix: Sequence[EPSet], cycle: Sequence[EPSet]) -> EPSet:
    cycle = _min_period(tuple(cycle))
    prefix = list(prefix)
    while prefix and prefix[-1] is cycle[-1]:
        prefix.pop()
        cycle = (cycle[-1],) + cycle[:-1]
    if len(cycle) == 1 and cycle[0] is EMPTY and len(prefix) <= 1:
        return prefix[0] if prefix else EMPTY
    if len(prefix) + len(cycle) > MAX_BLOCKS:
        raise NotRepresentable("set description too large")
    prefix = tuple(prefix)
    key = (k, tuple(map(id, prefix)), tuple(map(id, cycle)))
    node = _TABLE.get(key)
    if node is None:
        node = EPSet(k, prefix, cycle, False)
        _TABLE[key] = node
    return node


def _pc(node: EPSet, k: int):
    if node.level == k:
        return node.prefix, node.cycle
    return (node,), _EC


def _at(pre, cyc, n):
    t = len(pre)
    return pre[n] if n < t else cyc[(n - t) % len(cyc)]


def _min(node):
    k = node.level
    if k == 0:
        return ZERO if node.has0 else None
    for n, b in enumerate(node.prefix + node.cycle):
        if b is not EMPTY:
            return _join(k - 1, n, b.min())
    return None


def _sup(node):
    k = node.level
    if k == 0:
        return ZERO
    if node.cofinal_top():
        return omega_pow(k)
    for n in range(len(node.prefix) - 1, -1, -1):
        b = node.prefix[n]
        if b is not EMPTY:
            return omega_pow(k - 1, n) + b.sup()
    return ZERO


def _last_nonempty_before(pre, cyc, n):
    t, p = len(pre), len(cyc)
    m = n - 1
    steps = 0
    while m >= t and steps < p:
        if cyc[(m - t) % p] is not EMPTY:
            return m
        m -= 1
        steps += 1
    m = min(m, t - 1)
    while m >= 0:
        if pre[m] is not EMPTY:
            return m
        m -= 1
    return None


def _next_nonempty_after(pre, cyc, n):
    t, p = len(pre), len(cyc)
    m = n + 1
    while m < t:
        if pre[m] is not EMPTY:
            return m
        m += 1
    for _ in range(p):
        if cyc[(m - t) % p] is not EMPTY:
            return m
        m += 1
    return None


def _sup_below(node, a):
    k = node.level
    if not a.below_omega_pow(k):
        return node.sup()
    if k == 0:
        return ZERO
    n, r = _split(a, k - 1)
    pre, cyc = node.prefix, node.cycle
    b = _at(pre, cyc, n)
    if b is not EMPTY and b.min() < r:
        return omega_pow(k - 1, n) + _sup_below(b, r)
    m = _last_nonempty_before(pre, cyc, n)
    if m is None:
        return ZERO
    return omega_pow(k - 1, m) + _at(pre, cyc, m).sup()


def _next(node, a):
    k = node.level
    if not a.below_omega_pow(k):
        return None
    if k == 0:
        return ZERO if node.has0 else None
    n, r = _split(a, k - 1)
    pre, cyc = node.prefix, node.cycle
    b = _at(pre, cyc, n)
    if b is not EMPTY:
        v = _next(b, r)
        if v is not None:
            return _join(k - 1, n, v)
    m = _next_nonempty_after(pre, cyc, n)
    if m is None:
        return None
    return _join(k - 1, m, _at(pre, cyc, m).min())


def _osum(items: Iterable[Ordinal]) -> Ordinal:
    acc = ZERO
    for o in items:
        acc = acc + o
    return acc


def _otp(node):
    c = node._c
    if "otp" in c:
        return c["otp"]
    if node.level == 0:
        v = ONE if node.has0 else ZERO
    else:
        v = _osum(_otp(b) for b in node.prefix)
        cyc = _osum(_otp(b) for b in node.cycle)
        if cyc.terms:
            v = v + cyc * OMEGA
    c["otp"] = v
    return v


def _cycle_otp(node):
    c = node._c
    if "cyc_otp" not in c:
        c["cyc_otp"] = _osum(_otp(b) for b in node.cycle)
    return c["cyc_otp"]


def _index(node, j):
    k = node.level
    if k == 0:
        if node.has0 and not j.terms:
            return ZERO
        raise IndexOutOfRange
    for n, b in enumerate(node.prefix):
        o = _otp(b)
        if j < o:
            return _join(k - 1, n, _index(b, j))
        j = j.lsub(o)
    c = _cycle_otp(node)
    if not c.terms:
        raise IndexOutOfRange
    q, rem = j.divmod_finite(c)
    t, p = len(node.prefix), len(node.cycle)
    for i, b in enumerate(node.cycle):
        o = _otp(b)
        if rem < o:
            return _join(k - 1, t + q * p + i, _index(b, rem))
        rem = rem.lsub(o)
    raise IndexOutOfRange


# boolean algebra ------------------------------------------------------------------------

_OPS = {
    "or": lambda x, y: x or y,
    "and": lambda x, y: x and y,
    "diff": lambda x, y: x and not y,
    "xor": lambda x, y: x != y,
}


def _bin(op: str, a: EPSet, b: EPSet, k: int) -> EPSet:
    key = (op, id(a), id(b), k)
    r = _MEMO.get(key)
    if r is not None:
        return r
    if k == 0:
        r = ZSET if _OPS[op](a.has0, b.has0) else EMPTY
    else:
        pa, ca = _pc(a, k)
        pb, cb = _pc(b, k)
        t = max(len(pa), len(pb))
        p = lcm(len(ca), len(cb))
        blocks = [_bin(op, _at(pa, ca, n), _at(pb, cb, n), k - 1) for n in range(t + p)]
        r = _make(k, blocks[:t], blocks[t:])
    _MEMO[key] = r
    return r


def ep_op(op: str, a: EPSet, b: EPSet) -> EPSet:
    return _bin(op, a, b, max(a.level, b.level))


def full_level(k: int) -> EPSet:
    """The interval [0, w^k)."""
    node = ZSET
    for j in range(1, k + 1):
        node = _make(j, (), (node,))
    return node


def ep_singleton(a: Ordinal) -> EPSet:
    a = as_ordinal(a)
    if not small(a):
        raise NotRepresentable(f"{a} is not below w^omega")
    if not a.terms:
        return ZSET
    k = _level_of(a)
    n, r = _split(a, k - 1)
    if n > MAX_BLOCKS:
        raise NotRepresentable("coefficient too large")
    return _make(k, (EMPTY,) * n + (ep_singleton(r),), _EC)


def ep_below(a: Ordinal) -> EPSet:
    """[0, a)."""
    a = as_ordinal(a)
    if not small(a):
        raise NotRepresentable(f"{a} is not below w^omega")
    if not a.terms:
        return EMPTY
    k = _level_of(a)
    n, r = _split(a, k - 1)
    if n > MAX_BLOCKS:
        raise NotRepresentable("coefficient too large")
    if not r.terms and n == 1:
        return full_level(k - 1)
    return _make(k, (full_level(k - 1),) * n + (ep_below(r),), _EC)


def ep_from_points(points: Iterable[Ordinal]) -> EPSet:
    pts = sorted(set(as_ordinal(p) for p in points))
    if not pts:
        return EMPTY
    if not all(small(p) for p in pts):
        raise NotRepresentable("points not below w^omega")
    return _from_sorted(pts, _level_of(pts[-1]))


def _from_sorted(pts: list[Ordinal], k: int) -> EPSet:
    if k == 0:
        return ZSET if pts else EMPTY
    groups: dict[int, list[Ordinal]] = {}
    for p in pts:
        n, r = _split(p, k - 1)
        groups.setdefault(n, []).append(r)
    top = max(groups)
    if top > MAX_BLOCKS:
        raise NotRepresentable("coefficient too large")
    blocks = [EMPTY] * (top + 1)
    for n, rs in groups.items():
        blocks[n] = _from_sorted(rs, k - 1)
    return _make(k, blocks, _EC)


def ep_embed(x: EPSet, shift: Ordinal) -> EPSet:
    """{shift + a : a in x}, for shift a multiple of w^(x.level)."""
    shift = as_ordinal(shift)
    if not small(shift):
        raise NotRepresentable("shift not below w^omega")
    y = x
    for e, c in reversed(shift.terms):
        ei = int(e)
        if ei < y.level:
            raise ValueError("shift must be a multiple of w^level")
        if c > MAX_BLOCKS:
            raise NotRepresentable("coefficient too large")
        y = _make(ei + 1, (EMPTY,) * c + (y,), _EC)
    return y


def ep_progression(base: Ordinal, step: Ordinal, offset: Ordinal = ZERO, count=None) -> EPSet:
    """{base + step*i + offset : i < count}; count None means omega."""
    base, step, offset = as_ordinal(base), as_ordinal(step), as_ordinal(offset)
    if not step.terms:
        raise ValueError("step must be positive")
    if count is not None:
        return ep_from_points(base + step * Ordinal.of(i) + offset for i in range(int(count)))
    v0 = base + offset
    v1 = base + step + offset
    if not (small(v1) and small(step)):
        raise NotRepresentable("progression not below w^omega")
    e = int(step.terms[0][0])
    a = step.terms[0][1]
    hi = Ordinal(tuple(t for t in v1.terms if int(t[0]) > e))
    u = v1.coef(e)
    low = Ordinal(tuple(t for t in v1.terms if int(t[0]) < e))
    if u - 1 > MAX_BLOCKS or a > MAX_BLOCKS:
        raise NotRepresentable("coefficient too large")
    rel = _make(e + 1, (EMPTY,) * u, (ep_singleton(low),) + (EMPTY,) * (a - 1))
    return ep_op("or", ep_embed(rel, hi), ep_singleton(v0))


def from_tree(tree) -> EPSet:
    if tree in (0, 1, False, True):
        return ZSET if tree else EMPTY
    if not isinstance(tree, dict) or set(tree) != {"k", "pre", "cyc"}:
        raise ValueError(f"bad EP tree {tree!r}")
    k = tree["k"]
    pre = [from_tree(t) for t in tree["pre"]]
    cyc = [from_tree(t) for t in tree["cyc"]]
    if not isinstance(k, int) or k < 1 or not cyc:
        raise ValueError("bad EP tree level or empty cycle")
    for b in pre + cyc:
        if b.level > k - 1:
            raise ValueError("EP child level too high")
    return _make(k, pre, cyc)


# limit points and predecessor patterns -------------------------------------------------


def _cofinal_at(b: EPSet, j: int) -> bool:
    return b.level == j and b.cofinal_top()


def _limpts(node: EPSet, k: int) -> EPSet:
    """{a < w^k : a > 0 and sup(node cap a) = a}."""
    key = ("lim", id(node), k)
    r = _MEMO.get(key)
    if r is not None:
        return r
    if node.level < k:
        r = _limpts(node, node.level)
        if node.level >= 1 and node.cofinal_top():
            r = ep_op("or", r, ep_singleton(omega_pow(node.level)))
    elif k == 0:
        r = EMPTY
    else:
        pre, cyc = node.prefix, node.cycle
        t, p = len(pre), len(cyc)
        blocks = []
        for n in range(t + 1 + p):
            lim = _limpts(_at(pre, cyc, n), k - 1)
            if n >= 1 and k >= 2 and _cofinal_at(_at(pre, cyc, n - 1), k - 1):
                lim = _bin("or", lim, ZSET, k - 1)
            blocks.append(lim)
        r = _make(k, blocks[: t + 1], blocks[t + 1 :])
    _MEMO[key] = r
    return r


def ep_limit_points(s: EPSet) -> EPSet:
    return _limpts(s, s.level)


def _pred_in(s: EPSet, tset: EPSet, k: int) -> EPSet:
    key = ("pred", id(s), id(tset), k)
    r = _MEMO.get(key)
    if r is not None:
        return r
    if k == 0 or s is EMPTY:
        r = EMPTY
    else:
        ps, cs = _pc(s, k)
        pt, ct = _pc(tset, k)
        t = max(len(ps), len(pt))
        p = lcm(len(cs), len(ct))
        blocks = []
        last = None
        for n in range(t + 2 * p):
            sb = _at(ps, cs, n)
            pb = EMPTY
            if sb is not EMPTY:
                pb = _pred_in(sb, _at(pt, ct, n), k - 1)
                if last is not None:
                    sm = _at(ps, cs, last)
                    if sm.has_max() and _at(pt, ct, last).contains(sm.sup()):
                        pb = _bin("or", pb, ep_singleton(sb.min()), k - 1)
                last = n
            blocks.append(pb)
        r = _make(k, blocks[: t + p], blocks[t + p :])
    _MEMO[key] = r
    return r


def ep_pred_in(s: EPSet, tset: EPSet) -> EPSet:
    """{y in s : max(s cap y) exists and lies in tset}."""
    return _pred_in(s, tset, max(s.level, tset.level))


# ---------------------------------------------------------------------------------------
# sets at or beyond w^omega


class FullBelow(OrdSet):
    """The interval [0, bound) for an arbitrary bound."""

    def __init__(self, bound: Ordinal):
        self.bound = as_ordinal(bound)

    def contains(self, a):
        return a < self.bound

    def min(self):
        return ZERO if self.bound.terms else None

    def sup(self):
        return self.bound

    def sup_below(self, a):
        return min(a, self.bound)

    def next_at_or_above(self, a):
        return a if a < self.bound else None

    def otp(self):
        return self.bound

    def index(self, j):
        j = as_ordinal(j)
        if j < self.bound:
            return j
        raise IndexOutOfRange(f"index {j} out of range")

    def is_finite(self):
        return self.bound.is_finite()

    def describe(self):
        return f"[0,{self.bound})"

    def to_json(self):
        return {"full": str(self.bound)}


class OmegaSeq(OrdSet):
    """A strictly increasing omega-sequence n -> term(n) with a limit sup."""

    def __init__(self, term: Callable[[int], Ordinal], sup: Ordinal, descriptor: dict):
        self.term = term
        self._sup = sup
        self.descriptor = descriptor
        self._cache: dict[int, Ordinal] = {}

    def t(self, n: int) -> Ordinal:
        v = self._cache.get(n)
        if v is None:
            v = self.term(n)
            self._cache[n] = v
        return v

    def _first_at_or_above(self, a: Ordinal) -> int:
        """Least n with term(n) >= a (a < sup)."""
        if self.t(0) >= a:
            return 0
        hi = 1
        while self.t(hi) < a:
            hi *= 2
            if hi > 1 << 60:
                raise Undecidable("search exhausted")
        lo = hi // 2
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if self.t(mid) < a:
                lo = mid
            else:
                hi = mid
        return hi

    def contains(self, a):
        if a >= self._sup:
            return False
        return self.t(self._first_at_or_above(a)) == a

    def min(self):
        return self.t(0)

    def sup(self):
        return self._sup

    def sup_below(self, a):
        if a >= self._sup:
            return self._sup
        n = self._first_at_or_above(a)
        return ZERO if n == 0 else self.t(n - 1)

    def next_at_or_above(self, a):
        if a >= self._sup:
            return None
        return self.t(self._first_at_or_above(a))

    def otp(self):
        return OMEGA

    def index(self, j):
        j = as_ordinal(j)
        if not j.is_finite():
            raise IndexOutOfRange(f"index {j} out of range")
        return self.t(int(j))

    def is_finite(self):
        return False

    def describe(self):
        return f"omega-sequence{self.descriptor}"

    def to_json(self):
        return dict(self.descriptor)


class Explicit(OrdSet):
    """A finite set of arbitrary ordinals."""

    def __init__(self, points: Iterable[Ordinal]):
        self.points = tuple(sorted(set(as_ordinal(p) for p in points)))
        self._set = frozenset(self.points)

    def contains(self, a):
        return a in self._set

    def min(self):
        return self.points[0] if self.points else None

    def sup(self):
        return self.points[-1] if self.points else ZERO

    def sup_below(self, a):
        best = ZERO
        for p in self.points:
            if p < a:
                best = p
        return best

    def next_at_or_above(self, a):
        for p in self.points:
            if p >= a:
                return p
        return None

    def otp(self):
        return Ordinal.of(len(self.points))

    def index(self, j):
        j = as_ordinal(j)
        if j.is_finite() and int(j) < len(self.points):
            return self.points[int(j)]
        raise IndexOutOfRange(f"index {j} out of range")

    def is_finite(self):
        return True

    def describe(self):
        return "{" + ", ".join(map(str, self.points)) + "}"

    def to_json(self):
        return {"explicit": [str(p) for p in self.points]}


class Derived(OrdSet):
    """Membership-only set; other queries are undecidable unless a finite bound is known."""

    exact = False

    def __init__(self, pred: Callable[[Ordinal], bool], description: str):
        self.pred = pred
        self.description = description

    def contains(self, a):
        return self.pred(a)

    def describe(self):
        return self.description


# ---------------------------------------------------------------------------------------
# constructors and algebra (dispatching)


def points(pts: Iterable) -> OrdSet:
    pts = [as_ordinal(p) for p in pts]
    if all(small(p) for p in pts):
        return ep_from_points(pts)
    return Explicit(pts)


def singleton(a) -> OrdSet:
    return points([a])


def full_below(bound) -> OrdSet:
    bound = as_ordinal(bound)
    if small(bound):
        return ep_below(bound)
    return FullBelow(bound)


def interval(lo, hi) -> OrdSet:
    lo, hi = as_ordinal(lo), as_ordinal(hi)
    if small(hi):
        return ep_op("diff", ep_below(hi), ep_below(min(lo, hi)))
    return Derived(lambda a: lo <= a < hi, f"[{lo},{hi})")


def progression(base, step, offset=ZERO, count=None) -> OrdSet:
    base, step, offset = as_ordinal(base), as_ordinal(step), as_ordinal(offset)
    try:
        return ep_progression(base, step, offset, count)
    except NotRepresentable:
        if count is not None:
            return Explicit(base + step * Ordinal.of(i) + offset for i in range(int(count)))
        return OmegaSeq(
            lambda n: base + step * Ordinal.of(n) + offset,
            base + step * OMEGA,
            {"progression": {"base": str(base), "step": str(step), "offset": str(offset), "count": "w"}},
        )


def fundamental_club(a) -> OrdSet:
    """{a[n] : n < omega}: the canonical omega-type club in a limit a."""
    a = as_ordinal(a)
    if not a.is_limit():
        raise ValueError(f"{a} is not a limit ordinal")
    e, _ = a.terms[-1]
    if small(a):
        return ep_progression(a.drop_last(1), omega_pow(e.pred()), ZERO, None)
    return OmegaSeq(a.fundamental, a, {"fundamental": str(a)})


def successors_below(bound) -> OrdSet:
    bound = as_ordinal(bound)
    if small(bound):
        full = ep_below(bound)
        return ep_op("diff", ep_op("diff", full, ep_limit_points(full_level(_level_of(bound)))), ZSET)
    return Derived(lambda a: a < bound and a.is_successor(), f"successors below {bound}")


def limits_below(bound) -> OrdSet:
    bound = as_ordinal(bound)
    if small(bound):
        return ep_op("and", ep_below(bound), ep_limit_points(full_level(_level_of(bound))))
    return Derived(lambda a: a < bound and a.is_limit(), f"limits below {bound}")


def _both_ep(a, b):
    return isinstance(a, EPSet) and isinstance(b, EPSet)


def union(a: OrdSet, b: OrdSet) -> OrdSet:
    if _both_ep(a, b):
        return ep_op("or", a, b)
    if a.is_finite() and b.is_finite() and a.exact and b.exact:
        return points(list(a.to_list()) + list(b.to_list()))
    return Derived(lambda x: a.contains(x) or b.contains(x), f"({a.describe()} U {b.describe()})")


def intersect(a: OrdSet, b: OrdSet) -> OrdSet:
    if _both_ep(a, b):
        return ep_op("and", a, b)
    return Derived(lambda x: a.contains(x) and b.contains(x), f"({a.describe()} & {b.describe()})")


def difference(a: OrdSet, b: OrdSet) -> OrdSet:
    if _both_ep(a, b):
        return ep_op("diff", a, b)
    return Derived(lambda x: a.contains(x) and not b.contains(x), f"({a.describe()} - {b.describe()})")


def restrict_below(s: OrdSet, a) -> OrdSet:
    """s cap a."""
    a = as_ordinal(a)
    if isinstance(s, EPSet):
        if not small(a):
            return s
        return ep_op("and", s, ep_below(a))
    if isinstance(s, FullBelow):
        return full_below(min(a, s.bound))
    if isinstance(s, Explicit):
        return points(p for p in s.points if p < a)
    if isinstance(s, OmegaSeq):
        if a >= s.sup():
            return s
        return points(s.t(n) for n in range(s._first_at_or_above(a)))
    return Derived(lambda x: x < a and s.contains(x), f"({s.describe()} below {a})")


def tail_from(s: OrdSet, a) -> OrdSet:
    """s minus a = {y in s : y >= a}."""
    a = as_ordinal(a)
    if isinstance(s, EPSet):
        if not small(a):
            return EMPTY
        return ep_op("diff", s, ep_below(a))
    if isinstance(s, OmegaSeq):
        if a >= s.sup():
            return EMPTY
        n0 = s._first_at_or_above(a)
        return OmegaSeq(lambda n: s.t(n + n0), s.sup(), {"tail": {"of": s.to_json(), "from": str(a)}})
    if isinstance(s, Explicit):
        return points(p for p in s.points if p >= a)
    if isinstance(s, FullBelow):
        return interval(a, s.bound)
    return Derived(lambda x: x >= a and s.contains(x), f"({s.describe()} from {a})")


def limit_points(s: OrdSet) -> OrdSet:
    """{a > 0 : sup(s cap a) = a}, all of them below sup(s)+1."""
    if isinstance(s, EPSet):
        return ep_limit_points(s)
    if isinstance(s, (OmegaSeq, Explicit)):
        if isinstance(s, OmegaSeq):
            return singleton(s.sup())
        return EMPTY
    if isinstance(s, FullBelow):
        return limits_below(s.bound + ONE)
    return Derived(lambda x: x.terms != () and s.sup_below(x) == x, f"limpts({s.describe()})")


def acc(s: OrdSet) -> OrdSet:
    if isinstance(s, EPSet):
        return ep_op("and", s, ep_limit_points(s))
    if isinstance(s, (OmegaSeq, Explicit)):
        return EMPTY
    if isinstance(s, FullBelow):
        return limits_below(s.bound)
    return Derived(lambda x: s.contains(x) and x.terms != () and s.sup_below(x) == x, f"acc({s.describe()})")


def nacc(s: OrdSet) -> OrdSet:
    if isinstance(s, (OmegaSeq, Explicit)):
        return s
    return difference(s, acc(s))


def acc_plus(s: OrdSet) -> OrdSet:
    """{a < sup(s) : sup(s cap a) = a > 0}."""
    if isinstance(s, EPSet):
        return restrict_below(ep_limit_points(s), s.sup())
    if isinstance(s, (OmegaSeq, Explicit)):
        return EMPTY
    if isinstance(s, FullBelow):
        return limits_below(s.bound)
    return Derived(lambda x: x.terms != () and s.sup_below(x) == x and x < s.sup(), f"acc+({s.describe()})")


def closure(s: OrdSet) -> OrdSet:
    """cl(s) = s U acc+(s)."""
    if isinstance(s, EPSet):
        return ep_op("or", s, acc_plus(s))
    if isinstance(s, (OmegaSeq, Explicit, FullBelow)):
        return s
    return union(s, acc_plus(s))


def pred_in(s: OrdSet, t: OrdSet) -> OrdSet:
    if _both_ep(s, t):
        return ep_pred_in(s, t)

    def member(y):
        if not s.contains(y):
            return False
        m = s.max_below(y)
        return m is not None and t.contains(m)

    return Derived(member, f"predin({s.describe()},{t.describe()})")


def suc_sigma(s: OrdSet, sigma: int) -> OrdSet:
    """{s(j+1) : j < sigma, j+1 < otp(s)}."""
    out = []
    for j in range(sigma):
        try:
            out.append(s.index(j + 1))
        except IndexOutOfRange:
            break
    return points(out)


def set_equal(a: OrdSet, b: OrdSet) -> bool:
    if a is b:
        return True
    if _both_ep(a, b):
        return False
    if isinstance(a, FullBelow) and isinstance(b, FullBelow):
        return a.bound == b.bound
    for x, y in ((a, b), (b, a)):
        if isinstance(x, EPSet) and isinstance(y, FullBelow):
            return False  # bounds at or beyond w^omega are never EP
        if isinstance(x, EPSet) and isinstance(y, Explicit):
            return x.is_finite() and tuple(x.to_list()) == y.points
    if isinstance(a, Explicit) and isinstance(b, Explicit):
        return a.points == b.points
    if isinstance(a, OmegaSeq) and isinstance(b, OmegaSeq):
        if a.sup() != b.sup():
            return False
        if a.descriptor == b.descriptor:
            return True
    if a.exact and b.exact:
        if a.is_finite() != b.is_finite():
            return False
        if a.sup() != b.sup():
            return False
    raise Undecidable(f"cannot certify equality of {a.describe()} and {b.describe()}")


def is_club_in(s: OrdSet, a) -> tuple[bool, str]:
    """Club check: s subset of a, cofinal in a, closed below a.  Returns (ok, reason)."""
    a = as_ordinal(a)
    if not a.terms:
        return (s.is_empty(), "C_0 must be empty")
    if a.is_successor():
        p = a.pred()
        return s.sup() == p and s.contains(p), "must have the predecessor as its maximum"
    if s.is_empty():
        return False, "empty"
    if s.sup() != a or s.contains(a):
        return False, f"not cofinal in {a} (sup is {s.sup()})"
    cl_extra = difference(acc_plus(s), s)
    if isinstance(cl_extra, EPSet):
        if cl_extra is not EMPTY:
            return False, f"not closed: misses limit point {cl_extra.min()}"
        return True, "ok"
    if isinstance(s, (OmegaSeq, Explicit, FullBelow)):
        return True, "ok"
    raise Undecidable(f"cannot certify closure of {s.describe()}")


# ---------------------------------------------------------------------------------------
# JSON descriptors


class DescriptorError(ValueError):
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def club_from_json(d, path: str = "$") -> OrdSet:
    try:
        return _club_from_json(d, path)
    except DescriptorError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise DescriptorError(str(exc), path) from None


def _club_from_json(d, path):
    if isinstance(d, list):
        return points(as_ordinal(x) for x in d)
    if not isinstance(d, dict) or len(d) != 1:
        raise DescriptorError("set descriptor must be a list or a one-key object", path)
    (kind, v), = d.items()
    sub = f"{path}.{kind}"
    if kind == "explicit":
        if not isinstance(v, list):
            raise DescriptorError("explicit expects a list", sub)
        return points(as_ordinal(x) for x in v)
    if kind == "full":
        return full_below(as_ordinal(v))
    if kind == "fundamental":
        return fundamental_club(as_ordinal(v))
    if kind == "interval":
        return interval(as_ordinal(v[0]), as_ordinal(v[1]))
    if kind == "successors":
        return successors_below(as_ordinal(v))
    if kind == "limits":
        return limits_below(as_ordinal(v))
    if kind == "progression":
        count = v.get("count", "w")
        cnt = None if count in ("w", "omega", None) else int(count)
        return progression(as_ordinal(v.get("base", "0")), as_ordinal(v["step"]), as_ordinal(v.get("offset", "0")), cnt)
    if kind == "ep":
        return from_tree(v)
    if kind in ("union", "intersection", "difference"):
        parts = [club_from_json(p, f"{sub}[{i}]") for i, p in enumerate(v)]
        if not parts:
            raise DescriptorError("needs at least one part", sub)
        f = {"union": union, "intersection": intersect, "difference": difference}[kind]
        acc_set = parts[0]
        for p in parts[1:]:
            acc_set = f(acc_set, p)
        return acc_set
    if kind == "closure":
        return closure(club_from_json(v, sub))
    if kind == "below":
        inner, bound = v
        return restrict_below(club_from_json(inner, sub), as_ordinal(bound))
    raise DescriptorError(f"unknown set kind {kind!r}", path)
