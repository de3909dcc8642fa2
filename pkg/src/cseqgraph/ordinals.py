"""Ordinals below epsilon_0 in Cantor normal form, and cardinal tags."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Iterable, Union


class OrdinalParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@total_ordering
class Ordinal:
    """Immutable CNF ordinal: terms are (exponent, coefficient) with exponents strictly decreasing."""

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms: Iterable[tuple["Ordinal", int]] = ()):
        terms = tuple(terms)
        self.terms = terms
        self._key = tuple((e._key, c) for e, c in terms)
        self._hash = hash(self._key)

    # construction -----------------------------------------------------------
    @staticmethod
    def of(n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("negative ordinal")
        if n < len(_SMALL):
            return _SMALL[n]
        return Ordinal(((ZERO, n),))

    @staticmethod
    def omega_pow(e: "OrdLike", c: int = 1) -> "Ordinal":
        e = as_ordinal(e)
        if c == 0:
            return ZERO
        return Ordinal(((e, c),))

    def _check(self) -> None:
        prev = None
        for e, c in self.terms:
            if not isinstance(c, int) or c < 1:
                raise ValueError("coefficients must be positive integers")
            if prev is not None and not e < prev:
                raise ValueError("exponents must strictly decrease")
            prev = e

    # comparisons ---------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key < other._key

    def __hash__(self):
        return self._hash

    def cmp(self, other: "OrdLike") -> int:
        other = as_ordinal(other)
        return (self._key > other._key) - (self._key < other._key)

    # predicates ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def is_successor(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].terms

    def is_limit(self) -> bool:
        return bool(self.terms) and bool(self.terms[-1][0].terms)

    def __int__(self) -> int:
        if not self.terms:
            return 0
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1]

    def __bool__(self) -> bool:
        return bool(self.terms)

    # structure ---------------------------------------------------------------------
    def coef(self, e: "OrdLike") -> int:
        e = as_ordinal(e)
        for ex, c in self.terms:
            if ex == e:
                return c
        return 0

    @property
    def lead_exp(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    def lead_exp_int(self) -> int | None:
        """Leading exponent as an int, None when infinite (and 0 for the ordinal 0)."""
        if not self.terms:
            return 0
        e = self.terms[0][0]
        return int(e) if e.is_finite() else None

    def below_omega_pow(self, k: int) -> bool:
        """self < w^k for a natural k."""
        if not self.terms:
            return k >= 0
        e = self.terms[0][0]
        return e.is_finite() and int(e) < k

    def finite_part(self) -> int:
        if self.terms and not self.terms[-1][0].terms:
            return self.terms[-1][1]
        return 0

    def limit_part(self) -> "Ordinal":
        if self.is_successor():
            return Ordinal(self.terms[:-1])
        return self

    def pred(self) -> "Ordinal":
        if not self.is_successor():
            raise ValueError(f"{self} has no predecessor")
        return self.drop_last(1)

    def succ(self) -> "Ordinal":
        return self + ONE

    def drop_last(self, n: int) -> "Ordinal":
        """Subtract n from the coefficient of the last term (which must have it)."""
        e, c = self.terms[-1]
        if c == n:
            return Ordinal(self.terms[:-1])
        return Ordinal(self.terms[:-1] + ((e, c - n),))

    # arithmetic ----------------------------------------------------------------------
    def __add__(self, other: "OrdLike") -> "Ordinal":
        other = as_ordinal(other)
        if not other.terms:
            return self
        e0, c0 = other.terms[0]
        k0 = e0._key
        out = []
        for e, c in self.terms:
            if e._key > k0:
                out.append((e, c))
            elif e._key == k0:
                return Ordinal(tuple(out) + ((e0, c + c0),) + other.terms[1:])
            else:
                break
        return Ordinal(tuple(out) + other.terms)

    def __radd__(self, other):
        return as_ordinal(other) + self

    def __mul__(self, other: "OrdLike") -> "Ordinal":
        other = as_ordinal(other)
        if not self.terms or not other.terms:
            return ZERO
        ea, ca = self.terms[0]
        acc = ZERO
        for e, c in other.terms:
            if not e.terms:
                part = Ordinal(((ea, ca * c),) + self.terms[1:])
            else:
                part = Ordinal(((ea + e, c),))
            acc = acc + part
        return acc

    def __rmul__(self, other):
        return as_ordinal(other) * self

    def lsub(self, b: "OrdLike") -> "Ordinal":
        """The unique d with b + d = self (requires b <= self)."""
        b = as_ordinal(b)
        if b > self:
            raise ValueError(f"{b} > {self}")
        a = self.terms
        bt = b.terms
        i = 0
        while i < len(bt) and a[i] == bt[i]:
            i += 1
        if i == len(bt):
            return Ordinal(a[i:])
        ea, ca = a[i]
        eb, cb = bt[i]
        if ea == eb:
            return Ordinal(((ea, ca - cb),) + a[i + 1 :])
        return Ordinal(a[i:])

    def divmod_finite(self, c: "Ordinal") -> tuple[int, "Ordinal"]:
        """For 0 < c and self < c*w: the natural q and r < c with self = c*q + r."""
        if not c.terms:
            raise ZeroDivisionError
        if self < c:
            return 0, self
        e, a = c.terms[0]
        q = self.coef(e) // a
        for cand in (q, q - 1, q + 1, q - 2):
            if cand < 0:
                continue
            base = c * Ordinal.of(cand)
            if base <= self:
                r = self.lsub(base)
                if r < c:
                    return cand, r
        raise ValueError(f"{self} is not below {c}*w")

    def cofinality(self) -> "Cofinality":
        if not self.terms:
            return Cofinality.ZERO
        return Cofinality.ONE if self.is_successor() else Cofinality.OMEGA

    def fundamental(self, n: int) -> "Ordinal":
        """Standard fundamental sequence: (b+w^(e+1))[n] = b+w^e*n; (b+w^l)[n] = b+w^(l[n])."""
        if not self.is_limit():
            raise ValueError(f"{self} is not a limit")
        e, _ = self.terms[-1]
        base = self.drop_last(1)
        if e.is_successor():
            return base + Ordinal.omega_pow(e.pred(), n)
        return base + Ordinal.omega_pow(e.fundamental(n))

    # serialization -----------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if not e.terms:
                parts.append(str(c))
                continue
            if e == ONE:
                s = "w"
            elif e.is_finite():
                s = f"w^{int(e)}"
            else:
                s = f"w^({e})"
            parts.append(s if c == 1 else f"{s}*{c}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"

    def to_json(self) -> list:
        return [[e.to_json(), c] for e, c in self.terms]

    @staticmethod
    def from_json(data) -> "Ordinal":
        if isinstance(data, int):
            return Ordinal.of(data)
        if isinstance(data, str):
            return parse_ordinal(data)
        if not isinstance(data, list):
            raise ValueError(f"bad ordinal JSON {data!r}")
        terms = []
        for item in data:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], int)):
                raise ValueError(f"bad ordinal term {item!r}")
            terms.append((Ordinal.from_json(item[0]), item[1]))
        o = Ordinal(terms)
        o._check()
        return o


ZERO = Ordinal()
_SMALL = [ZERO] + [Ordinal(((ZERO, n),)) for n in range(1, 64)]
ONE = _SMALL[1]
OMEGA = Ordinal(((ONE, 1),))

OrdLike = Union[Ordinal, int, str]


def as_ordinal(x: OrdLike) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(x, int):
        return Ordinal.of(x)
    if isinstance(x, str):
        return parse_ordinal(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


def omega_pow(k: OrdLike, c: int = 1) -> Ordinal:
    return Ordinal.omega_pow(k, c)


def ord_add(a: OrdLike, b: OrdLike) -> Ordinal:
    return as_ordinal(a) + as_ordinal(b)


def ord_mul(a: OrdLike, b: OrdLike) -> Ordinal:
    return as_ordinal(a) * as_ordinal(b)


def ord_cmp(a: OrdLike, b: OrdLike) -> int:
    return as_ordinal(a).cmp(b)


class Cofinality(Enum):
    ZERO = 0
    ONE = 1
    OMEGA = 2


def cofinality(a: OrdLike) -> Cofinality:
    return as_ordinal(a).cofinality()


# parser -----------------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(w|ω|omega)|(\^)|(\*)|(\+)|(\()|(\)))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise OrdinalParseError("unexpected character", text, pos)
            kinds = ("int", "w", "^", "*", "+", "(", ")")
            for kind, grp in zip(kinds, m.groups()):
                if grp is not None:
                    self.toks.append((kind, grp, m.start(m.lastindex)))
                    break
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise OrdinalParseError(f"expected {kind!r}, found {tok[1] or 'end'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self) -> Ordinal:
        acc = self.term()
        while self.peek()[0] == "+":
            self.i += 1
            acc = acc + self.term()
        return acc

    def term(self) -> Ordinal:
        val = self.factor()
        while self.peek()[0] == "*":
            self.i += 1
            val = val * self.factor()
        return val

    def factor(self) -> Ordinal:
        kind, txt, pos = self.peek()
        if kind == "int":
            self.i += 1
            return Ordinal.of(int(txt))
        if kind == "(":
            self.i += 1
            v = self.expr()
            self.take(")")
            return v
        if kind == "w":
            self.i += 1
            if self.peek()[0] == "^":
                self.i += 1
                return Ordinal.omega_pow(self.atom())
            return OMEGA
        raise OrdinalParseError(f"unexpected {txt or 'end'!r}", self.text, pos)

    def atom(self) -> Ordinal:
        kind, txt, pos = self.peek()
        if kind == "int":
            self.i += 1
            return Ordinal.of(int(txt))
        if kind == "w":
            self.i += 1
            if self.peek()[0] == "^":
                self.i += 1
                return Ordinal.omega_pow(self.atom())
            return OMEGA
        if kind == "(":
            self.i += 1
            v = self.expr()
            self.take(")")
            return v
        raise OrdinalParseError(f"unexpected {txt or 'end'!r}", self.text, pos)


def parse_ordinal(text: str) -> Ordinal:
    if not isinstance(text, str):
        raise TypeError("ordinal text must be a string")
    p = _Parser(text)
    if not p.toks:
        raise OrdinalParseError("empty ordinal", text, 0)
    v = p.expr()
    if p.i != len(p.toks):
        raise OrdinalParseError(f"trailing input {p.peek()[1]!r}", text, p.peek()[2])
    return v


# cardinal tags ------------------------------------------------------------------------------


@dataclass(frozen=True, order=False)
class CardinalTag:
    """Fin(n) < Aleph0 < AlephSymbolic(1) < AlephSymbolic(2) < ..."""

    kind: str  # "fin" | "aleph0" | "aleph"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("fin", "aleph0", "aleph"):
            raise ValueError(self.kind)
        if self.kind != "aleph0" and self.n < 1:
            raise ValueError("Fin and AlephSymbolic take positive integers")

    @property
    def _rank(self):
        return {"fin": 0, "aleph0": 1, "aleph": 2}[self.kind], self.n

    def __lt__(self, other: "CardinalTag"):
        return self._rank < other._rank

    def __le__(self, other):
        return self._rank <= other._rank

    def __gt__(self, other):
        return self._rank > other._rank

    def __ge__(self, other):
        return self._rank >= other._rank

    def __str__(self):
        if self.kind == "fin":
            return str(self.n)
        if self.kind == "aleph0":
            return "aleph0"
        return f"aleph{self.n}"

    def is_finite(self) -> bool:
        return self.kind == "fin"

    # comparisons against ordinals ------------------------------------------------------
    def exceeds_ordinal(self, o: Ordinal) -> bool:
        """|o| < self, i.e. the ordinal o is below this cardinal (all ordinals here are countable)."""
        if self.kind == "fin":
            return o.is_finite() and int(o) < self.n
        if self.kind == "aleph0":
            return o.is_finite()
        return True

    def bounds_ordinal(self, o: Ordinal) -> bool:
        """o <= self with the cardinal read as its initial ordinal."""
        if self.kind == "fin":
            return o.is_finite() and int(o) <= self.n
        if self.kind == "aleph0":
            return o <= OMEGA
        return True

    def exceeds_cofinality(self, cf: Cofinality) -> bool:
        """cf < self."""
        if cf is Cofinality.ZERO:
            return True
        if cf is Cofinality.ONE:
            return self.kind != "fin" or self.n > 1
        return self.kind == "aleph"


def Fin(n: int) -> CardinalTag:
    return CardinalTag("fin", n)


ALEPH0 = CardinalTag("aleph0")


def AlephSymbolic(k: int) -> CardinalTag:
    return CardinalTag("aleph", k)


def parse_cardinal(text: str | int) -> CardinalTag:
    if isinstance(text, int):
        return Fin(text)
    t = text.strip().lower().replace("_", "")
    if t in ("w", "aleph0", "omega", "ω", "ℵ0"):
        return ALEPH0
    if t.isdigit():
        return Fin(int(t))
    for prefix in ("aleph", "ℵ", "omega", "w"):
        if t.startswith(prefix) and t[len(prefix):].isdigit():
            k = int(t[len(prefix):])
            return ALEPH0 if k == 0 else AlephSymbolic(k)
    raise ValueError(f"cannot parse cardinal {text!r} (use a positive integer, w/aleph0 or alephK)")
