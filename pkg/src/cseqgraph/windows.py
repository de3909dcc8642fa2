"""Finite windows into the ordinals: a half-open interval sampled on a CNF grid, plus extras."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .ordinals import ZERO, Ordinal, as_ordinal


@dataclass(frozen=True)
class Window:
    lo: Ordinal
    hi: Ordinal
    width: int = 6
    extra: tuple[Ordinal, ...] = ()
    max_exp: int = 3
    points: tuple[Ordinal, ...] = field(init=False, compare=False, repr=False)
    pointset: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", as_ordinal(self.lo))
        object.__setattr__(self, "hi", as_ordinal(self.hi))
        object.__setattr__(self, "extra", tuple(sorted(set(as_ordinal(e) for e in self.extra))))
        object.__setattr__(self, "points", tuple(sorted(set(self._grid()) | set(self.extra))))
        object.__setattr__(self, "pointset", frozenset(self.points))

    def _grid(self):
        lo, hi = self.lo, self.hi
        if hi <= lo:
            return []
        span = hi.lsub(lo)
        lead = span.lead_exp_int()
        top = self.max_exp if lead is None else min(lead, self.max_exp)
        exps = [Ordinal.of(e) for e in range(top, -1, -1)]
        out = []
        for coefs in product(range(self.width), repeat=len(exps)):
            g = Ordinal(tuple((e, c) for e, c in zip(exps, coefs) if c))
            p = lo + g
            if lo <= p < hi:
                out.append(p)
        return out

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, a):
        return as_ordinal(a) in self.pointset

    def limits(self):
        return [p for p in self.points if p.is_limit()]

    def below(self, a: Ordinal):
        return [p for p in self.points if p < a]

    def describe(self) -> dict:
        d = {"lo": str(self.lo), "hi": str(self.hi), "width": self.width}
        if self.extra:
            d["extra"] = [str(e) for e in self.extra]
        return d


def explicit_window(points) -> Window:
    pts = sorted(set(as_ordinal(p) for p in points))
    return Window(ZERO, ZERO, 1, tuple(pts))


def parse_window(text: str, width: int = 6, extra=()) -> Window:
    """'lo..hi' with ordinal literals, e.g. '0..w*2'."""
    if ".." not in text:
        raise ValueError(f"window must look like lo..hi, got {text!r}")
    lo, hi = text.split("..", 1)
    return Window(as_ordinal(lo.strip()), as_ordinal(hi.strip()), width, tuple(as_ordinal(e) for e in extra))
