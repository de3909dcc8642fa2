"""C-sequences over a budget ordinal: construction, coherence, boundedness, support, threads."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from .clubs import EMPTY, OrdSet, club_from_json, full_below, fundamental_club, is_club_in, singleton
from .ordcore import (
    ALEPH0,
    CardinalTag,
    Window,
    acc,
    relation_holds,
    restrict_below,
    set_equal,
    suc_sigma,
    tail_from,
)
from .ordinals import OMEGA, ZERO, Ordinal, as_ordinal, omega_pow, parse_cardinal

DEFAULT_CAP = omega_pow(OMEGA)


class SpecError(ValueError):
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class ClubViolation(ValueError):
    def __init__(self, alpha: Ordinal, reason: str):
        super().__init__(f"C_{alpha} is not a club in {alpha}: {reason}")
        self.alpha = alpha
        self.reason = reason


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class GFilter:
    """Vertex filter G: 'all' ordinals <= budget, only 'limits', or an explicit set."""

    kind: str = "all"
    members: OrdSet | None = None

    def contains(self, a: Ordinal) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "limits":
            return a.is_limit()
        return self.members.contains(a)

    def to_json(self):
        if self.kind == "set":
            return self.members.to_json()
        return self.kind

    @staticmethod
    def from_json(d, path="$.gFilter") -> "GFilter":
        if d is None or d == "all":
            return GFilter("all")
        if d == "limits":
            return GFilter("limits")
        try:
            return GFilter("set", club_from_json(d, path))
        except ValueError as exc:
            raise SpecError(str(exc), path) from None


class CSequence:
    """C_a for every a <= budget; limits use overrides, else the default rule."""

    def __init__(
        self,
        budget,
        default: str = "canonical",
        overrides: dict | None = None,
        successor_convention: bool = True,
        g_filter: GFilter | None = None,
        provenance: dict | None = None,
        cap: Ordinal = DEFAULT_CAP,
    ):
        self.budget = as_ordinal(budget)
        if self.budget > cap:
            raise BudgetExceeded(f"budget {self.budget} exceeds cap {cap}")
        if default not in ("canonical", "full"):
            raise ValueError(f"default rule must be canonical or full, got {default!r}")
        self.default = default
        self.overrides = dict(overrides or {})
        self.successor_convention = successor_convention
        self.g_filter = g_filter or GFilter()
        self.provenance = provenance or {"rule": default}
        self._cache: dict[Ordinal, OrdSet] = {}

    def club(self, a) -> OrdSet:
        a = as_ordinal(a)
        c = self._cache.get(a)
        if c is not None:
            return c
        if a > self.budget:
            raise BudgetExceeded(f"{a} is above the budget {self.budget}")
        if not a.is_limit():
            if a.terms and self.successor_convention:
                c = singleton(a.pred())
            else:
                c = EMPTY
        elif a in self.overrides:
            c = self.overrides[a]
        elif self.default == "full":
            c = full_below(a)
        else:
            c = fundamental_club(a)
        self._cache[a] = c
        return c

    __getitem__ = club

    def in_g(self, a: Ordinal) -> bool:
        return a <= self.budget and self.g_filter.contains(a)

    def with_filter(self, g: GFilter) -> "CSequence":
        return CSequence(self.budget, self.default, self.overrides, self.successor_convention, g, self.provenance)

    def to_json(self) -> dict:
        return {
            "budget": str(self.budget),
            "default": self.default,
            "overrides": [{"at": str(a), "club": self.overrides[a].to_json()} for a in sorted(self.overrides)],
            "gFilter": self.g_filter.to_json(),
            "successorConvention": self.successor_convention,
        }


def build_canonical(budget, cap: Ordinal = DEFAULT_CAP) -> CSequence:
    return CSequence(budget, "canonical", cap=cap, provenance={"rule": "canonical"})


def build_full(budget, cap: Ordinal = DEFAULT_CAP) -> CSequence:
    return CSequence(budget, "full", cap=cap, provenance={"rule": "full"})


def build_from_spec(doc, cap: Ordinal = DEFAULT_CAP) -> CSequence:
    """Ingest a spec document; SpecError carries the JSON path of the offending entry."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    allowed = {"budget", "default", "overrides", "gFilter", "successorConvention", "top", "chi"}
    for k in doc:
        if k not in allowed:
            raise SpecError(f"unknown field {k!r}", f"$.{k}")
    if "budget" not in doc:
        raise SpecError("missing field 'budget'")
    try:
        budget = as_ordinal(doc["budget"])
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc), "$.budget") from None
    if budget > cap:
        raise BudgetExceeded(f"budget {budget} exceeds cap {cap}")
    default = doc.get("default", "canonical")
    if default not in ("canonical", "full"):
        raise SpecError("default must be 'canonical' or 'full'", "$.default")
    succ = doc.get("successorConvention", True)
    if not isinstance(succ, bool):
        raise SpecError("must be a boolean", "$.successorConvention")
    overrides: dict[Ordinal, OrdSet] = {}
    entries = doc.get("overrides", [])
    if not isinstance(entries, list):
        raise SpecError("must be a list", "$.overrides")
    for i, entry in enumerate(entries):
        path = f"$.overrides[{i}]"
        if not isinstance(entry, dict) or "at" not in entry or "club" not in entry:
            raise SpecError("entry needs 'at' and 'club'", path)
        try:
            a = as_ordinal(entry["at"])
        except (ValueError, TypeError) as exc:
            raise SpecError(str(exc), path + ".at") from None
        if not a.is_limit():
            raise SpecError(f"{a} is not a limit ordinal", path + ".at")
        if a > budget:
            raise SpecError(f"{a} is above the budget {budget}", path + ".at")
        if a in overrides:
            raise SpecError(f"duplicate entry for {a}", path + ".at")
        club = club_from_json(entry["club"], path + ".club")
        ok, reason = is_club_in(club, a)
        if not ok:
            raise ClubViolation(a, reason)
        overrides[a] = club
    g = GFilter.from_json(doc.get("gFilter"))
    return CSequence(budget, default, overrides, succ, g, {"rule": "spec", "spec": doc}, cap=cap)


# ----------------------------------------------------------------------------------------
# reports


@dataclass
class CoherenceReport:
    relation: str
    chi: str | None
    window: dict
    violations: list[tuple[Ordinal, Ordinal]] = field(default_factory=list)
    checked_pairs: int = 0
    undecided: list[tuple[Ordinal, Ordinal, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.undecided

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "chi": self.chi,
            "window": self.window,
            "checkedPairs": self.checked_pairs,
            "violations": [[str(a), str(b)] for a, b in self.violations],
            "undecided": [[str(a), str(b), r] for a, b, r in self.undecided],
            "ok": self.ok,
        }


def _limits_in(vec: CSequence, window: Window) -> list[Ordinal]:
    return [a for a in window.points if a.is_limit() and a <= vec.budget]


def check_coherence(vec: CSequence, relation: str, window: Window, chi: CardinalTag | None = None) -> CoherenceReport:
    """Test every (a, abar) with abar in acc(C_a), both in the window."""
    from .clubs import Undecidable

    rep = CoherenceReport(relation, None if chi is None else str(chi), window.describe())
    for a in _limits_in(vec, window):
        ca = vec.club(a)
        acc_a = acc(ca)
        for abar in acc_a.members_in(window.below(a)):
            rep.checked_pairs += 1
            try:
                if not relation_holds(relation, vec.club(abar), ca, chi):
                    rep.violations.append((a, abar))
            except Undecidable as exc:
                rep.undecided.append((a, abar, str(exc)))
    return rep


@dataclass
class BoundedReport:
    mu: str
    window: dict
    violations: list[tuple[Ordinal, Ordinal]] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "window": self.window,
            "checked": self.checked,
            "violations": [{"at": str(a), "otp": str(o)} for a, o in self.violations],
            "bounded": self.ok,
        }


def check_bounded(vec: CSequence, mu: CardinalTag, window: Window) -> BoundedReport:
    rep = BoundedReport(str(mu), window.describe())
    for a in _limits_in(vec, window):
        rep.checked += 1
        o = vec.club(a).otp()
        if not mu.bounds_ordinal(o):
            rep.violations.append((a, o))
    return rep


def support_of(vec: CSequence, window: Window) -> list[Ordinal]:
    out = []
    for d in _limits_in(vec, window):
        cd = vec.club(d)
        good = True
        for g in acc(cd).members_in(window.below(d)):
            if not set_equal(restrict_below(cd, g), vec.club(g)):
                good = False
                break
        if good:
            out.append(d)
    return out


def thread_check(d: OrdSet, vec: CSequence, window: Window) -> Ordinal | None:
    """Least a in acc(D) in the window with D cap a != C_a."""
    for a in acc(d).members_in(window.points):
        if a > vec.budget:
            break
        if not set_equal(restrict_below(d, a), vec.club(a)):
            return a
    return None


def check_g_hypotheses(vec: CSequence, window: Window, chi: CardinalTag = ALEPH0) -> list[dict]:
    """Window check of the graph hypotheses: C_a misses G off G; G is closed under coherent acc points."""
    problems = []
    pts = [p for p in window.points if p <= vec.budget]
    for a in pts:
        ca = vec.club(a)
        if not vec.in_g(a):
            hit = [p for p in ca.members_in(window.below(a)) if vec.in_g(p)]
            if hit:
                problems.append({"hypothesis": "off-G clubs avoid G", "at": str(a), "witness": str(hit[0])})
            continue
        # only accumulation points of cofinality chi matter; at desk scale that is all of them for chi = w
        if not a.is_limit() or chi != ALEPH0:
            continue
        for abar in acc(ca).members_in(window.below(a)):
            if not vec.in_g(abar) or not set_equal(vec.club(abar), restrict_below(ca, abar)):
                problems.append({"hypothesis": "coherent acc points stay in G", "at": str(a), "witness": str(abar)})
    return problems


def sigma_hits(club: OrdSet, target: OrdSet, sigma: int, window: Window) -> list[Ordinal]:
    """beta in club (window) with suc_sigma(club minus beta) inside the target."""
    out = []
    for b in club.members_in(window.points):
        tail = tail_from(club, b)
        block = suc_sigma(tail, sigma)
        if block.otp() == Ordinal.of(sigma) and all(target.contains(p) for p in block.to_list()):
            out.append(b)
    return out


def parse_chi(text) -> CardinalTag:
    return parse_cardinal(text)


def vec_window_listing(vec: CSequence, window: Window, sample: int = 8) -> list[dict]:
    out = []
    for a in _limits_in(vec, window):
        c = vec.club(a)
        first = []
        for i, p in enumerate(c.iter_from(ZERO)):
            if i >= sample:
                break
            first.append(str(p))
        out.append({"at": str(a), "otp": str(c.otp()), "first": first})
    return out


__all__ = [
    "BudgetExceeded",
    "ClubViolation",
    "CSequence",
    "CoherenceReport",
    "GFilter",
    "SpecError",
    "build_canonical",
    "build_from_spec",
    "build_full",
    "check_bounded",
    "check_coherence",
    "check_g_hypotheses",
    "sigma_hits",
    "support_of",
    "thread_check",
]
