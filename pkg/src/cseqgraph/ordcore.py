"""Ordinal core: arithmetic, set operators and the coherence relations between clubs.

The arithmetic lives in :mod:`ordinals`, the queryable sets in :mod:`clubs` and the
window sampler in :mod:`windows`; this module re-exports them and adds the relations.
"""

from __future__ import annotations

from .clubs import (  # noqa: F401
    EMPTY,
    DescriptorError,
    EPSet,
    Explicit,
    FullBelow,
    IndexOutOfRange,
    NotRepresentable,
    OmegaSeq,
    OrdSet,
    Undecidable,
    acc,
    acc_plus,
    closure,
    club_from_json,
    difference,
    full_below,
    fundamental_club,
    intersect,
    interval,
    is_club_in,
    limits_below,
    nacc,
    points,
    pred_in,
    progression,
    restrict_below,
    set_equal,
    singleton,
    successors_below,
    suc_sigma,
    tail_from,
    union,
)
from .ordinals import (  # noqa: F401
    ALEPH0,
    OMEGA,
    ONE,
    ZERO,
    AlephSymbolic,
    CardinalTag,
    Cofinality,
    Fin,
    Ordinal,
    OrdinalParseError,
    as_ordinal,
    cofinality,
    omega_pow,
    ord_add,
    ord_cmp,
    ord_mul,
    parse_cardinal,
    parse_ordinal,
)
from .windows import Window, explicit_window, parse_window  # noqa: F401


def rel_sq(d: OrdSet, c: OrdSet) -> bool:
    """d is an initial segment of c: d = c cap beta for some beta."""
    if d.is_empty():
        return True
    s = d.sup()
    beta = s + ONE if d.contains(s) else s
    return set_equal(d, restrict_below(c, beta))


def rel_sq_x(d: OrdSet, c: OrdSet, chi: CardinalTag) -> bool:
    """d initial segment of c, or cf(sup d) < chi."""
    if chi.exceeds_cofinality(d.sup().cofinality()):
        return True
    return rel_sq(d, c)


def successor_naccs(c: OrdSet) -> bool:
    """Every member of nacc(c) is a successor ordinal."""
    n = nacc(c)
    if isinstance(n, EPSet):
        lim = limits_below(n.sup() + ONE)
        return intersect(n, lim).is_empty() and not n.contains(ZERO)
    if isinstance(n, Explicit):
        return all(p.is_successor() for p in n.points)
    raise Undecidable(f"cannot certify that nacc of {c.describe()} consists of successors")


def rel_sq_chi(d: OrdSet, c: OrdSet, chi: CardinalTag) -> bool:
    """d initial segment of c, or (otp(c) < chi and nacc(c) consists of successors)."""
    if rel_sq(d, c):
        return True
    if not chi.exceeds_ordinal(c.otp()):
        return False
    return successor_naccs(c)


RELATIONS = {"sq": "Sq", "sqx": "SqX", "sq_x": "SqX", "sqchi": "SqChi", "sq_chi": "SqChi"}


def relation_holds(name: str, d: OrdSet, c: OrdSet, chi: CardinalTag | None = None) -> bool:
    kind = RELATIONS.get(name.lower(), name)
    if kind == "Sq":
        return rel_sq(d, c)
    if chi is None:
        raise ValueError(f"relation {kind} needs chi")
    if kind == "SqX":
        return rel_sq_x(d, c, chi)
    if kind == "SqChi":
        return rel_sq_chi(d, c, chi)
    raise ValueError(f"unknown relation {name!r}")
