"""C-sequence graphs and the non-reflecting coloring graph, as exact finite windows."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .clubs import OrdSet
from .cseq import CSequence, GFilter
from .ordinals import Ordinal, as_ordinal
from .windows import Window


@dataclass(frozen=True)
class EdgeRule:
    """kind 'cseq': the C-sequence graph on G; kind 'nonrefl': beta in Gamma and alpha in C_beta."""

    kind: str
    vec: CSequence
    gamma: GFilter | None = None

    def __post_init__(self):
        if self.kind not in ("cseq", "nonrefl"):
            raise ValueError(f"unknown edge rule {self.kind!r}")
        if self.kind == "nonrefl" and self.gamma is None:
            raise ValueError("nonrefl rule needs Gamma")
        object.__setattr__(self, "_min", {})

    def vertex_ok(self, a: Ordinal) -> bool:
        if self.kind == "cseq":
            return self.vec.in_g(a)
        return a <= self.vec.budget

    def club(self, a: Ordinal) -> OrdSet:
        return self.vec.club(a)

    def min0(self, a: Ordinal) -> Ordinal:
        cache = self._min
        m = cache.get(a)
        if m is None:
            m = self.vec.club(a).min0()
            cache[a] = m
        return m

    def describe(self) -> dict:
        d = {"rule": self.kind, "vec": self.vec.to_json()}
        if self.gamma is not None:
            d["gamma"] = self.gamma.to_json()
        return d


def cseq_rule(vec: CSequence) -> EdgeRule:
    return EdgeRule("cseq", vec)


def nonrefl_rule(vec: CSequence, gamma: GFilter) -> EdgeRule:
    return EdgeRule("nonrefl", vec, gamma)


def _lower_edge(rule: EdgeRule, a: Ordinal, b: Ordinal, cb: OrdSet) -> bool:
    """a < b: is a in N_b?  cb = C_b."""
    if rule.kind == "nonrefl":
        return rule.gamma.contains(b) and cb.contains(a)
    if not cb.contains(a) or not rule.vec.in_g(a):
        return False
    s = cb.sup_below(a)
    return rule.min0(a) > s >= rule.min0(b)


def edge_test(rule: EdgeRule, a, b) -> bool:
    a, b = as_ordinal(a), as_ordinal(b)
    if a == b:
        return False
    if b < a:
        a, b = b, a
    return _lower_edge(rule, a, b, rule.club(b))


def n_set(rule: EdgeRule, b, window: Window | Iterable) -> list[Ordinal]:
    """N_b within the window: members of C_b filtered by the neighbourhood clause."""
    b = as_ordinal(b)
    pts = window.points if isinstance(window, Window) else sorted(as_ordinal(p) for p in window)
    cb = rule.club(b)
    cands = [a for a in pts if a < b and cb.contains(a)]
    if rule.kind == "nonrefl":
        return cands if rule.gamma.contains(b) else []
    lo = cb.min0()
    out = []
    for a in cands:
        if not rule.vec.in_g(a):
            continue
        s = cb.sup_below(a)
        if s >= lo and rule.club(a).min0() > s:
            out.append(a)
    return out


@dataclass
class GraphWindow:
    vertices: tuple[Ordinal, ...]
    edges: frozenset
    provenance: dict = field(default_factory=dict)
    adj: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.vertices = tuple(sorted(set(self.vertices)))
        vs = set(self.vertices)
        norm = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError("loops are not allowed")
            if a not in vs or b not in vs:
                raise ValueError(f"edge {a}-{b} leaves the vertex set")
            norm.add((a, b) if a < b else (b, a))
        self.edges = frozenset(norm)
        self.adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            self.adj[a].add(b)
            self.adj[b].add(a)

    @staticmethod
    def from_edges(vertices, edges, provenance=None) -> "GraphWindow":
        vs = [as_ordinal(v) for v in vertices]
        es = [(as_ordinal(a), as_ordinal(b)) for a, b in edges]
        return GraphWindow(tuple(vs), frozenset(es), provenance or {"rule": "explicit"})

    def __len__(self):
        return len(self.vertices)

    def sorted_edges(self) -> list[tuple[Ordinal, Ordinal]]:
        return sorted(self.edges)

    def lower_neighbors(self, b: Ordinal) -> list[Ordinal]:
        return sorted(a for a in self.adj.get(b, ()) if a < b)

    def induced(self, vs) -> "GraphWindow":
        keep = set(vs)
        return GraphWindow(
            tuple(v for v in self.vertices if v in keep),
            frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
            dict(self.provenance, induced=True),
        )


def build_window(rule: EdgeRule, vertices: Window | Iterable) -> GraphWindow:
    pts = vertices.points if isinstance(vertices, Window) else [as_ordinal(v) for v in vertices]
    vs = sorted(set(v for v in pts if rule.vertex_ok(v)))
    edges = set()
    for j, b in enumerate(vs):
        cb = rule.club(b)
        for a in vs[:j]:
            if _lower_edge(rule, a, b, cb):
                edges.add((a, b))
    prov = rule.describe()
    prov["window"] = vertices.describe() if isinstance(vertices, Window) else [str(v) for v in vs]
    return GraphWindow(tuple(vs), frozenset(edges), prov)


def verify_triangle_free(g: GraphWindow):
    """None, or a triangle (a, b, c) in increasing order."""
    for a, b in sorted(g.edges):
        common = g.adj[a] & g.adj[b]
        if common:
            return tuple(sorted((a, b, min(common))))
    return None


def verify_in_neighborhood(rule: EdgeRule, b, window: Window | Iterable, g: GraphWindow | None = None) -> bool:
    """Lower neighbours of b in the window graph coincide with N_b there (g: the prebuilt window graph)."""
    b = as_ordinal(b)
    pts = window.points if isinstance(window, Window) else [as_ordinal(p) for p in window]
    lower_pts = [p for p in pts if p < b]
    if g is None:
        g = build_window(rule, list(lower_pts) + [b])
    lower = set(g.lower_neighbors(b)) if b in g.adj else set()
    nb = set(a for a in n_set(rule, b, lower_pts) if rule.vertex_ok(a)) if rule.vertex_ok(b) else set()
    return lower == nb


# ----------------------------------------------------------------------------------------
# export


def _q(o: Ordinal) -> str:
    return '"' + str(o) + '"'


def export_dot(g: GraphWindow) -> str:
    lines = ["graph G {"]
    for v in g.vertices:
        lines.append(f"  {_q(v)};")
    for a, b in g.sorted_edges():
        lines.append(f"  {_q(a)} -- {_q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def adjacency_json(g: GraphWindow) -> dict:
    return {
        "vertices": [str(v) for v in g.vertices],
        "adjacency": {str(v): [str(u) for u in sorted(g.adj[v])] for v in g.vertices},
        "edges": [[str(a), str(b)] for a, b in g.sorted_edges()],
        "provenance": g.provenance,
    }


def export_graph(g: GraphWindow, fmt: str = "json") -> str:
    fmt = fmt.lower()
    if fmt == "dot":
        return export_dot(g)
    if fmt in ("json", "jsonadj"):
        return json.dumps(adjacency_json(g), indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def parse_adjacency_json(doc) -> GraphWindow:
    if isinstance(doc, str):
        doc = json.loads(doc)
    vs = [as_ordinal(v) for v in doc["vertices"]]
    edges = set()
    for v, nbrs in doc["adjacency"].items():
        for u in nbrs:
            a, b = as_ordinal(v), as_ordinal(u)
            edges.add((min(a, b), max(a, b)))
    g = GraphWindow(tuple(vs), frozenset(edges), doc.get("provenance", {}))
    listed = {(as_ordinal(a), as_ordinal(b)) for a, b in doc.get("edges", [])}
    if "edges" in doc and listed != set(g.edges):
        raise ValueError("edge list disagrees with adjacency")
    return g
