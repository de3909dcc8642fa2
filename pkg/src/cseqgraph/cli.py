"""Command-line batch harness.

Every report is a JSON object holding the resolved config under "config" and the
library result under "result". Exit codes: 0 ok, 1 verification failure, 2 usage or spec error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import chromatics as chrom
from . import forcing
from .clubs import DescriptorError, club_from_json, full_below, progression, successors_below
from .csgraph import adjacency_json, build_window, cseq_rule, export_graph, nonrefl_rule, parse_adjacency_json
from .cseq import BudgetExceeded, ClubViolation, CSequence, GFilter, SpecError, build_from_spec, check_coherence, vec_window_listing
from .ordinals import OMEGA, ONE, as_ordinal, parse_cardinal
from .suites import SUITES, run_suite
from .windows import Window, explicit_window, parse_window

OUT_DIR_ENV = "CSEQGRAPH_OUT_DIR"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------------------
# input helpers


def _load_json(text_or_path, what: str):
    """Inline JSON, or a path to a JSON file."""
    if text_or_path is None:
        return None
    if isinstance(text_or_path, (dict, list)):
        return text_or_path
    s = str(text_or_path)
    if s.lstrip().startswith(("{", "[")):
        try:
            return _unwrap(json.loads(s))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{what}: invalid inline JSON: {exc}") from None
    p = Path(s)
    if not p.exists():
        raise UsageError(f"{what}: file {s!r} does not exist")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: {s} is not valid JSON: {exc}") from None
    return _unwrap(doc)


def _unwrap(doc):
    """Accept a previous report in place of its payload."""
    if isinstance(doc, dict) and set(doc) == {"config", "result"}:
        return doc["result"]
    return doc


def _vec(cfg) -> CSequence:
    if cfg.get("spec"):
        return build_from_spec(_load_json(cfg["spec"], "--spec"))
    if cfg.get("budget") is None:
        raise UsageError("give --spec FILE or --budget ORD")
    return CSequence(as_ordinal(cfg["budget"]), cfg.get("table") or "canonical", provenance={"rule": cfg.get("table") or "canonical"})


def _window(cfg, vec: CSequence | None = None):
    if cfg.get("points"):
        return explicit_window(cfg["points"].split(","))
    text = cfg.get("window")
    if text is None:
        if vec is None:
            raise UsageError("--window lo..hi is required")
        text = f"0..{vec.budget + ONE}"
    extra = [vec.budget] if vec is not None and vec.budget.terms else []
    try:
        w = parse_window(text, int(cfg.get("width") or 6), extra)
    except ValueError as exc:
        raise UsageError(f"--window: {exc}") from None
    if vec is not None and w.hi > vec.budget + ONE:
        w = Window(w.lo, vec.budget + ONE, w.width, w.extra)
    return w


def _rule(cfg, vec):
    if (cfg.get("rule") or "cseq") == "nonrefl":
        return nonrefl_rule(vec, GFilter.from_json(_load_json(cfg["gamma"], "--gamma") if cfg.get("gamma") else "limits"))
    return cseq_rule(vec)


def _graph(cfg):
    if cfg.get("graph"):
        return parse_adjacency_json(_load_json(cfg["graph"], "--graph")), None, None, None
    vec = _vec(cfg)
    w = _window(cfg, vec)
    rule = _rule(cfg, vec)
    return build_window(rule, w), rule, w, vec


def _clubs(value, what: str):
    doc = _load_json(value, what)
    if doc is None:
        return None
    if not isinstance(doc, list) or (doc and not isinstance(doc[0], (dict, list))):
        doc = [doc]
    return [club_from_json(d, f"{what}[{i}]") for i, d in enumerate(doc)]


def _club(value, what: str):
    doc = _load_json(value, what)
    return None if doc is None else club_from_json(doc, what)


def _condition(value, what: str):
    doc = _load_json(value, what)
    if isinstance(doc, dict) and "condition" in doc:
        doc = doc["condition"]
    return forcing.EMPTY_CONDITION if doc is None else forcing.Condition.from_json(doc)


def _coloring(cfg):
    doc = _load_json(cfg.get("coloring"), "--coloring")
    pal = chrom.PaletteSpec.parse(cfg["palette"]) if cfg.get("palette") else None
    if doc is None:
        return chrom.Coloring({}, pal or chrom.Tail(0))
    c = chrom.Coloring.from_json(doc)
    if pal is not None:
        c.palette = pal
    return c


# ---------------------------------------------------------------------------------------
# command handlers: each returns (result dict, ok flag)


def cmd_cseq_build(cfg):
    vec = _vec(cfg)
    out = {"sequence": vec.to_json()}
    if cfg.get("window") or cfg.get("points"):
        out["listing"] = vec_window_listing(vec, _window(cfg, vec))
    return out, True


def cmd_cseq_check(cfg):
    vec = _vec(cfg)
    chi = parse_cardinal(cfg["chi"]) if cfg.get("chi") else None
    rep = check_coherence(vec, cfg.get("relation") or "sq", _window(cfg, vec), chi)
    return rep.to_json(), rep.ok


def cmd_graph_build(cfg):
    g, *_ = _graph(cfg)
    return adjacency_json(g), True


def cmd_graph_export(cfg):
    g, *_ = _graph(cfg)
    return export_graph(g, cfg.get("format") or "dot"), True


def cmd_color_chr(cfg):
    g, *_ = _graph(cfg)
    cap = cfg.get("cap")
    k, col = chrom.chromatic_number(g, None if cap in (None, 0) else int(cap))
    return {"chr": k, "coloring": col.to_json()}, True


def cmd_color_col(cfg):
    g, *_ = _graph(cfg)
    k, w = chrom.coloring_number(g)
    return {"col": k, "witness": w.to_json()}, True


def cmd_color_suitable(cfg):
    vec = _vec(cfg)
    w = _window(cfg, vec)
    cert = chrom.check_suitable(_rule(cfg, vec), _coloring(cfg), w, parse_cardinal(cfg.get("chi") or "w"))
    return cert.to_json(), isinstance(cert, chrom.Proper)


def cmd_color_extend(cfg):
    vec = _vec(cfg)
    w = _window(cfg, vec)
    c = _coloring(cfg)
    delta = as_ordinal(cfg["delta"]) if cfg.get("delta") else vec.budget + ONE
    out = chrom.extend_suitable(_rule(cfg, vec), c, delta, w, c.palette)
    return out.to_json(), True


def cmd_color_adversary(cfg):
    vec = _vec(cfg)
    cert = chrom.adversary(_rule(cfg, vec), _coloring(cfg), _window(cfg, vec), int(cfg.get("theta") or 2))
    return {"edge": None if cert is None else cert.to_json()}, cert is None


def cmd_capture(cfg):
    vec = _vec(cfg)
    if not cfg.get("delta"):
        raise UsageError("--delta is required")
    targets = _clubs(cfg.get("targets"), "--targets")
    if not targets:
        raise UsageError("--targets must name at least one set")
    delta = as_ordinal(cfg["delta"])
    cert = chrom.captures_check(vec, delta, targets, int(cfg.get("theta") or len(targets)), int(cfg.get("search_budget") or 256))
    return cert.to_json(), True


def _budget(cfg, default="w^3"):
    return as_ordinal(cfg.get("budget") or default)


def cmd_force_extend(cfg):
    import random

    p = _condition(cfg.get("condition"), "--condition")
    A = _club(cfg.get("target"), "--target")
    if A is None:
        raise UsageError("--target SET is required")
    sigma = int(cfg.get("sigma") or 1)
    rng = random.Random(int(cfg["seed"])) if cfg.get("seed") is not None else None
    q = forcing.extension_lemma(p, A, sigma, _budget(cfg), rng)
    bad = forcing.extension_holds(p, q, A, sigma)
    return {"condition": q.to_json(), "contractFailures": bad}, not bad


def cmd_force_project(cfg):
    s0 = _condition(cfg.get("s0"), "--s0")
    s1 = _condition(cfg.get("s1"), "--s1")
    s2 = forcing.project_star(s0, s1)
    checks = {"valid": forcing.validate(s2).ok, "starBelowS0": forcing.leq(s2, s0, star=True), "belowS1": forcing.leq(s2, s1)}
    return {"condition": s2.to_json(), "checks": checks}, all(checks.values())


def _default_targets(budget):
    return [full_below(budget), successors_below(budget), progression(0, OMEGA, 2)]


def cmd_force_game(cfg):
    budget = _budget(cfg)
    kind = cfg.get("adversary") or "extension"
    if kind == "extension":
        adv = forcing.extension_adversary(_clubs(cfg.get("targets"), "--targets") or _default_targets(budget), budget, int(cfg.get("sigma") or 3))
    elif kind == "incomparable":
        adv = forcing.incomparable_adversary(budget, int(cfg.get("after") or 3))
    else:
        raise UsageError(f"--adversary must be extension or incomparable, got {kind!r}")
    tr = forcing.play_game(as_ordinal(cfg.get("length") or "w"), adv, max_stages=int(cfg.get("max_stages") or 40), seed=int(cfg.get("seed") or 0))
    return tr.to_json(), tr.outcome != "IILoses"


def cmd_force_sample(cfg):
    budget = _budget(cfg, "w^2")
    targets = _clubs(cfg.get("targets"), "--targets")
    if targets is None:
        targets = [successors_below(budget), progression(0, OMEGA, 2)]
    tasks = _clubs(cfg.get("club_tasks"), "--club-tasks") or []
    rounds = int(cfg["rounds"]) if cfg.get("rounds") is not None else None
    res = forcing.generic_sample(budget, targets, tasks, int(cfg.get("sigma") or 2), int(cfg.get("seed") or 0), rounds)
    bad = forcing.recertify(res, targets)
    out = res.to_json()
    out["recertifyFailures"] = bad
    return out, not bad


def _suite_job(args):
    name, seed, quick = args
    return run_suite(name, seed, quick)


def cmd_verify_all(cfg):
    seed = int(cfg.get("seed") or 0)
    quick = bool(cfg.get("quick"))
    workers = int(cfg.get("workers") or 1)
    names = sorted(SUITES)
    if cfg.get("only"):
        wanted = cfg["only"].split(",")
        unknown = [n for n in wanted if n not in SUITES]
        if unknown:
            raise UsageError(f"unknown suites {unknown}; choose from {names}")
        names = sorted(wanted)
    jobs = [(n, seed, quick) for n in names]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_suite_job, jobs))
    else:
        results = [_suite_job(j) for j in jobs]
    results.sort(key=lambda r: r["suite"])
    ok = all(r["ok"] for r in results)
    return {"ok": ok, "suites": results}, ok


COMMANDS = {
    ("cseq", "build"): cmd_cseq_build,
    ("cseq", "check"): cmd_cseq_check,
    ("graph", "build"): cmd_graph_build,
    ("graph", "export"): cmd_graph_export,
    ("color", "chr"): cmd_color_chr,
    ("color", "col"): cmd_color_col,
    ("color", "suitable"): cmd_color_suitable,
    ("color", "extend"): cmd_color_extend,
    ("color", "adversary"): cmd_color_adversary,
    ("capture", None): cmd_capture,
    ("force", "extend"): cmd_force_extend,
    ("force", "game"): cmd_force_game,
    ("force", "project"): cmd_force_project,
    ("force", "sample"): cmd_force_sample,
    ("verify", "all"): cmd_verify_all,
}


# ---------------------------------------------------------------------------------------
# parser


def _common(p):
    p.add_argument("--config", help="JSON file whose keys mirror the long flags (dashes as underscores)")
    p.add_argument("--out", help=f"write the report here (relative paths resolve against ${OUT_DIR_ENV} when set)")


def _seq_opts(p):
    p.add_argument("--spec", help="C-sequence spec: JSON file or inline JSON")
    p.add_argument("--budget", help="ordinal budget, e.g. w^2+w")
    p.add_argument("--table", choices=["canonical", "full"], help="default rule when no --spec is given")
    p.add_argument("--window", help="window lo..hi, e.g. 0..w*2+1")
    p.add_argument("--width", type=int, help="coefficient grid width of the window (default 6)")
    p.add_argument("--points", help="explicit comma-separated window points instead of --window")


def _graph_opts(p):
    _seq_opts(p)
    p.add_argument("--rule", choices=["cseq", "nonrefl"], help="edge rule (default cseq)")
    p.add_argument("--gamma", help="Gamma set for the nonrefl rule (default: limits)")
    p.add_argument("--graph", help="adjacency JSON instead of a spec and window")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cseqgraph", description="C-sequence graphs, colorings and forcing conditions at desk scale.")
    top = ap.add_subparsers(dest="group", required=True)

    cseq = top.add_parser("cseq", help="build or check C-sequences").add_subparsers(dest="action", required=True)
    p = cseq.add_parser("build", help="materialize a spec and list clubs in a window")
    _seq_opts(p)
    _common(p)
    p = cseq.add_parser("check", help="coherence report over a window")
    _seq_opts(p)
    p.add_argument("--relation", help="sq, sq_x or sq_chi (default sq)")
    p.add_argument("--chi", help="cardinal parameter, e.g. w or 3")
    _common(p)

    graph = top.add_parser("graph", help="build or export window graphs").add_subparsers(dest="action", required=True)
    p = graph.add_parser("build", help="adjacency JSON of a window graph")
    _graph_opts(p)
    _common(p)
    p = graph.add_parser("export", help="DOT or JSON export")
    _graph_opts(p)
    p.add_argument("--format", choices=["dot", "json"], help="default dot")
    _common(p)

    color = top.add_parser("color", help="chromatic and coloring numbers, suitable colorings").add_subparsers(dest="action", required=True)
    for name, extra in (("chr", ["cap"]), ("col", []), ("suitable", ["coloring", "chi", "palette"]), ("extend", ["coloring", "delta", "palette"]), ("adversary", ["coloring", "theta", "palette"])):
        p = color.add_parser(name)
        _graph_opts(p)
        if "cap" in extra:
            p.add_argument("--cap", type=int, help="largest palette tried (0 for no cap; default 64)")
        if "coloring" in extra:
            p.add_argument("--coloring", help="coloring JSON {palette, assign}")
        if "chi" in extra:
            p.add_argument("--chi", help="bound on color images of neighbourhoods (default w)")
        if "palette" in extra:
            p.add_argument("--palette", help="finite:K, tail:K or explicit:START:STEP")
        if "delta" in extra:
            p.add_argument("--delta", help="extend up to (not including) this ordinal; default budget+1")
        if "theta" in extra:
            p.add_argument("--theta", type=int, help="number of color classes the adversary tracks (default 2)")
        _common(p)

    p = top.add_parser("capture", help="does C_delta capture the target sets")
    _seq_opts(p)
    p.add_argument("--delta", help="the point whose club is checked")
    p.add_argument("--targets", help="JSON list of set descriptors")
    p.add_argument("--theta", type=int, help="pairs required (default: number of targets)")
    p.add_argument("--search-budget", type=int, dest="search_budget")
    _common(p)

    force = top.add_parser("force", help="conditions, extension, games, generic sampling").add_subparsers(dest="action", required=True)
    p = force.add_parser("extend", help="apply the extension lemma")
    p.add_argument("--condition", help="condition JSON (default: the empty condition)")
    p.add_argument("--target", help="set descriptor A")
    p.add_argument("--sigma", type=int)
    p.add_argument("--budget")
    p.add_argument("--seed", type=int)
    _common(p)
    p = force.add_parser("project", help="the projection of s1 onto s0")
    p.add_argument("--s0")
    p.add_argument("--s1")
    _common(p)
    p = force.add_parser("game", help="play the descending game against an adversary")
    p.add_argument("--length", help="game length, at most w*2 (default w)")
    p.add_argument("--adversary", choices=["extension", "incomparable"])
    p.add_argument("--targets")
    p.add_argument("--sigma", type=int)
    p.add_argument("--after", type=int, help="moves before the incomparable adversary defects")
    p.add_argument("--budget")
    p.add_argument("--max-stages", type=int, dest="max_stages")
    p.add_argument("--seed", type=int)
    _common(p)
    p = force.add_parser("sample", help="generic sequence with a capture log")
    p.add_argument("--budget")
    p.add_argument("--targets")
    p.add_argument("--club-tasks", dest="club_tasks")
    p.add_argument("--sigma", type=int)
    p.add_argument("--rounds", type=int)
    p.add_argument("--seed", type=int)
    _common(p)

    verify = top.add_parser("verify", help="seeded acceptance suites").add_subparsers(dest="action", required=True)
    p = verify.add_parser("all")
    p.add_argument("--seed", type=int)
    p.add_argument("--quick", action="store_true", default=None, help="smaller sample sizes")
    p.add_argument("--workers", type=int, help="parallel worker processes (default 1)")
    p.add_argument("--only", help="comma-separated suite names")
    _common(p)
    return ap


def resolve_config(ns: argparse.Namespace) -> dict:
    """Flags override the --config file; unset values are dropped."""
    cfg = {}
    if ns.config:
        doc = _load_json(ns.config, "--config")
        if not isinstance(doc, dict):
            raise UsageError("--config must hold a JSON object")
        cfg.update({k.replace("-", "_"): v for k, v in doc.items()})
    for k, v in vars(ns).items():
        if k in ("config", "group", "action") or v is None:
            continue
        cfg[k] = v
    cfg["command"] = " ".join(x for x in (ns.group, getattr(ns, "action", None)) if x)
    return {k: cfg[k] for k in sorted(cfg)}


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def run(argv=None) -> tuple[int, str, str | None]:
    """(exit code, report text, output path). Usage and spec errors become code 2, never exceptions."""
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), "", None
    out = ns.out
    try:
        cfg = resolve_config(ns)
        out = cfg.get("out")
        handler = COMMANDS[(ns.group, getattr(ns, "action", None))]
        result, ok = handler(cfg)
    except (UsageError, SpecError, DescriptorError, ClubViolation, BudgetExceeded, chrom.PreconditionFailed, forcing.PreconditionFailed, ValueError) as exc:
        return 2, json.dumps({"error": type(exc).__name__, "message": str(exc)}, indent=2, sort_keys=True) + "\n", None
    if isinstance(result, str):
        text = result
    else:
        text = json.dumps({"config": cfg, "result": result}, indent=2, sort_keys=True, default=str) + "\n"
    return (0 if ok else 1), text, out


def main(argv=None) -> int:
    code, text, out = run(argv)
    if code == 2:
        sys.stderr.write(text)
    elif text:
        _emit(text, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
