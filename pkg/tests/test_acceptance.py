"""The twelve acceptance criteria, each with its sample size and time limit.

One PASS/FAIL line per criterion is printed in the pytest terminal summary, or directly
when the file is run as a script.
"""

from __future__ import annotations

import time

import pytest

from cseqgraph import suites

SEED = 0
# (suite key, description, time limit in seconds or None)
CRITERIA = [
    ("01_triangle_free", "100 random specs, windows <= 200 vertices, no triangle", 10),
    ("02_chromatic_oracle", "chromatic number vs brute force on 200 graphs <= 9 vertices", 60),
    ("03_coloring_oracle", "coloring number vs all orderings on 100 graphs <= 7 vertices", 60),
    ("04_chr_le_col", "chr <= col on every corpus window", None),
    ("05_postproc_axioms", ">= 500 postprocessing samples, Z acc-preserving", 30),
    ("06_extension_contracts", "1000 extension lemma runs", 30),
    ("07_projection_contracts", "100 projection runs", None),
    ("08_game_safety", "100 games of length <= w*2, <= 40 stages", None),
    ("09_generic_capture", "20 generic samples at budget w^2, 4 targets, sigma 2", None),
    ("10_suitable_contracts", "100 suitable extensions", None),
    ("11_neighborhood_coincidence", "lower neighbourhoods equal N_beta on the corpus", None),
    ("12_witness_soundness", "50 crafted windows incl. K_{3,4}, mu = 3", None),
]
CORPUS_SUITES = {"01_triangle_free", "04_chr_le_col", "11_neighborhood_coincidence"}

RESULTS: dict[str, str] = {}
_corpus = None


def _get_corpus():
    global _corpus
    if _corpus is None:
        _corpus = suites.graph_corpus(SEED, 100, 200)
    return _corpus


def run_criterion(key: str, limit):
    t0 = time.perf_counter()
    fn = suites.SUITES[key]
    res = fn(SEED, corpus=_get_corpus()) if key in CORPUS_SUITES else fn(SEED)
    dt = time.perf_counter() - t0
    in_time = limit is None or dt < limit
    ok = res.ok and in_time
    lim = f"limit {limit} s" if limit else "no limit"
    line = f"{key}: {'PASS' if ok else 'FAIL'}  checked={res.checked}  {dt:.2f} s ({lim})"
    if not res.ok:
        line += f"  first failure: {res.failures[0] if res.failures else 'nothing checked'}"
    elif not in_time:
        line += "  too slow"
    RESULTS[key] = line
    return res, dt, ok


@pytest.mark.parametrize("key,desc,limit", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(key, desc, limit):
    res, dt, ok = run_criterion(key, limit)
    assert res.ok, res.failures[:3]
    if limit is not None:
        assert dt < limit, f"{key} took {dt:.1f} s (limit {limit} s)"


def test_sample_sizes_meet_the_criteria():
    corpus = _get_corpus()
    assert len(corpus) == 100 and max(len(w) for _, w, _ in corpus) <= 200
    assert suites.postproc_axioms(SEED, 500).checked >= 500


if __name__ == "__main__":
    for key, _desc, limit in CRITERIA:
        run_criterion(key, limit)
        print(RESULTS[key])
