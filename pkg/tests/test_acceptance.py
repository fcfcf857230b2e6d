"""Acceptance gate: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or ``python tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import random
import sys
import time
from functools import lru_cache

from coxjsj.fixtures import cycle8, e5, star
from coxjsj.gog import GraphOfGroups
from coxjsj.jsj import check_amenable, jsj, t33_violations
from coxjsj.oracle import classification_disagreements, complete_separators, exhaustive_jsj, exhaustive_splitters
from coxjsj.orbifold import VIRTUALLY_FREE, VIRTUALLY_SURFACE, Loop, PathsAndPoints, classify_vertex, orbifold_construction
from coxjsj.randomgen import LABEL_WEIGHTS, SPARSE_WEIGHTS, random_diagram, random_path_union
from coxjsj.splitters import minimal_splitters, structure_violations

RESULTS: list[str] = []
S = frozenset


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS.append(line)
    print(line)


def fam(*sets) -> set:
    return {S(s) for s in sets}


@lru_cache(maxsize=None)
def uniqueness_corpus() -> tuple:
    rng = random.Random(20_500)
    out = []
    for k in range(200):
        weights = SPARSE_WEIGHTS if k % 2 else LABEL_WEIGHTS
        out.append(random_diagram(rng, rng.randint(1, 8), weights))
    return tuple(out)


@lru_cache(maxsize=None)
def classification_corpus() -> tuple:
    rng = random.Random(70_700)
    return tuple(random_diagram(rng, rng.randint(1, 7)) for _ in range(500))


def fixtures() -> list:
    return [star(), cycle8(), e5()]


def test_criterion_1_star_example():
    t0 = time.perf_counter()
    d = star()
    final = jsj(d).final
    elapsed = time.perf_counter() - t0
    ok_sets = final.family() == fam("abc", "acd", "ace", "acf") and len(final.vertices) == 4
    ok_edges = [e for _, _, e in final.edges] == [S("ac")] * 3
    ok = ok_sets and ok_edges and elapsed < 1.0
    report(1, "star splits over {a,c}", ok, f"vertices={sorted(map(sorted, final.vertices))} time={elapsed:.3f}s (<1s)")
    assert ok


def test_criterion_2_cycle8_example():
    t0 = time.perf_counter()
    d = cycle8()
    final = jsj(d).final
    recs = minimal_splitters(d, GraphOfGroups.trivial(d), 0)
    elapsed = time.perf_counter() - t0
    subsets = {r.subset for r in recs}
    crossing = {frozenset((r.subset, p)) for r in recs for p in r.crossing_partners}
    ok = (
        final.family() == fam("abxy", "xyuv", "uvcd")
        and sorted(map(sorted, (e for _, _, e in final.edges))) == [["u", "v"], ["x", "y"]]
        and subsets == fam("xy", "uv", "xv", "uy")
        and crossing == {frozenset((S("xv"), S("uy")))}
        and elapsed < 1.0
    )
    report(2, "eight-generator chain", ok, f"splitters={sorted(''.join(sorted(s)) for s in subsets)} time={elapsed:.3f}s (<1s)")
    assert ok


def test_criterion_3_free_orbifold():
    d = cycle8()
    final = jsj(d).final
    r = classify_vertex(d, final, S("xyuv"))
    s = r.structure if r.kind == "orbifold" else None
    ok = (
        s is not None
        and s.t_part == S("xyuv")
        and s.m_part == S()
        and isinstance(s.shape, PathsAndPoints)
        and {S(p) for p in s.shape.paths} == fam("xu", "yv")
        and not s.shape.points
        and s.classification == VIRTUALLY_FREE
        and s.free_decomposition.family() == fam("xu", "yv")
        and [e for _, _, e in s.free_decomposition.edges] == [S()]
    )
    report(3, "{x,y,u,v} is <x,u> * <y,v>", ok, f"kind={r.kind} shape={s.shape.describe() if s else None}")
    assert ok


def test_criterion_4_surface_orbifold():
    d = e5()
    final = jsj(d).final
    r = classify_vertex(d, final, S("123478"))
    s = r.structure if r.kind == "orbifold" else None
    recs = minimal_splitters(d, final, S("123478"))
    ok = (
        final.family() == fam("123478", "5678")
        and [e for _, _, e in final.edges] == [S("78")]
        and s is not None
        and (s.t_part, s.m_part) == (S("1234"), S("78"))
        and isinstance(s.shape, Loop)
        and s.shape.length == 4
        and s.classification == VIRTUALLY_SURFACE
        and [(x.subset, x.crossing_partners) for x in recs] == [(S("1278"), (S("3478"),)), (S("3478"), (S("1278"),))]
    )
    report(4, "Loop(4) x {7,8} vertex", ok, f"kind={r.kind} shape={s.shape.describe() if s else None}")
    assert ok


def test_criterion_5_uniqueness():
    t0 = time.perf_counter()
    mismatches = []
    corpus = fixtures() + list(uniqueness_corpus())
    for k, d in enumerate(corpus):
        ref = jsj(d).final.family()
        rng = random.Random(k)
        for _ in range(10):
            if jsj(d, random.Random(rng.randrange(2**32))).final.family() != ref:
                mismatches.append((k, "order"))
                break
        if exhaustive_jsj(d) != {ref}:
            mismatches.append((k, "exhaustive"))
    elapsed = time.perf_counter() - t0
    ok = not mismatches and elapsed < 60
    report(5, "order independence", ok, f"diagrams={len(corpus)} mismatches={len(mismatches)} time={elapsed:.1f}s (<60s)")
    assert ok, mismatches[:5]


def test_criterion_6_amenability_and_edge_sets():
    amen = edge = 0
    corpus = fixtures() + list(uniqueness_corpus())
    for d in corpus:
        trace = jsj(d)
        amen += sum(len(check_amenable(d, psi)) for psi in trace.stages)
        edge += len(t33_violations(d, trace.final))
    ok = amen == 0 and edge == 0
    report(6, "amenable stages, unsplit edge sets", ok, f"diagrams={len(corpus)} amenability={amen} edge-set={edge}")
    assert ok


def test_criterion_7_oracle_equivalence():
    t0 = time.perf_counter()
    table = 0
    for d in fixtures() + list(classification_corpus()):
        table += len(classification_disagreements(d))
    splitter = checked = 0
    for d in fixtures() + list(uniqueness_corpus()):
        for psi in jsj(d).stages:
            for v in psi.vertices:
                checked += 1
                fast = {r.subset for r in minimal_splitters(d, psi, v)}
                if fast != set(exhaustive_splitters(d, psi, v)):
                    splitter += 1
    elapsed = time.perf_counter() - t0
    ok = table == 0 and splitter == 0 and elapsed < 120
    report(
        7, "tables vs Gram, splitters vs brute force", ok,
        f"type-disagreements={table} splitter-disagreements={splitter}/{checked} time={elapsed:.1f}s (<120s)",
    )
    assert ok


def test_criterion_8_generator_round_trip():
    failures = []
    rng = random.Random(80_800)
    for k in range(20):
        t = random_path_union(rng)
        c = orbifold_construction(t)
        d = c.diagram
        final = jsj(d).final
        results = [classify_vertex(d, final, v) for v in final.vertices]
        orb = [r.structure for r in results if r.kind == "orbifold"]
        good = (
            len(orb) == 1
            and orb[0].t_part == c.t_part
            and {r.vertex for r in results if r.kind == "rigid"} == set(c.blocks)
            and sorted(map(sorted, (e for _, _, e in final.edges))) == sorted(map(sorted, c.edge_sets))
            and complete_separators(d) == []
        )
        if not good:
            failures.append(k)
    ok = not failures
    report(8, "orbifold generator round trip", ok, f"inputs=20 failures={len(failures)}")
    assert ok, failures


def test_criterion_9_crossing_structure():
    violations = []
    pairs = 0
    corpus = fixtures() + list(uniqueness_corpus())
    for d in corpus:
        for psi in jsj(d).stages:
            for i in range(len(psi.vertices)):
                pairs += sum(len(r.crossing_partners) for r in minimal_splitters(d, psi, i)) // 2
                violations += [
                    v for v in structure_violations(d, psi, i) if v.startswith(("crossing form", "two sides"))
                ]
    ok = not violations
    report(9, "crossing pairs share M, two sides", ok, f"crossing-pairs={pairs} violations={len(violations)}")
    assert ok, violations[:5]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
