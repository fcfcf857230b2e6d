"""Slow, independent verifiers: Gram spectra, brute-force splitters, exhaustive JSJ search.

Nothing here reuses the bitmask machinery of the main path.  Separation is
computed with networkx on the presentation graph and virtual abelianness is
decided from eigenvalues of the Gram matrix.
"""

from __future__ import annotations

import itertools
import math
import random
from functools import lru_cache

import networkx as nx
import numpy as np

from coxjsj.diagram import CoxeterDiagram
from coxjsj.errors import OracleRefusal
from coxjsj.gog import GraphOfGroups

POSITIVE_DEFINITE = "PositiveDefinite"
POSITIVE_SEMIDEFINITE = "PositiveSemidefinite"
INDEFINITE = "Indefinite"

TOL = 1e-9
MAX_SPLITTER_VERTEX = 16
MAX_JSJ_GENERATORS = 9


def gram_matrix(d: CoxeterDiagram, a=None) -> np.ndarray:
    """``-cos(pi/m)`` off the diagonal, ``-1`` for unrelated pairs, ``1`` on the diagonal."""
    gens = d.ordered(d.generators if a is None else a)
    n = len(gens)
    g = np.eye(n)
    for i, j in itertools.combinations(range(n), 2):
        m = d.m(gens[i], gens[j])
        g[i, j] = g[j, i] = -1.0 if math.isinf(m) else -math.cos(math.pi / m)
    return g


@lru_cache(maxsize=200_000)
def _spectrum(d: CoxeterDiagram, a: frozenset) -> tuple[str, int]:
    if not a:
        return POSITIVE_DEFINITE, 0
    eig = np.linalg.eigvalsh(gram_matrix(d, a))
    if eig[0] < -TOL:
        return INDEFINITE, 0
    kernel = int(np.sum(np.abs(eig) <= TOL))
    return (POSITIVE_SEMIDEFINITE if kernel else POSITIVE_DEFINITE), kernel


def gram_spectrum_classify(d: CoxeterDiagram, a=None) -> str:
    a = frozenset(d.generators if a is None else a)
    if not a:
        raise OracleRefusal("Gram classification needs a nonempty subset")
    return _spectrum(d, a)[0]


def gram_kernel_dimension(d: CoxeterDiagram, a) -> int:
    return _spectrum(d, frozenset(a))[1]


def presentation_graph(d: CoxeterDiagram) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(d.generators)
    g.add_edges_from((s, t) for s, t, _ in d.edge_list())
    return g


def coxeter_graph(d: CoxeterDiagram, a) -> nx.Graph:
    a = set(a)
    g = nx.Graph()
    g.add_nodes_from(a)
    g.add_edges_from((s, t) for s, t in itertools.combinations(sorted(a), 2) if d.m(s, t) != 2)
    return g


def oracle_separates(g: nx.Graph, a, b) -> bool:
    rest = set(b) - set(a)
    if len(rest) < 2:
        return False
    h = g.subgraph(set(g) - set(a))
    seen = {frozenset(c) for c in nx.connected_components(h) if c & rest}
    return len(seen) >= 2


def euclidean_part(d: CoxeterDiagram, a) -> frozenset[str] | None:
    """Union of the singular Coxeter-graph components; ``None`` if some component is indefinite."""
    if not a:
        return frozenset()
    if _spectrum(d, frozenset(a))[0] == INDEFINITE:
        return None
    out = set()
    for comp in nx.connected_components(coxeter_graph(d, a)):
        if _spectrum(d, frozenset(comp))[1]:
            out |= comp
    return frozenset(out)


def _subsets(v):
    items = sorted(v)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def _splitter_candidates(d, g, v, incident):
    out = {}
    for a in _subsets(v):
        e = euclidean_part(d, a)
        if e is None or not oracle_separates(g, a, v):
            continue
        if any(oracle_separates(g, a, edge) for edge in incident):
            continue
        out[a] = e
    return out


def exhaustive_splitters(d: CoxeterDiagram, psi: GraphOfGroups, v) -> list[frozenset[str]]:
    """Minimal splitters of ``v`` by brute force over every subset of ``v``."""
    v = psi.vertices[v] if isinstance(v, int) else frozenset(v)
    if len(v) > MAX_SPLITTER_VERTEX:
        raise OracleRefusal(f"vertex has {len(v)} generators; the brute-force limit is {MAX_SPLITTER_VERTEX}")
    incident = [e for (i, j, e) in psi.edges if v in (psi.vertices[i], psi.vertices[j])]
    return _exhaustive_minimal(d, presentation_graph(d), v, incident)


def _exhaustive_minimal(d, g, v, incident):
    cands = _splitter_candidates(d, g, v, incident)
    return sorted(
        (a for a, e in cands.items() if not any(f < e for f in cands.values())),
        key=d.sort_key,
    )


# -- exhaustive JSJ ---------------------------------------------------------------


def _canon(d, verts, edges):
    names = [tuple(d.ordered(x)) for x in verts]
    return (
        frozenset(names),
        frozenset((frozenset((names[i], names[j])), tuple(d.ordered(e))) for i, j, e in edges),
    )


def _split(g, verts, edges, i, a):
    v = verts[i]
    comps = [c for c in nx.connected_components(g.subgraph(set(g) - a)) if c & (v - a)]
    pieces = sorted((a | (c & v) for c in comps), key=lambda p: min(p - a, key=g.graph["order"].get))
    verts = list(verts)
    verts[i] = pieces[0]
    ids = [i] + list(range(len(verts), len(verts) + len(pieces) - 1))
    verts.extend(pieces[1:])
    out = []
    for x, y, e in edges:
        if i in (x, y):
            home = next(k for k, p in zip(ids, pieces) if e <= p)
            x, y = (home, y) if x == i else (x, home)
        out.append((x, y, e))
    out += [(i, k, a) for k in ids[1:]]
    return _reduce(verts, out)


def _reduce(verts, edges):
    verts, edges = list(verts), list(edges)
    changed = True
    while changed:
        changed = False
        for n, (x, y, e) in enumerate(edges):
            gone = x if verts[x] == e else y if verts[y] == e else None
            if gone is None or x == y:
                continue
            keep = y if gone == x else x
            del edges[n]
            edges = [(keep if p == gone else p, keep if q == gone else q, f) for p, q, f in edges]
            del verts[gone]
            edges = [(p - (p > gone), q - (q > gone), f) for p, q, f in edges]
            changed = True
            break
    return verts, edges


def _local_outcomes(d, g, psi_verts, psi_edges, i):
    v = psi_verts[i]
    incident = [e for x, y, e in psi_edges if i in (x, y)]
    mins = _exhaustive_minimal(d, g, v, incident)
    free = [a for a in mins if not any(oracle_separates(g, a, b) and oracle_separates(g, b, a) for b in mins)]
    results = {}
    seen = set()
    stack = [([v], [])]
    while stack:
        verts, edges = stack.pop()
        key = _canon(d, verts, edges)
        if key in seen:
            continue
        seen.add(key)
        moves = [(u, a) for u in range(len(verts)) for a in free if a <= verts[u] and oracle_separates(g, a, verts[u])]
        if not moves:
            results[key] = (verts, edges)
        for u, a in moves:
            stack.append(_split(g, verts, edges, u, a))
    return list(results.values())


def exhaustive_jsj(d: CoxeterDiagram) -> set[frozenset[frozenset[str]]]:
    """Every final vertex-set family reachable over all splitter pick orders."""
    if len(d.generators) > MAX_JSJ_GENERATORS:
        raise OracleRefusal(f"{len(d.generators)} generators; the exhaustive JSJ limit is {MAX_JSJ_GENERATORS}")
    g = presentation_graph(d)
    g.graph["order"] = {s: k for k, s in enumerate(d.generators)}
    finals = set()
    seen = set()
    stack = [([frozenset(d.generators)], [])]
    while stack:
        verts, edges = stack.pop()
        key = _canon(d, verts, edges)
        if key in seen:
            continue
        seen.add(key)
        options = [_local_outcomes(d, g, verts, edges, i) for i in range(len(verts))]
        for combo in itertools.product(*options):
            nv, ne, owner = [], [], []
            for lv, le in combo:
                base = len(nv)
                owner.append(range(base, base + len(lv)))
                nv += lv
                ne += [(x + base, y + base, e) for x, y, e in le]
            for x, y, e in edges:
                hx = next(k for k in owner[x] if e <= nv[k])
                hy = next(k for k in owner[y] if e <= nv[k])
                ne.append((hx, hy, e))
            nv, ne = _reduce(nv, ne)
            if frozenset(nv) == frozenset(verts):
                finals.add(frozenset(nv))
            else:
                stack.append((nv, ne))
    return finals


# -- cross checks -----------------------------------------------------------------


def classification_disagreements(d: CoxeterDiagram) -> list[str]:
    """Table type versus Gram spectrum on every Coxeter-connected induced subdiagram."""
    from coxjsj.classify import AFFINE, FINITE, classify_mask

    out = []
    for a in _subsets(d.generators):
        if not a or not nx.is_connected(coxeter_graph(d, a)):
            continue
        kind = classify_mask(d, d.mask(a)).kind
        sign, kernel = _spectrum(d, a)
        expected = FINITE if sign == POSITIVE_DEFINITE else AFFINE if kernel == 1 else "indefinite"
        if kind != expected:
            out.append(f"{d.fmt(a)}: table says {kind}, Gram spectrum says {sign} (kernel {kernel})")
    return out


def cross_check(d: CoxeterDiagram, seed: int = 0, orders: int = 10) -> list[str]:
    """Run every oracle comparison on ``d``; returns human-readable disagreements."""
    from coxjsj.jsj import jsj
    from coxjsj.splitters import minimal_splitters

    problems = []
    if len(d.generators) <= 12:
        problems += classification_disagreements(d)
    trace = jsj(d)
    for k, psi in enumerate(trace.stages):
        for v in psi.vertices:
            if len(v) > MAX_SPLITTER_VERTEX:
                continue
            fast = {r.subset for r in minimal_splitters(d, psi, v)}
            slow = set(exhaustive_splitters(d, psi, v))
            if fast != slow:
                problems.append(f"stage {k}, vertex {d.fmt(v)}: minimal splitters differ from brute force")
    family = trace.final.family()
    rng = random.Random(seed)
    for _ in range(orders):
        other = jsj(d, random.Random(rng.randrange(2**32))).final.family()
        if other != family:
            problems.append("randomized splitter order changed the final vertex sets")
            break
    if len(d.generators) <= MAX_JSJ_GENERATORS:
        found = exhaustive_jsj(d)
        if found != {family}:
            problems.append(f"exhaustive search found {len(found)} final families")
    return problems


def complete_separators(d: CoxeterDiagram) -> list[frozenset[str]]:
    """Complete subdiagrams (the empty one included) that separate the diagram.

    A finite visual subgroup needs a complete subdiagram, so an empty answer
    means no finite visual subgroup splits the group.
    """
    g = presentation_graph(d)
    full = frozenset(d.generators)
    cliques = [frozenset()] + [frozenset(c) for c in nx.enumerate_all_cliques(g)]
    return [c for c in cliques if oracle_separates(g, c, full)]
