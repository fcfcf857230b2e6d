"""Star splits, reduction, M-JSJ decompositions of single vertices and the staged JSJ loop."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from coxjsj.classify import virtually_abelian_masks
from coxjsj.diagram import CoxeterDiagram
from coxjsj.errors import ContractViolation
from coxjsj.gog import GraphOfGroups
from coxjsj.splitters import crossing_table, minimal_masks

__all__ = [
    "GraphOfGroups",
    "SplitLog",
    "StageTrace",
    "split_vertex",
    "reduce",
    "m_jsj_decomposition",
    "next_stage",
    "jsj",
    "check_amenable",
    "check_visual",
    "t33_violations",
    "nosplit_violations",
]


@dataclass(frozen=True)
class SplitLog:
    stage: int
    vertex: frozenset[str]
    piece: frozenset[str]
    splitter: frozenset[str]


@dataclass
class StageTrace:
    diagram: CoxeterDiagram
    stages: list[GraphOfGroups]
    logs: list[list[SplitLog]] = field(default_factory=list)

    @property
    def final(self) -> GraphOfGroups:
        return self.stages[-1]


# -- tree surgery on masks ------------------------------------------------------


def _split_masks(d, verts, edges, i, a):
    vmask = verts[i]
    pieces = [p & vmask for p in d.parts_mask(a, vmask)]
    if len(pieces) < 2:
        raise ContractViolation(f"{d.fmt(a)} does not separate {d.fmt(vmask)}")
    pieces.sort(key=lambda p: (p & ~a & -(p & ~a)).bit_length())
    new = [a | p for p in pieces]
    verts = list(verts)
    verts[i] = new[0]
    ids = [i]
    for v in new[1:]:
        ids.append(len(verts))
        verts.append(v)
    out = []
    for x, y, e in edges:
        if i in (x, y):
            home = next((k for k, v in zip(ids, new) if e & ~v == 0), None)
            if home is None:
                raise ContractViolation(
                    f"splitting {d.fmt(vmask)} over {d.fmt(a)} cuts the edge set {d.fmt(e)}"
                )
            x, y = (home, y) if x == i else (x, home)
        out.append((x, y, e))
    out.extend((i, k, a) for k in ids[1:])
    return verts, out


def _reduce_masks(d, verts, edges):
    verts, edges = list(verts), list(edges)
    while True:
        best = None
        for n, (x, y, e) in enumerate(edges):
            if x == y:
                continue
            for gone, keep in ((x, y), (y, x)):
                if verts[gone] == e:
                    key = (d.sort_key(verts[gone]), gone)
                    if best is None or key < best[0]:
                        best = (key, n, gone, keep)
        if best is None:
            return verts, edges
        _, n, gone, keep = best
        del edges[n]
        edges = [(keep if x == gone else x, keep if y == gone else y, e) for x, y, e in edges]
        del verts[gone]
        edges = [(x - (x > gone), y - (y > gone), e) for x, y, e in edges]


def _to_gog(d, verts, edges) -> GraphOfGroups:
    return GraphOfGroups(d, tuple(d.subset(v) for v in verts), tuple((x, y, d.subset(e)) for x, y, e in edges))


def _from_gog(psi: GraphOfGroups):
    d = psi.diagram
    return list(psi.vertex_masks), [(x, y, d.mask(e)) for x, y, e in psi.edges]


def split_vertex(psi: GraphOfGroups, v, a) -> GraphOfGroups:
    """Replace ``v`` by the star over ``a`` and reduce.

    New vertices are ``a`` plus the trace on ``v`` of each component of
    ``Gamma - a``; the one holding the earliest generator is the hub.
    """
    d = psi.diagram
    i = psi.vertex_index(v)
    a_mask = d.mask(a)
    if a_mask & ~psi.vertex_masks[i]:
        raise ContractViolation(f"{d.fmt(a)} is not inside {d.fmt(psi.vertices[i])}")
    verts, edges = _split_masks(d, *_from_gog(psi), i, a_mask)
    return _to_gog(d, *_reduce_masks(d, verts, edges))


def reduce(psi: GraphOfGroups) -> GraphOfGroups:
    """Collapse edges whose set equals an endpoint, smallest absorbed vertex first."""
    d = psi.diagram
    return _to_gog(d, *_reduce_masks(d, *_from_gog(psi)))


# -- one vertex -------------------------------------------------------------------


def _amenable_at(d, psi, i):
    vmask = psi.vertex_masks[i]
    out = []
    for e in {d.mask(e) for e in psi.incident_edge_sets(i)}:
        for a in virtually_abelian_masks(d, vmask):
            if d.separates_mask(a, e):
                out.append((psi.vertices[i], d.subset(e), d.subset(a)))
    return out


def _local_jsj(d, psi, i, rng=None, stage=0):
    vmask = psi.vertex_masks[i]
    mins = minimal_masks(d, psi, i)
    table = crossing_table(d, mins)
    free = [c.a for c in mins if not table[c.a]]
    verts, edges = [vmask], []
    logs = []
    while True:
        moves = [(u, a) for a in free for u in range(len(verts)) if a & ~verts[u] == 0 and d.separates_mask(a, verts[u])]
        if not moves:
            break
        if rng is None:
            u, a = moves[0]
        else:
            u, a = rng.choice(moves)
        logs.append(SplitLog(stage, d.subset(vmask), d.subset(verts[u]), d.subset(a)))
        verts, edges = _reduce_masks(d, *_split_masks(d, verts, edges, u, a))
    return verts, edges, logs


def m_jsj_decomposition(d: CoxeterDiagram, psi: GraphOfGroups, v, rng: random.Random | None = None) -> GraphOfGroups:
    """Split ``v`` by non-crossing minimal splitters until none separates any piece.

    The splitter set is computed once for ``v`` inside ``psi``.  Without ``rng``
    the lowest-rank, lexicographically first splitter goes first; with ``rng``
    each move is drawn at random.
    """
    i = psi.vertex_index(v)
    bad = _amenable_at(d, psi, i)
    if bad:
        V, E, A = bad[0]
        raise ContractViolation(f"not JSJ-amenable at {d.fmt(V)}: {d.fmt(A)} separates edge set {d.fmt(E)}")
    verts, edges, _ = _local_jsj(d, psi, i, rng)
    return _to_gog(d, verts, edges)


# -- stages -----------------------------------------------------------------------


def _next_stage(d, psi, rng=None, stage=0):
    verts, edges, logs = [], [], []
    owner = []
    for i in range(len(psi.vertices)):
        bad = _amenable_at(d, psi, i)
        if bad:
            V, E, A = bad[0]
            raise ContractViolation(f"not JSJ-amenable at {d.fmt(V)}: {d.fmt(A)} separates edge set {d.fmt(E)}")
        lv, le, ll = _local_jsj(d, psi, i, rng, stage)
        base = len(verts)
        owner.append(range(base, base + len(lv)))
        verts.extend(lv)
        edges.extend((x + base, y + base, e) for x, y, e in le)
        logs.extend(ll)
    for x, y, e in psi.edges:
        e = d.mask(e)
        ends = []
        for end in (x, y):
            home = next((k for k in owner[end] if e & ~verts[k] == 0), None)
            if home is None:
                raise ContractViolation(f"edge set {d.fmt(e)} lies in no piece of {d.fmt(psi.vertices[end])}")
            ends.append(home)
        edges.append((ends[0], ends[1], e))
    verts, edges = _reduce_masks(d, verts, edges)
    return _to_gog(d, verts, edges), logs


def next_stage(d: CoxeterDiagram, psi: GraphOfGroups, rng: random.Random | None = None) -> GraphOfGroups:
    return _next_stage(d, psi, rng)[0]


def jsj(d: CoxeterDiagram, rng: random.Random | None = None) -> StageTrace:
    """Iterate stages from the one-vertex decomposition until the vertex sets stop changing."""
    psi = GraphOfGroups.trivial(d)
    trace = StageTrace(d, [psi], [])
    for stage in range(1, len(d.generators) + 3):
        nxt, logs = _next_stage(d, psi, rng, stage)
        trace.stages.append(nxt)
        trace.logs.append(logs)
        if nxt.family() == psi.family():
            return trace
        psi = nxt
    raise ContractViolation(f"stage loop did not stabilize after {len(d.generators) + 2} stages")


# -- runtime checks -----------------------------------------------------------------


def check_amenable(d: CoxeterDiagram, psi: GraphOfGroups) -> list[tuple[frozenset, frozenset, frozenset]]:
    """Triples ``(V, E, A)`` where a virtually abelian ``A`` inside ``V`` separates an incident edge set ``E``."""
    out = []
    for i in range(len(psi.vertices)):
        out.extend(_amenable_at(d, psi, i))
    return out


def check_visual(psi: GraphOfGroups) -> list[str]:
    """Tree shape, edge containment, covering of diagram edges, generator subtrees, reducedness."""
    d = psi.diagram
    verts = psi.vertex_masks
    n = len(verts)
    problems = []
    if n == 0:
        return ["decomposition has no vertices"]
    edges = [(x, y, d.mask(e)) for x, y, e in psi.edges]
    if len(edges) != n - 1:
        problems.append(f"{len(edges)} edges on {n} vertices is not a tree")
    if not _connected(range(n), [(x, y) for x, y, _ in edges]):
        problems.append("decomposition graph is disconnected")
    for x, y, e in edges:
        if x == y:
            problems.append(f"loop at vertex {d.fmt(verts[x])}")
        if e & ~verts[x] or e & ~verts[y]:
            problems.append(f"edge set {d.fmt(e)} is not inside both endpoints")
        elif e in (verts[x], verts[y]) and x != y:
            problems.append(f"edge set {d.fmt(e)} equals an endpoint; not reduced")
    for s, t, _ in d.edge_list():
        pair = d.mask((s, t))
        if not any(pair & ~v == 0 for v in verts):
            problems.append(f"diagram edge {s}-{t} lies in no vertex")
    for g in range(len(d.generators)):
        bit = 1 << g
        holders = [k for k in range(n) if verts[k] & bit]
        if not holders:
            problems.append(f"generator {d.generators[g]} lies in no vertex")
            continue
        links = [(x, y) for x, y, e in edges if e & bit]
        if not _connected(holders, links):
            problems.append(f"vertices containing {d.generators[g]} do not form a subtree")
    return problems


def _connected(nodes, links) -> bool:
    nodes = list(nodes)
    if not nodes:
        return True
    adj = {k: set() for k in nodes}
    for x, y in links:
        if x in adj and y in adj:
            adj[x].add(y)
            adj[y].add(x)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for nb in adj[stack.pop()] - seen:
            seen.add(nb)
            stack.append(nb)
    return len(seen) == len(nodes)


def t33_violations(d: CoxeterDiagram, psi: GraphOfGroups) -> list[tuple[frozenset, frozenset]]:
    """Pairs ``(A, B)``: a virtually abelian ``A`` separating an edge set ``B`` of ``psi``."""
    out = []
    edge_sets = sorted({d.mask(e) for _, _, e in psi.edges})
    for a in virtually_abelian_masks(d, d.full_mask):
        for b in edge_sets:
            if d.separates_mask(a, b):
                out.append((d.subset(a), d.subset(b)))
    return out


def nosplit_violations(d: CoxeterDiagram, psi: GraphOfGroups) -> list[tuple[frozenset, frozenset, frozenset]]:
    """Triples ``(V, B, A)``: ``A`` is virtually abelian, separates the diagram and
    separates the minimal splitter ``B`` of ``V``, yet is not contained in ``V``."""
    full = d.full_mask
    splitting = [a for a in virtually_abelian_masks(d, full) if d.separates_mask(a, full)]
    out = []
    for i, vmask in enumerate(psi.vertex_masks):
        for c in minimal_masks(d, psi, i):
            for a in splitting:
                if a & ~vmask and d.separates_mask(a, c.a):
                    out.append((d.subset(vmask), d.subset(c.a), d.subset(a)))
    return out

