"""Rigid versus orbifold vertices, the ``<T> x <M>`` structure, and the orbifold generator."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from coxjsj.classify import va_info_mask
from coxjsj.diagram import CoxeterDiagram, bits, induced_subdiagram
from coxjsj.errors import CoxeterInputError, OrbifoldVerificationError
from coxjsj.gog import GraphOfGroups
from coxjsj.splitters import unrelated_pairs, crossing_table, minimal_masks

log = logging.getLogger(__name__)

VIRTUALLY_SURFACE = "VirtuallySurface"
VIRTUALLY_FREE = "VirtuallyFree"


@dataclass(frozen=True)
class Loop:
    cycle: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.cycle)

    def describe(self) -> str:
        return f"Loop({self.length})"


@dataclass(frozen=True)
class PathsAndPoints:
    paths: tuple[tuple[str, ...], ...]
    points: tuple[str, ...]

    def describe(self) -> str:
        parts = ["-".join(p) for p in self.paths] + list(self.points)
        return f"PathsAndPoints({', '.join(parts)})"


@dataclass(frozen=True)
class OrbifoldStructure:
    vertex: frozenset[str]
    t_part: frozenset[str]
    m_part: frozenset[str]
    shape: Loop | PathsAndPoints
    classification: str
    free_decomposition: GraphOfGroups | None = None
    diagnostics: tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class Rigid:
    vertex: frozenset[str]
    kind = "rigid"


@dataclass(frozen=True)
class Orbifold:
    structure: OrbifoldStructure
    kind = "orbifold"

    @property
    def vertex(self) -> frozenset[str]:
        return self.structure.vertex


def classify_vertex(d: CoxeterDiagram, psi: GraphOfGroups, v) -> Rigid | Orbifold:
    i = psi.vertex_index(v)
    table = crossing_table(d, minimal_masks(d, psi, i))
    if not any(table.values()):
        return Rigid(psi.vertices[i])
    return Orbifold(orbifold_structure(d, psi, i))


def _m_candidates(d: CoxeterDiagram, a: int, b: int) -> list[int]:
    """``A - {a1, a2}`` for unrelated pairs of ``A`` that ``B`` separates."""
    out = []
    for a1, a2 in unrelated_pairs(d, a):
        pair = (1 << a1) | (1 << a2)
        if d.separates_mask(b, pair):
            out.append(a & ~pair)
    return out


def orbifold_structure(d: CoxeterDiagram, psi: GraphOfGroups, v) -> OrbifoldStructure:
    """Extract ``T`` and ``M`` from a minimal-rank crossing pair and verify the product structure."""
    i = psi.vertex_index(v)
    vmask = psi.vertex_masks[i]
    mins = minimal_masks(d, psi, i)
    table = crossing_table(d, mins)
    rank = {c.a: c.rank for c in mins}
    pairs = sorted(
        ((a, b) for a, partners in table.items() for b in partners if a < b),
        key=lambda p: (max(rank[p[0]], rank[p[1]]), bits(p[0]), bits(p[1])),
    )
    if not pairs:
        raise OrbifoldVerificationError("crossing pair", f"{d.fmt(vmask)} has no crossing minimal splitters")
    low = max(rank[pairs[0][0]], rank[pairs[0][1]])
    found = []
    for a, b in pairs:
        if max(rank[a], rank[b]) != low:
            break
        ms = set(_m_candidates(d, a, b)) & set(_m_candidates(d, b, a))
        found.append(((a, b), sorted(ms, key=bits)))
    (a, b), ms = found[0]
    if not ms:
        raise OrbifoldVerificationError(
            "common M", f"crossing splitters {d.fmt(a)} and {d.fmt(b)} do not differ by unrelated pairs"
        )
    m = ms[0]
    diagnostics = []
    for (a2, b2), other in found[1:]:
        if m not in other:
            note = f"crossing pair {d.fmt(a2)}, {d.fmt(b2)} gives M in {[d.fmt(x) for x in other]}, not {d.fmt(m)}"
            diagnostics.append(note)
            log.warning(note)
    t = vmask & ~m
    for x in bits(t):
        for y in bits(m):
            if d.label_mask(x, y) != 2:
                raise OrbifoldVerificationError(
                    "direct product",
                    f"m({d.generators[x]},{d.generators[y]}) = {d.label_mask(x, y) or 'inf'}, expected 2",
                )
    if va_info_mask(d, m) is None:
        raise OrbifoldVerificationError("virtually abelian M", f"{d.fmt(m)} is not virtually abelian")
    shape = diagram_shape(induced_subdiagram(d, d.subset(t)))
    if shape is None:
        raise OrbifoldVerificationError("shape", f"{d.fmt(t)} is neither a loop nor a union of paths and points")
    if isinstance(shape, Loop):
        if shape.length < 4:
            raise OrbifoldVerificationError("shape", f"loop on {d.fmt(t)} has length {shape.length} < 4")
        kind, free = VIRTUALLY_SURFACE, None
    else:
        kind, free = VIRTUALLY_FREE, free_decomposition(induced_subdiagram(d, d.subset(t)), shape)
    return OrbifoldStructure(
        vertex=d.subset(vmask),
        t_part=d.subset(t),
        m_part=d.subset(m),
        shape=shape,
        classification=kind,
        free_decomposition=free,
        diagnostics=tuple(diagnostics),
    )


def _path_components(t: CoxeterDiagram):
    """Components of ``t`` as ordered generator tuples; ``None`` if one is not a path."""
    out = []
    for comp in t.components_of_mask(t.full_mask):
        members = bits(comp)
        deg = {k: (t.adjacency(k) & comp).bit_count() for k in members}
        edges = sum(deg.values()) // 2
        if any(x > 2 for x in deg.values()) or edges != len(members) - 1:
            return None
        start = next(k for k in members if deg[k] <= 1)
        order, prev = [start], None
        while len(order) < len(members):
            cur = order[-1]
            nxt = next(k for k in bits(t.adjacency(cur) & comp) if k != prev)
            prev = cur
            order.append(nxt)
        out.append(tuple(t.generators[k] for k in order))
    return out


def diagram_shape(t: CoxeterDiagram) -> Loop | PathsAndPoints | None:
    """Loop when ``t`` is a single cycle, paths and points when it is a linear forest."""
    n = len(t.generators)
    if n >= 3:
        degrees = [t.adjacency(k).bit_count() for k in range(n)]
        comps = t.components_of_mask(t.full_mask)
        if len(comps) == 1 and all(x == 2 for x in degrees):
            cycle, prev = [0], None
            while len(cycle) < n:
                cur = cycle[-1]
                nxt = next(k for k in bits(t.adjacency(cur)) if k != prev)
                prev = cur
                cycle.append(nxt)
            return Loop(tuple(t.generators[k] for k in cycle))
    comps = _path_components(t)
    if comps is None:
        return None
    return PathsAndPoints(tuple(c for c in comps if len(c) > 1), tuple(c[0] for c in comps if len(c) == 1))


def free_decomposition(t: CoxeterDiagram, shape: PathsAndPoints) -> GraphOfGroups:
    """Each path ``s1 - ... - sk`` becomes the chain ``<s1,s2> *_<s2> <s2,s3> * ...``; points are
    ``Z/2`` factors; components are joined by trivial edges."""
    verts, edges, firsts = [], [], []
    pieces = sorted(list(shape.paths) + [(p,) for p in shape.points], key=lambda c: min(t.index(g) for g in c))
    for comp in pieces:
        firsts.append(len(verts))
        if len(comp) == 1:
            verts.append(frozenset(comp))
            continue
        for k in range(len(comp) - 1):
            verts.append(frozenset(comp[k:k + 2]))
            if k:
                edges.append((len(verts) - 2, len(verts) - 1, frozenset({comp[k]})))
    edges += [(firsts[0], f, frozenset()) for f in firsts[1:]]
    return GraphOfGroups(t, tuple(verts), tuple(edges))


# -- generator ------------------------------------------------------------------


@dataclass(frozen=True)
class OrbifoldConstruction:
    diagram: CoxeterDiagram
    t_part: frozenset[str]
    blocks: tuple[frozenset[str], ...]
    edge_sets: tuple[frozenset[str], ...]


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def orbifold_construction(t: CoxeterDiagram) -> OrbifoldConstruction:
    """Close a union of paths and points into a cycle of blocks ``C_i = {b_i, a_{i+1}, x_i, y_i}``.

    ``b_i`` and ``a_{i+1}`` are the facing endpoints of consecutive components;
    they stay unrelated while ``x_i, y_i`` commute with each other and with both.
    """
    comps = _path_components(t)
    if comps is None:
        raise CoxeterInputError("orbifold generator needs a disjoint union of simple paths and points")
    ends = [(c[0], c[-1]) for c in comps]
    n = len(ends)
    taken = set(t.generators)
    gens = list(t.generators)
    labels = list(t.edge_list())
    blocks, edge_sets = [], []
    for i in range(n):
        b, a = ends[i][1], ends[(i + 1) % n][0]
        if b == a:
            raise CoxeterInputError(f"block {i} would join {b} to itself; use at least two components or a longer path")
        if t.m(a, b) != float("inf"):
            raise CoxeterInputError(f"block {i} needs {b} and {a} unrelated, but they are adjacent")
        x, y = _fresh(f"x{i}", taken), _fresh(f"y{i}", taken)
        gens += [x, y]
        labels += [(x, y, 2), (x, b, 2), (x, a, 2), (y, b, 2), (y, a, 2)]
        blocks.append(frozenset({b, a, x, y}))
        edge_sets.append(frozenset({b, a}))
    return OrbifoldConstruction(CoxeterDiagram(gens, labels), frozenset(t.generators), tuple(blocks), tuple(edge_sets))


def realize_orbifold(t_diagram: CoxeterDiagram) -> CoxeterDiagram:
    return orbifold_construction(t_diagram).diagram
