"""Virtually abelian visual splitters of a vertex: candidates, minimality, crossing.

A candidate at vertex ``V`` of a decomposition ``psi`` is a subset ``A`` of
``V`` generating a virtually abelian group that separates ``V`` in the full
diagram without separating any edge set incident to ``V``.  A candidate is
minimal when no other candidate has a strictly smaller Euclidean part.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from coxjsj.classify import VirtAbelianStructure, va_info_mask, virtually_abelian_masks, virtually_abelian_structure
from coxjsj.diagram import CoxeterDiagram, bits
from coxjsj.errors import ContractViolation
from coxjsj.gog import GraphOfGroups

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitterRecord:
    vertex: frozenset[str]
    subset: frozenset[str]
    structure: VirtAbelianStructure
    parts: tuple[frozenset[str], ...]
    minimal: bool = False
    crossing_partners: tuple[frozenset[str], ...] = ()

    @property
    def rank(self) -> int:
        return self.structure.rank

    @property
    def e_of_a(self) -> frozenset[str]:
        return self.structure.e_of_a


@dataclass(frozen=True)
class _Cand:
    a: int
    e: int
    rank: int
    parts: tuple[int, ...]


def _incident_masks(psi: GraphOfGroups, i: int) -> tuple[int, ...]:
    d = psi.diagram
    return tuple(sorted({d.mask(e) for e in psi.incident_edge_sets(i)}))


def _compatible_mask(d: CoxeterDiagram, a: int, incident: tuple[int, ...]) -> bool:
    return not any(d.separates_mask(a, e) for e in incident)


def _candidates(d: CoxeterDiagram, vmask: int, incident: tuple[int, ...]) -> list[_Cand]:
    key = ("cands", vmask, incident)
    hit = d._cache.get(key)
    if hit is not None:
        return hit
    out = []
    for a in virtually_abelian_masks(d, vmask):
        if not d.separates_mask(a, vmask):
            continue
        if not _compatible_mask(d, a, incident):
            continue
        e, rank = va_info_mask(d, a)
        out.append(_Cand(a, e, rank, tuple(d.parts_mask(a, vmask))))
    out.sort(key=lambda c: (c.rank, bits(c.a)))
    d._cache[key] = out
    return out


def _minimal(cands: list[_Cand]) -> list[_Cand]:
    e_sets = {c.e for c in cands}
    return [c for c in cands if not any(f != c.e and f & ~c.e == 0 for f in e_sets)]


def _record(d: CoxeterDiagram, vmask: int, c: _Cand, minimal=False, partners=()) -> SplitterRecord:
    return SplitterRecord(
        vertex=d.subset(vmask),
        subset=d.subset(c.a),
        structure=virtually_abelian_structure(d, c.a),
        parts=tuple(d.subset(p) for p in c.parts),
        minimal=minimal,
        crossing_partners=tuple(partners),
    )


def is_compatible(d: CoxeterDiagram, psi: GraphOfGroups, v, a) -> bool:
    """Splitting ``v`` over ``a`` keeps every incident edge set inside one new vertex."""
    i = psi.vertex_index(v)
    a_mask, v_mask = d.mask(a), psi.vertex_masks[i]
    if a_mask & ~v_mask:
        raise ContractViolation(f"{d.fmt(a)} is not contained in vertex {d.fmt(v_mask)}")
    if not d.separates_mask(a_mask, v_mask):
        raise ContractViolation(f"{d.fmt(a)} does not separate vertex {d.fmt(v_mask)}")
    return _compatible_mask(d, a_mask, _incident_masks(psi, i))


def candidate_splitters(d: CoxeterDiagram, psi: GraphOfGroups, v) -> list[SplitterRecord]:
    i = psi.vertex_index(v)
    vmask = psi.vertex_masks[i]
    return [_record(d, vmask, c) for c in _candidates(d, vmask, _incident_masks(psi, i))]


def is_minimal(d: CoxeterDiagram, psi: GraphOfGroups, v, a) -> bool:
    i = psi.vertex_index(v)
    a_mask = d.mask(a)
    cands = _candidates(d, psi.vertex_masks[i], _incident_masks(psi, i))
    mine = next((c for c in cands if c.a == a_mask), None)
    if mine is None:
        raise ContractViolation(f"{d.fmt(a)} is not a candidate splitter of {d.fmt(psi.vertices[i])}")
    return not any(c.e != mine.e and c.e & ~mine.e == 0 for c in cands)


def crosses(d: CoxeterDiagram, a, b) -> bool:
    """Each of ``a`` and ``b`` separates the other in the diagram."""
    a_mask, b_mask = d.mask(a), d.mask(b)
    return d.separates_mask(a_mask, b_mask) and d.separates_mask(b_mask, a_mask)


def minimal_masks(d: CoxeterDiagram, psi: GraphOfGroups, i: int) -> list[_Cand]:
    vmask = psi.vertex_masks[i]
    return _minimal(_candidates(d, vmask, _incident_masks(psi, i)))


def crossing_table(d: CoxeterDiagram, mins: list[_Cand]) -> dict[int, list[int]]:
    table = {c.a: [] for c in mins}
    for x, c in enumerate(mins):
        for other in mins[x + 1:]:
            if d.separates_mask(c.a, other.a) and d.separates_mask(other.a, c.a):
                table[c.a].append(other.a)
                table[other.a].append(c.a)
    return table


def minimal_splitters(d: CoxeterDiagram, psi: GraphOfGroups, v) -> list[SplitterRecord]:
    """Minimal splitters of ``v`` ordered by rank, then lexicographically; crossing partners filled."""
    i = psi.vertex_index(v)
    vmask = psi.vertex_masks[i]
    mins = minimal_masks(d, psi, i)
    table = crossing_table(d, mins)
    for c in mins:
        for x in removable_euclidean(d, vmask, c.a):
            log.warning(
                "minimal splitter %s of %s has removable Euclidean generator %s",
                d.fmt(c.a), d.fmt(vmask), d.generators[x],
            )
    order = {a: k for k, a in enumerate(c.a for c in mins)}
    return [
        _record(d, vmask, c, True, [d.subset(p) for p in sorted(table[c.a], key=order.get)])
        for c in mins
    ]


def removable_euclidean(d: CoxeterDiagram, vmask: int, a: int) -> list[int]:
    """Generators ``x`` of ``E(a)`` such that ``a - {x}`` still separates the vertex."""
    info = va_info_mask(d, a)
    if info is None:
        return []
    return [x for x in bits(info[0]) if d.separates_mask(a & ~(1 << x), vmask)]


def unrelated_pairs(d: CoxeterDiagram, mask: int) -> list[tuple[int, int]]:
    idx = bits(mask)
    return [(i, j) for k, i in enumerate(idx) for j in idx[k + 1:] if d.label_mask(i, j) == 0]


def structure_violations(d: CoxeterDiagram, psi: GraphOfGroups, v) -> list[str]:
    """Check the crossing-pair structure statements at one vertex.

    * each crossing pair ``A, B`` of minimal splitters has the form
      ``A = {a1, a2} + M``, ``B = {b1, b2} + M`` with unrelated pairs that the
      other set separates, and equal ranks;
    * ``Gamma - B`` has exactly two components meeting the vertex;
    * a minimal splitter without removable Euclidean generators has an edge from
      every vertex-meeting component of its complement to each Euclidean generator.
    """
    i = psi.vertex_index(v)
    vmask = psi.vertex_masks[i]
    mins = minimal_masks(d, psi, i)
    table = crossing_table(d, mins)
    info = {c.a: c for c in mins}
    out = []
    for c in mins:
        if not removable_euclidean(d, vmask, c.a):
            for part in c.parts:
                nb = 0
                for x in bits(part):
                    nb |= d.adjacency(x)
                missing = c.e & ~nb
                if missing:
                    out.append(f"edge reach: component {d.fmt(part)} of Gamma-{d.fmt(c.a)} misses {d.fmt(missing)}")
        for b in table[c.a]:
            if b < c.a:
                continue
            other = info[b]
            if c.rank != other.rank:
                out.append(f"crossing form: ranks differ for crossing {d.fmt(c.a)}, {d.fmt(b)}")
            shared = c.a & b
            ok = any(
                (c.a & ~((1 << a1) | (1 << a2))) == shared
                and (b & ~((1 << b1) | (1 << b2))) == shared
                and d.separates_mask(b, (1 << a1) | (1 << a2))
                and d.separates_mask(c.a, (1 << b1) | (1 << b2))
                for a1, a2 in unrelated_pairs(d, c.a)
                for b1, b2 in unrelated_pairs(d, b)
            )
            if not ok:
                out.append(f"crossing form: {d.fmt(c.a)}, {d.fmt(b)} do not share a common M")
            for x, y in ((c.a, b), (b, c.a)):
                n_parts = len(d.parts_mask(y, vmask))
                if n_parts != 2:
                    out.append(f"two sides: Gamma-{d.fmt(y)} meets {d.fmt(vmask)} in {n_parts} components")
    return out
