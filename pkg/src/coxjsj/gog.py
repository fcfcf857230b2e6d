"""Visual graph-of-groups decompositions: a tree labeled by generator subsets."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from coxjsj.diagram import CoxeterDiagram
from coxjsj.errors import ContractViolation

Edge = tuple[int, int, frozenset]


@dataclass(frozen=True, eq=False)
class GraphOfGroups:
    """Vertices are generator subsets; ``edges`` are ``(i, j, edge_set)`` index triples."""

    diagram: CoxeterDiagram
    vertices: tuple[frozenset[str], ...]
    edges: tuple[Edge, ...] = ()

    @classmethod
    def trivial(cls, d: CoxeterDiagram) -> GraphOfGroups:
        return cls(d, (frozenset(d.generators),), ())

    @classmethod
    def build(cls, d: CoxeterDiagram, vertices: Iterable, edges: Iterable = ()) -> GraphOfGroups:
        """Convenience constructor; edges may name endpoints by index or by vertex set."""
        verts = tuple(frozenset(v) for v in vertices)
        out = []
        for i, j, e in edges:
            i = i if isinstance(i, int) else verts.index(frozenset(i))
            j = j if isinstance(j, int) else verts.index(frozenset(j))
            out.append((i, j, frozenset(e)))
        return cls(d, verts, tuple(out))

    @cached_property
    def vertex_masks(self) -> tuple[int, ...]:
        return tuple(self.diagram.mask(v) for v in self.vertices)

    def vertex_index(self, v) -> int:
        if isinstance(v, int):
            if not 0 <= v < len(self.vertices):
                raise ContractViolation(f"no vertex with index {v}")
            return v
        target = frozenset(v)
        hits = [i for i, u in enumerate(self.vertices) if u == target]
        if len(hits) != 1:
            what = "no" if not hits else "more than one"
            raise ContractViolation(f"{what} vertex {self.diagram.fmt(target)} in decomposition")
        return hits[0]

    def incident(self, i: int) -> list[Edge]:
        return [e for e in self.edges if i in (e[0], e[1])]

    def incident_edge_sets(self, v) -> list[frozenset[str]]:
        i = self.vertex_index(v)
        return [e for a, b, e in self.edges if i in (a, b)]

    def family(self) -> frozenset[frozenset[str]]:
        return frozenset(self.vertices)

    def edge_sets(self) -> tuple[tuple[str, ...], ...]:
        """Sorted multiset of edge sets, each in canonical generator order."""
        d = self.diagram
        return tuple(sorted((d.ordered(e) for _, _, e in self.edges), key=lambda t: (len(t), [d.index(g) for g in t])))

    def key(self):
        return (
            self.family(),
            frozenset((frozenset((self.vertices[i], self.vertices[j])), e) for i, j, e in self.edges),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphOfGroups):
            return NotImplemented
        return self.diagram == other.diagram and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def sorted_vertices(self) -> list[frozenset[str]]:
        d = self.diagram
        return sorted(self.vertices, key=lambda v: (d.sort_key(v), len(v)))

    def describe(self) -> str:
        d = self.diagram
        lines = [f"vertices ({len(self.vertices)}):"]
        lines += [f"  [{i}] {d.fmt(v)}" for i, v in enumerate(self.vertices)]
        lines.append(f"edges ({len(self.edges)}):")
        lines += [f"  [{i}]--[{j}]  {d.fmt(e)}" for i, j, e in self.edges]
        return "\n".join(lines)
