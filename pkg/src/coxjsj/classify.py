"""Finite / affine recognition and the direct-product structure of virtually abelian subsets.

Irreducible pieces are recognized by matching the Coxeter graph (edges where
``m != 2``, unrelated pairs included) against the standard finite and affine
tables.  A subset is virtually abelian exactly when every Coxeter-graph
component is finite or affine; the affine components carry the rank.
"""

from __future__ import annotations

from dataclasses import dataclass

from coxjsj.diagram import CoxeterDiagram, bits
from coxjsj.errors import CoxeterInputError

FINITE = "finite"
AFFINE = "affine"
INDEFINITE = "indefinite"


@dataclass(frozen=True)
class IrreducibleType:
    kind: str
    family: str | None = None
    n: int | None = None

    @property
    def name(self) -> str:
        if self.kind == INDEFINITE:
            return "indefinite"
        if self.family == "I2":
            return f"I2({self.n})"
        base = f"{self.family}{self.n}"
        return "~" + base if self.kind == AFFINE else base

    def __str__(self) -> str:
        return self.name


def Finite(family: str, n: int) -> IrreducibleType:
    return IrreducibleType(FINITE, family, n)


def Affine(family: str, n: int) -> IrreducibleType:
    return IrreducibleType(AFFINE, family, n)


Indefinite = IrreducibleType(INDEFINITE)


@dataclass(frozen=True)
class VirtAbelianStructure:
    subset: frozenset[str]
    finite_part: frozenset[str]
    euclidean_components: tuple[tuple[frozenset[str], IrreducibleType], ...]
    e_of_a: frozenset[str]
    rank: int
    finite_components: tuple[tuple[frozenset[str], IrreducibleType], ...] = ()


# -- table matching ----------------------------------------------------------


def _match(d: CoxeterDiagram, mask: int) -> IrreducibleType:
    verts = bits(mask)
    n = len(verts)
    if n == 1:
        return Finite("A", 1)
    edges = {}
    for x, i in enumerate(verts):
        for j in verts[x + 1:]:
            m = d.label_mask(i, j)
            if m != 2:
                edges[(i, j)] = m
    if any(m == 0 for m in edges.values()):
        return Affine("A", 1) if n == 2 else Indefinite
    if n == 2:
        ((_, m),) = edges.items()
        return Finite("I2", m)
    if any(m > 6 for m in edges.values()):
        return Indefinite
    nbrs = {v: [] for v in verts}
    for (i, j), m in edges.items():
        nbrs[i].append((j, m))
        nbrs[j].append((i, m))
    degree = {v: len(nb) for v, nb in nbrs.items()}
    labels = list(edges.values())

    if len(edges) >= n:
        if len(edges) == n and all(k == 2 for k in degree.values()) and all(m == 3 for m in labels):
            return Affine("A", n - 1)
        return Indefinite

    branch = [v for v in verts if degree[v] >= 3]
    if not branch:
        return _match_path(verts, nbrs, degree)
    if len(branch) == 1 and degree[branch[0]] == 3:
        return _match_fork(branch[0], nbrs)
    if any(m != 3 for m in labels):
        return Indefinite
    if len(branch) == 1 and degree[branch[0]] == 4:
        return Affine("D", 4) if n == 5 else Indefinite
    if len(branch) == 2 and all(degree[v] == 3 for v in branch):
        # D~: two forks joined by a path, each fork carrying two leaves
        leaves = [v for v in verts if degree[v] == 1]
        per_branch = [sum(1 for u, _ in nbrs[b] if degree[u] == 1) for b in branch]
        if len(leaves) == 4 and per_branch == [2, 2]:
            return Affine("D", n - 1)
    return Indefinite


def _walk(start: int, prev: int, nbrs) -> list[tuple[int, int]]:
    """Follow a path from ``start`` away from ``prev``; returns (vertex, label-into-vertex)."""
    out = []
    cur, back = start, prev
    while True:
        nxt = [(u, m) for u, m in nbrs[cur] if u != back]
        if not nxt:
            return out
        (u, m), = nxt
        out.append((u, m))
        back, cur = cur, u


def _match_path(verts, nbrs, degree) -> IrreducibleType:
    n = len(verts)
    end = next(v for v in verts if degree[v] == 1)
    seq = [m for _, m in _walk(end, -1, nbrs)]
    special = [(pos, m) for pos, m in enumerate(seq) if m != 3]
    last = n - 2
    if not special:
        return Finite("A", n)
    if len(special) == 1:
        pos, m = special[0]
        at_end = pos in (0, last)
        if m == 4:
            if at_end:
                return Finite("B", n)
            if n == 4:
                return Finite("F", 4)
            if n == 5:
                return Affine("F", 4)
            return Indefinite
        if m == 5:
            return Finite("H", n) if at_end and n in (3, 4) else Indefinite
        if m == 6:
            return Affine("G", 2) if at_end and n == 3 else Indefinite
        return Indefinite
    if len(special) == 2 and all(m == 4 for _, m in special):
        if {pos for pos, _ in special} == {0, last}:
            return Affine("C", n - 1)
    return Indefinite


def _match_fork(center: int, nbrs) -> IrreducibleType:
    arms = []
    for u, m in nbrs[center]:
        path = [(u, m)] + _walk(u, center, nbrs)
        arms.append([lab for _, lab in path])
    arms.sort(key=len)
    lengths = tuple(len(a) for a in arms)
    odd = [(k, pos, m) for k, arm in enumerate(arms) for pos, m in enumerate(arm) if m != 3]
    if not odd:
        if lengths[:2] == (1, 1):
            return Finite("D", lengths[2] + 3)
        return {
            (1, 2, 2): Finite("E", 6),
            (1, 2, 3): Finite("E", 7),
            (1, 2, 4): Finite("E", 8),
            (2, 2, 2): Affine("E", 6),
            (1, 3, 3): Affine("E", 7),
            (1, 2, 5): Affine("E", 8),
        }.get(lengths, Indefinite)
    if len(odd) == 1 and lengths[:2] == (1, 1):
        k, pos, m = odd[0]
        if m == 4 and pos == len(arms[k]) - 1 and len(arms[k]) == lengths[2]:
            return Affine("B", lengths[2] + 2)
    return Indefinite


# -- public operations -------------------------------------------------------


def classify_mask(d: CoxeterDiagram, mask: int) -> IrreducibleType:
    key = ("type", mask)
    hit = d._cache.get(key)
    if hit is None:
        hit = d._cache[key] = _match(d, mask)
    return hit


def coxeter_graph_components_mask(d: CoxeterDiagram, mask: int) -> list[int]:
    return d.components_of_mask(mask, d._cox)


def coxeter_graph_components(d: CoxeterDiagram, a) -> list[frozenset[str]]:
    """Components of the graph on ``a`` joining pairs with ``m != 2`` (``inf`` included)."""
    return [d.subset(c) for c in coxeter_graph_components_mask(d, d.mask(a))]


def classify_irreducible(d: CoxeterDiagram) -> IrreducibleType:
    mask = d.full_mask
    if not mask:
        raise CoxeterInputError("cannot classify the empty diagram")
    if len(coxeter_graph_components_mask(d, mask)) != 1:
        raise CoxeterInputError("diagram is reducible: its Coxeter graph is disconnected")
    return classify_mask(d, mask)


def va_info_mask(d: CoxeterDiagram, mask: int) -> tuple[int, int] | None:
    """``(E-mask, rank)`` for a virtually abelian subset, ``None`` otherwise."""
    key = ("va", mask)
    if key in d._cache:
        return d._cache[key]
    e_mask = 0
    rank = 0
    result: tuple[int, int] | None
    for comp in coxeter_graph_components_mask(d, mask):
        t = classify_mask(d, comp)
        if t.kind == INDEFINITE:
            result = None
            break
        if t.kind == AFFINE:
            e_mask |= comp
            rank += comp.bit_count() - 1
    else:
        result = (e_mask, rank)
    d._cache[key] = result
    return result


def virtually_abelian_structure(d: CoxeterDiagram, a) -> VirtAbelianStructure | None:
    """Direct-product structure of ``<a>``; ``None`` means not virtually abelian."""
    mask = d.mask(a)
    finite, euclid = [], []
    for comp in coxeter_graph_components_mask(d, mask):
        t = classify_mask(d, comp)
        if t.kind == INDEFINITE:
            return None
        (euclid if t.kind == AFFINE else finite).append((d.subset(comp), t))
    e_of_a = frozenset().union(*(c for c, _ in euclid))
    return VirtAbelianStructure(
        subset=d.subset(mask),
        finite_part=frozenset().union(*(c for c, _ in finite)),
        euclidean_components=tuple(euclid),
        e_of_a=e_of_a,
        rank=sum(len(c) - 1 for c, _ in euclid),
        finite_components=tuple(finite),
    )


def irreducible_pieces(d: CoxeterDiagram, within: int) -> list[int]:
    """Coxeter-connected finite-or-affine subsets of ``within``.

    Grown one neighbour at a time from their lowest member; an indefinite
    connected set is never extended since every connected superset stays
    indefinite.
    """
    out = []
    cox = d._cox
    for root in bits(within):
        allowed = within & ~((1 << root) - 1)
        seen = {1 << root}
        stack = [1 << root]
        while stack:
            cur = stack.pop()
            if classify_mask(d, cur).kind == INDEFINITE:
                continue
            out.append(cur)
            frontier = 0
            for i in bits(cur):
                frontier |= cox[i]
            frontier &= allowed & ~cur
            for j in bits(frontier):
                nxt = cur | (1 << j)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return out


def virtually_abelian_masks(d: CoxeterDiagram, within: int) -> list[int]:
    """All virtually abelian subsets of ``within`` (the empty set included).

    Each subset is assembled from pairwise commuting irreducible pieces, so it
    is produced exactly once, from its own Coxeter-graph components.
    """
    key = ("va-subsets", within)
    hit = d._cache.get(key)
    if hit is not None:
        return hit
    pieces = irreducible_pieces(d, within)
    pieces.sort(key=lambda p: (p & -p).bit_length())
    comm = d._comm
    commute_mask = []
    for p in pieces:
        c = within
        for i in bits(p):
            c &= comm[i]
        commute_mask.append(c)
    results = []

    def extend(start: int, current: int, allowed: int) -> None:
        results.append(current)
        for k in range(start, len(pieces)):
            p = pieces[k]
            if p & ~allowed:
                continue
            extend(k + 1, current | p, allowed & commute_mask[k])

    extend(0, 0, within)
    d._cache[key] = results
    return results
