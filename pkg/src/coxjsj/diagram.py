"""Coxeter presentation diagrams and the graph queries the decomposition needs.

A diagram stores generator names and the finite labels ``m(s, t)``.  A pair
that is missing from the label map is unrelated (``m = inf``).  Internally
every subset of generators is also available as an integer bitmask indexed by
input order, which is what the enumeration code works with.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping

from coxjsj.errors import CoxeterInputError

INF = math.inf

Subset = frozenset  # frozenset[str]; canonical order is the diagram's generator order


def _parse_label(value) -> int | None:
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "∞"):
            return None
        try:
            value = int(value)
        except ValueError:
            raise CoxeterInputError(f"label {value!r} is not an integer or 'inf'") from None
    if value is None or value == INF:
        return None
    if isinstance(value, bool) or int(value) != value:
        raise CoxeterInputError(f"label {value!r} is not an integer")
    value = int(value)
    if value < 2:
        raise CoxeterInputError(f"label {value} < 2 (m = 1 only occurs on the diagonal)")
    return value


class CoxeterDiagram:
    """Immutable labeled graph on generator names.

    ``labels`` maps unordered pairs (any 2-element iterable) to an integer
    ``m >= 2`` or to ``"inf"``; infinite labels are normalized away.
    """

    __slots__ = ("generators", "labels", "_index", "_adj", "_cox", "_comm", "_m", "_cache")

    def __init__(self, generators: Iterable[str], labels: Mapping | Iterable = ()):
        gens = tuple(str(g) for g in generators)
        if len(set(gens)) != len(gens):
            dupes = sorted({g for g in gens if gens.count(g) > 1})
            raise CoxeterInputError(f"duplicate generator names: {', '.join(dupes)}")
        index = {g: i for i, g in enumerate(gens)}
        items = labels.items() if isinstance(labels, Mapping) else labels
        stored: dict[frozenset[str], int] = {}
        seen: dict[frozenset[str], int | None] = {}
        for entry in items:
            if isinstance(entry, tuple) and len(entry) == 3:
                pair, value = entry[:2], entry[2]
            else:
                pair, value = entry
            pair = tuple(pair)
            if len(pair) != 2 or pair[0] == pair[1]:
                raise CoxeterInputError(f"edge {pair!r} is not a pair of distinct generators")
            for g in pair:
                if g not in index:
                    raise CoxeterInputError(f"unknown generator {g!r}")
            m = _parse_label(value)
            key = frozenset(pair)
            if key in seen and seen[key] != m:
                old, new = (("inf" if x is None else x) for x in (seen[key], m))
                raise CoxeterInputError(f"conflicting labels for {sorted(pair)}: {old} vs {new}")
            seen[key] = m
            if m is not None:
                stored[key] = m
        n = len(gens)
        mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # 0 encodes inf
        adj = [0] * n
        cox = [0] * n
        comm = [0] * n
        for key, m in stored.items():
            s, t = (index[g] for g in key)
            mat[s][t] = mat[t][s] = m
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                m = mat[i][j]
                if m:
                    adj[i] |= 1 << j
                if m != 2:
                    cox[i] |= 1 << j
                else:
                    comm[i] |= 1 << j
        self.generators = gens
        self.labels = dict(stored)
        self._index = index
        self._adj = tuple(adj)
        self._cox = tuple(cox)
        self._comm = tuple(comm)
        self._m = tuple(tuple(row) for row in mat)
        self._cache: dict = {}

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoxeterDiagram):
            return NotImplemented
        return self.generators == other.generators and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.generators, frozenset(self.labels.items())))

    def __repr__(self) -> str:
        edges = ", ".join(
            f"{s}-{t}:{m}" for s, t, m in self.edge_list()
        )
        return f"CoxeterDiagram([{', '.join(self.generators)}], {{{edges}}})"

    def m(self, s: str, t: str) -> float:
        """Order of ``st``: 1 on the diagonal, ``inf`` for unrelated pairs."""
        i, j = self.index(s), self.index(t)
        value = self._m[i][j]
        return value if value else INF

    def index(self, g: str) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise CoxeterInputError(f"unknown generator {g!r}") from None

    def edge_list(self) -> list[tuple[str, str, int]]:
        """Finite-label edges ordered by generator position."""
        out = []
        n = len(self.generators)
        for i in range(n):
            for j in range(i + 1, n):
                if self._m[i][j]:
                    out.append((self.generators[i], self.generators[j], self._m[i][j]))
        return out

    # -- subsets and masks ---------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << len(self.generators)) - 1

    def mask(self, subset: Iterable[str]) -> int:
        if isinstance(subset, int):
            return subset
        out = 0
        for g in subset:
            out |= 1 << self.index(g)
        return out

    def subset(self, mask: int) -> frozenset[str]:
        return frozenset(self.generators[i] for i in _bits(mask))

    def ordered(self, subset) -> tuple[str, ...]:
        """Canonical tuple form: sorted by the diagram's generator order."""
        return tuple(self.generators[i] for i in _bits(self.mask(subset)))

    def fmt(self, subset) -> str:
        return "{" + ",".join(self.ordered(subset)) + "}"

    def sort_key(self, subset) -> tuple[int, ...]:
        return tuple(_bits(self.mask(subset)))

    def label_mask(self, i: int, j: int) -> int:
        """Raw label by index; 0 stands for ``inf``."""
        return self._m[i][j]

    def adjacency(self, i: int) -> int:
        return self._adj[i]

    def coxeter_adjacency(self, i: int) -> int:
        return self._cox[i]

    def commuting(self, i: int) -> int:
        return self._comm[i]

    # -- mask-level graph algorithms -----------------------------------

    def components_of_mask(self, mask: int, adj: tuple[int, ...] | None = None) -> list[int]:
        """Connected components of the graph induced on ``mask``.

        Order is by lowest member index, i.e. by the input order of the
        smallest contained generator.
        """
        adj = self._adj if adj is None else adj
        comps = []
        remaining = mask
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                new = adj[bit.bit_length() - 1] & mask & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            remaining &= ~comp
        return comps

    def parts_mask(self, a: int, within: int) -> list[int]:
        """Components of ``Gamma - a`` that meet ``within - a``."""
        rest = within & ~a
        return [c for c in self.components_of_mask(self.full_mask & ~a) if c & rest]

    def separates_mask(self, a: int, b: int) -> bool:
        rest = b & ~a
        if rest & (rest - 1) == 0:
            return False
        key = ("comp", a)
        comps = self._cache.get(key)
        if comps is None:
            comps = self.components_of_mask(self.full_mask & ~a)
            if len(self._cache) < 200_000:
                self._cache[key] = comps
        hit = 0
        for c in comps:
            if c & rest:
                hit += 1
                if hit == 2:
                    return True
        return False

    def is_complete_mask(self, mask: int) -> bool:
        return all((self._adj[i] | (1 << i)) & mask == mask for i in _bits(mask))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(_bits(mask))


def induced_subdiagram(d: CoxeterDiagram, a: Iterable[str]) -> CoxeterDiagram:
    """Diagram on ``a`` (kept in ``d``'s order) with the labels of ``d`` restricted to ``a``."""
    mask = d.mask(a)
    gens = d.ordered(mask)
    keep = set(gens)
    labels = {pair: m for pair, m in d.labels.items() if pair <= keep}
    return CoxeterDiagram(gens, labels)


def components(d: CoxeterDiagram) -> list[frozenset[str]]:
    return [d.subset(c) for c in d.components_of_mask(d.full_mask)]


def components_minus(d: CoxeterDiagram, a: Iterable[str]) -> list[frozenset[str]]:
    mask = d.mask(a)
    return [d.subset(c) for c in d.components_of_mask(d.full_mask & ~mask)]


def separates(d: CoxeterDiagram, a: Iterable[str], b: Iterable[str]) -> bool:
    """True iff two points of ``b - a`` lie in different components of ``Gamma - a``."""
    return d.separates_mask(d.mask(a), d.mask(b))
