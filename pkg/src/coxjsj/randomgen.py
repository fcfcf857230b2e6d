"""Seeded random diagrams for property tests and the CLI."""

from __future__ import annotations

import itertools
import random

from coxjsj.diagram import CoxeterDiagram

LABEL_WEIGHTS = {None: 40, 2: 35, 3: 15, 4: 5, 5: 2, 6: 2, 7: 1}
# mostly commuting or unrelated pairs: many splittings and crossing splitters
SPARSE_WEIGHTS = {None: 45, 2: 45, 3: 7, 4: 3}


def random_diagram(rng: random.Random, n: int, weights: dict | None = None) -> CoxeterDiagram:
    """``n`` generators named ``g0..``; each pair independently unrelated or labeled.

    ``None`` in ``weights`` stands for an unrelated pair.
    """
    weights = LABEL_WEIGHTS if weights is None else weights
    choices, w = zip(*weights.items())
    gens = [f"g{k}" for k in range(n)]
    labels = []
    for s, t in itertools.combinations(gens, 2):
        m = rng.choices(choices, w)[0]
        if m is not None:
            labels.append((s, t, m))
    return CoxeterDiagram(gens, labels)


def random_path_union(rng: random.Random, max_components: int = 3, max_total: int = 8, min_total: int = 4) -> CoxeterDiagram:
    """Disjoint union of simple paths and isolated points with random finite path labels.

    Sizes are drawn so that at least ``min_total`` generators appear.
    """
    while True:
        k = rng.randint(1, max_components)
        sizes = [rng.randint(1, max_total) for _ in range(k)]
        if min_total <= sum(sizes) <= max_total:
            break
    gens, labels = [], []
    for c, size in enumerate(sizes):
        names = [f"t{c}_{j}" for j in range(size)]
        gens += names
        labels += [(s, t, rng.choice((2, 3, 3, 4, 5, 6))) for s, t in zip(names, names[1:])]
    return CoxeterDiagram(gens, labels)
