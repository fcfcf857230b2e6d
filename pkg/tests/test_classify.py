import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import coxeter_graph, path
from coxjsj.classify import (
    AFFINE,
    FINITE,
    INDEFINITE,
    classify_irreducible,
    coxeter_graph_components,
    va_info_mask,
    virtually_abelian_masks,
    virtually_abelian_structure,
)
from coxjsj.diagram import CoxeterDiagram
from coxjsj.errors import CoxeterInputError
from coxjsj.oracle import classification_disagreements, gram_spectrum_classify


def fork(arms, outer=None):
    """Three arms of the given lengths on a centre ``0``; ``outer`` labels the last edge of the longest arm."""
    edges, nxt = [], 1
    for k, length in enumerate(arms):
        prev = 0
        for step in range(length):
            m = outer if outer and k == len(arms) - 1 and step == length - 1 else 3
            edges.append((prev, nxt, m))
            prev, nxt = nxt, nxt + 1
    return coxeter_graph(nxt, edges)


def cycle(n):
    return coxeter_graph(n, [(k, (k + 1) % n, 3) for k in range(n)])


def d_tilde(n):
    """Two forks at ``1`` and ``n-3`` on a path ``1..n-3`` with leaves hung on each."""
    edges = [(k, k + 1, 3) for k in range(1, n - 3)]
    edges += [(0, 1, 3), (n - 2, 1, 3), (n - 3, n - 1, 3), (n - 3, n, 3)]
    return coxeter_graph(n + 1, edges)


TABLE = [
    (path(1), "A1"),
    (path(2, {0: 5}), "I2(5)"),
    (path(2, {0: "inf"}), "~A1"),
    (path(5), "A5"),
    (path(4, {0: 4}), "B4"),
    (path(4, {2: 4}), "B4"),
    (path(4, {1: 4}), "F4"),
    (path(3, {0: 5}), "H3"),
    (path(4, {2: 5}), "H4"),
    (fork((1, 1, 1)), "D4"),
    (fork((1, 1, 3)), "D6"),
    (fork((1, 2, 2)), "E6"),
    (fork((1, 2, 3)), "E7"),
    (fork((1, 2, 4)), "E8"),
    (cycle(3), "~A2"),
    (cycle(6), "~A5"),
    (path(3, {0: 4, 1: 4}), "~C2"),
    (path(5, {0: 4, 3: 4}), "~C4"),
    (path(3, {0: 6}), "~G2"),
    (path(5, {2: 4}), "~F4"),
    (fork((1, 1, 1), outer=4), "~B3"),
    (fork((1, 1, 2), outer=4), "~B4"),
    (coxeter_graph(5, [(0, k, 3) for k in range(1, 5)]), "~D4"),
    (d_tilde(5), "~D5"),
    (d_tilde(7), "~D7"),
    (fork((2, 2, 2)), "~E6"),
    (fork((1, 3, 3)), "~E7"),
    (fork((1, 2, 5)), "~E8"),
    (path(3, {0: 5, 1: 5}), "indefinite"),
    (path(4, {0: 6}), "indefinite"),
    (CoxeterDiagram("012", {("0", "1"): 4, ("1", "2"): 3, ("0", "2"): 3}), "indefinite"),
    (fork((1, 2, 6)), "indefinite"),
    (path(3, {0: "inf"}), "indefinite"),
    (path(2, {0: 7}), "I2(7)"),
    (path(3, {0: 7}), "indefinite"),
]


@pytest.mark.parametrize("d, name", TABLE, ids=[name + f"#{k}" for k, (_, name) in enumerate(TABLE)])
def test_table_types(d, name):
    t = classify_irreducible(d)
    assert t.name == name
    spectrum = gram_spectrum_classify(d)
    expected = {FINITE: "PositiveDefinite", AFFINE: "PositiveSemidefinite", INDEFINITE: "Indefinite"}[t.kind]
    assert spectrum == expected


@pytest.mark.parametrize("d, name", TABLE, ids=[name + f"#{k}" for k, (_, name) in enumerate(TABLE)])
def test_table_agrees_with_gram_on_every_irreducible_subdiagram(d, name):
    assert classification_disagreements(d) == []


def test_classify_irreducible_errors():
    with pytest.raises(CoxeterInputError):
        classify_irreducible(CoxeterDiagram([]))
    with pytest.raises(CoxeterInputError):
        classify_irreducible(CoxeterDiagram("pq", {("p", "q"): 2}))


def test_coxeter_graph_components(fix_e5, fix_cycle8):
    assert coxeter_graph_components(fix_e5, set("1278")) == [{"1", "2"}, {"7", "8"}]
    assert coxeter_graph_components(fix_e5, {"5"}) == [{"5"}]
    assert coxeter_graph_components(fix_cycle8, {"x", "y", "b"}) == [{"x", "y", "b"}]


def test_structure_of_rank_two_splitter(fix_e5):
    va = virtually_abelian_structure(fix_e5, set("1278"))
    assert va.finite_part == frozenset()
    assert [(c, t.name) for c, t in va.euclidean_components] == [({"1", "2"}, "~A1"), ({"7", "8"}, "~A1")]
    assert va.e_of_a == set("1278")
    assert va.rank == 2


def test_finite_dihedral_structure(fix_cycle8):
    va = virtually_abelian_structure(fix_cycle8, {"x", "u"})
    assert va.finite_part == {"x", "u"}
    assert va.e_of_a == frozenset() and va.rank == 0


def test_not_virtually_abelian(fix_cycle8):
    assert virtually_abelian_structure(fix_cycle8, {"x", "y", "u", "v"}) is None
    assert gram_spectrum_classify(fix_cycle8, {"x", "y", "u", "v"}) == "Indefinite"


def test_dihedral_examples():
    assert classify_irreducible(path(2, {0: 3})).name == "I2(3)"
    assert classify_irreducible(path(2, {0: "inf"})).name == "~A1"
    assert classify_irreducible(cycle(3)).name == "~A2"


def test_only_affine_a1_has_an_unrelated_pair():
    for d, name in TABLE:
        t = classify_irreducible(d)
        if t.kind != INDEFINITE and len(d.labels) < len(d) * (len(d) - 1) // 2:
            assert name == "~A1"


labels = st.sampled_from([3, 3, 3, 4, 4, 5, 6, "inf"])


@st.composite
def labeled_trees(draw):
    n = draw(st.integers(2, 9))
    edges = [(k, draw(st.integers(0, k - 1)), draw(labels)) for k in range(1, n)]
    return coxeter_graph(n, edges)


@settings(max_examples=300, deadline=None)
@given(labeled_trees())
def test_random_trees_agree_with_gram(d):
    assert classification_disagreements(d) == []


@st.composite
def small_diagrams(draw):
    n = draw(st.integers(1, 6))
    gens = [f"s{k}" for k in range(n)]
    out = []
    for s, t in itertools.combinations(gens, 2):
        m = draw(st.sampled_from([None, 2, 2, 2, 3, 4, 6]))
        if m is not None:
            out.append((s, t, m))
    return CoxeterDiagram(gens, out)


@settings(max_examples=100, deadline=None)
@given(small_diagrams())
def test_pruned_enumeration_finds_every_virtually_abelian_subset(d):
    full = d.full_mask
    brute = {m for m in range(full + 1) if va_info_mask(d, m) is not None}
    found = virtually_abelian_masks(d, full)
    assert len(found) == len(set(found))
    assert set(found) == brute


@settings(max_examples=100, deadline=None)
@given(small_diagrams())
def test_rank_zero_iff_no_euclidean_part(d):
    for m in virtually_abelian_masks(d, d.full_mask):
        e, rank = va_info_mask(d, m)
        assert e & ~m == 0
        assert (rank == 0) == (e == 0)
        spectrum = gram_spectrum_classify(d, d.subset(m)) if m else "PositiveDefinite"
        assert (rank == 0) == (spectrum == "PositiveDefinite")


def test_structure_parts_commute():
    rng = random.Random(3)
    from coxjsj.randomgen import random_diagram

    for _ in range(50):
        d = random_diagram(rng, 6)
        for m in virtually_abelian_masks(d, d.full_mask):
            va = virtually_abelian_structure(d, d.subset(m))
            parts = [c for c, _ in va.euclidean_components] + [c for c, _ in va.finite_components]
            assert frozenset().union(*parts) == va.subset if parts else not va.subset
            for p, q in itertools.combinations(parts, 2):
                assert all(d.m(s, t) == 2 for s in p for t in q)
