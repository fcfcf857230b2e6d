"""Named test diagrams.

``cycle8`` is the eight-generator diagram whose JSJ decomposition is the
chain ``{a,b,x,y} - {x,y,u,v} - {u,v,c,d}``, ``star`` splits into four
vertices over the infinite dihedral ``{a,c}`` and ``e5`` has a
``Loop(4) x {7,8}`` orbifold vertex.  ``plain_cycle8`` is the bare 8-cycle,
which is a single orbifold vertex.
"""

from __future__ import annotations

from coxjsj.diagram import CoxeterDiagram


def cycle8() -> CoxeterDiagram:
    edges = [
        ("a", "b"), ("a", "x"), ("a", "y"), ("b", "x"), ("b", "y"),
        ("x", "u"), ("y", "v"),
        ("u", "c"), ("u", "d"), ("v", "c"), ("v", "d"), ("c", "d"),
    ]
    return CoxeterDiagram("a x u c d v y b".split(), [(s, t, 3) for s, t in edges])


def plain_cycle8() -> CoxeterDiagram:
    gens = "a x u c d v y b".split()
    return CoxeterDiagram(gens, [(gens[k], gens[(k + 1) % 8], 3) for k in range(8)])


def star() -> CoxeterDiagram:
    return CoxeterDiagram("abcdef", [(s, t, 2) for s in "ac" for t in "bdef"])


def e5() -> CoxeterDiagram:
    labels = [("1", "3", 3), ("3", "2", 3), ("2", "4", 3), ("4", "1", 3)]
    labels += [(s, t, 2) for s in "78" for t in "1234"]
    labels += [("5", "7", 2), ("5", "8", 2), ("6", "7", 2), ("6", "8", 2), ("5", "6", 3)]
    return CoxeterDiagram("12345678", labels)


FIXTURES = {"cycle8": cycle8, "star": star, "e5": e5}
