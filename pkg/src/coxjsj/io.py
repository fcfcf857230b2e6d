"""Text format for diagrams, plus JSON and DOT renderings of decompositions.

The diagram format::

    # comments run to the end of the line
    generators: a b c
    edges:
    a b 3
    b c inf      # unrelated; same as leaving the line out
"""

from __future__ import annotations

import re

from coxjsj.diagram import CoxeterDiagram
from coxjsj.errors import CoxeterInputError, DiagramSyntaxError
from coxjsj.gog import GraphOfGroups

_TOKEN = re.compile(r"\S+")
_INF = ("inf", "infinity", "∞")


def _tokens(line: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in _TOKEN.finditer(line)]


def parse_diagram(text: str) -> CoxeterDiagram:
    gens: list[str] | None = None
    index: dict[str, int] = {}
    labels: dict[frozenset, tuple[int | None, int]] = {}
    in_edges = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        col, head = toks[0]
        lowered = head.lower()
        if lowered.startswith("generators:"):
            if gens is not None:
                raise DiagramSyntaxError("second 'generators:' line", lineno, col)
            rest = line[col - 1 + len("generators:"):]
            offset = col - 1 + len("generators:")
            gens = []
            for c, name in _tokens(rest):
                if name in index:
                    raise DiagramSyntaxError(f"duplicate generator {name!r}", lineno, c + offset)
                index[name] = len(gens)
                gens.append(name)
            continue
        if lowered.startswith("edges:"):
            if gens is None:
                raise DiagramSyntaxError("'edges:' before 'generators:'", lineno, col)
            if lowered != "edges:" or len(toks) > 1:
                raise DiagramSyntaxError("'edges:' takes nothing else on its line", lineno, col + 6)
            in_edges = True
            continue
        if not in_edges:
            raise DiagramSyntaxError(f"unexpected {head!r}; expected 'generators:' or 'edges:'", lineno, col)
        if len(toks) != 3:
            c = toks[3][0] if len(toks) > 3 else len(line.rstrip()) + 1
            raise DiagramSyntaxError(f"edge line needs '<s> <t> <m>', got {len(toks)} fields", lineno, c)
        (cs, s), (ct, t), (cm, m) = toks
        for c, name in ((cs, s), (ct, t)):
            if name not in index:
                raise DiagramSyntaxError(f"unknown generator {name!r}", lineno, c)
        if s == t:
            raise DiagramSyntaxError(f"edge from {s!r} to itself", lineno, ct)
        if m.lower() in _INF:
            value = None
        else:
            try:
                value = int(m)
            except ValueError:
                raise DiagramSyntaxError(f"label {m!r} is not an integer or 'inf'", lineno, cm) from None
            if value < 2:
                raise DiagramSyntaxError(f"label {value} must be at least 2", lineno, cm)
        key = frozenset((s, t))
        if key in labels and labels[key][0] != value:
            old, first = labels[key]
            shown = "inf" if old is None else old
            raise DiagramSyntaxError(f"conflicting label for {s} {t} (line {first} says {shown})", lineno, cm)
        labels[key] = (value, lineno)
    if gens is None:
        raise DiagramSyntaxError("missing 'generators:' line", 1, 1)
    try:
        return CoxeterDiagram(gens, {k: v for k, (v, _) in labels.items() if v is not None})
    except CoxeterInputError as exc:
        raise DiagramSyntaxError(str(exc), 1, 1) from exc


def read_diagram(path) -> CoxeterDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def format_diagram(d: CoxeterDiagram) -> str:
    lines = ["generators: " + " ".join(d.generators), "edges:"]
    lines += [f"{s} {t} {m}" for s, t, m in d.edge_list()]
    return "\n".join(lines) + "\n"


def tree_json(psi: GraphOfGroups) -> dict:
    d = psi.diagram
    return {
        "vertices": [list(d.ordered(v)) for v in psi.vertices],
        "edges": [{"between": [i, j], "set": list(d.ordered(e))} for i, j, e in psi.edges],
    }


def classification_json(d: CoxeterDiagram, result) -> dict:
    if result.kind == "rigid":
        return {"vertex": list(d.ordered(result.vertex)), "kind": "rigid", "t": None, "m": None, "shape": None}
    s = result.structure
    return {
        "vertex": list(d.ordered(s.vertex)),
        "kind": "orbifold",
        "t": list(d.ordered(s.t_part)),
        "m": list(d.ordered(s.m_part)),
        "shape": s.shape.describe(),
        "classification": s.classification,
    }


def trace_json(trace, classifications) -> dict:
    d = trace.diagram
    final = tree_json(trace.final)
    final["vertex_classifications"] = [classification_json(d, r) for r in classifications]
    return {
        "generators": list(d.generators),
        "edges": [[s, t, m] for s, t, m in d.edge_list()],
        "stages": [tree_json(psi) for psi in trace.stages],
        "final": final,
    }


def _dot_label(d: CoxeterDiagram, subset) -> str:
    return ",".join(d.ordered(subset))


def tree_dot(psi: GraphOfGroups, name: str = "decomposition") -> str:
    d = psi.diagram
    lines = [f'graph "{name}" {{']
    lines += [f'  v{i} [label="{_dot_label(d, v)}"];' for i, v in enumerate(psi.vertices)]
    lines += [f'  v{i} -- v{j} [label="{_dot_label(d, e)}"];' for i, j, e in psi.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
