"""Command line driver: ``coxjsj {classify,splitters,jsj,oracle,generate}``."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from coxjsj.classify import coxeter_graph_components, classify_mask, virtually_abelian_structure
from coxjsj.errors import ContractViolation, CoxeterInputError, DiagramSyntaxError, OracleRefusal
from coxjsj.io import format_diagram, read_diagram, trace_json, tree_dot
from coxjsj.jsj import check_amenable, check_visual, jsj, t33_violations
from coxjsj.orbifold import classify_vertex, realize_orbifold
from coxjsj.splitters import minimal_splitters

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2


def _subset_arg(d, text: str):
    names = [s.strip() for s in text.split(",") if s.strip()]
    for s in names:
        d.index(s)
    return frozenset(names)


def cmd_classify(args, out) -> int:
    d = read_diagram(args.file)
    subset = _subset_arg(d, args.subset) if args.subset is not None else frozenset(d.generators)
    for comp in coxeter_graph_components(d, subset):
        print(f"component {d.fmt(comp)}: {classify_mask(d, d.mask(comp)).name}", file=out)
    va = virtually_abelian_structure(d, subset)
    if va is None:
        print("not virtually abelian", file=out)
        return EXIT_OK
    print(f"virtually abelian, rank {va.rank}, E = {d.fmt(va.e_of_a)}", file=out)
    print(f"finite part {d.fmt(va.finite_part)}", file=out)
    return EXIT_OK


def _checks(d, trace) -> list[str]:
    problems = []
    for k, psi in enumerate(trace.stages):
        problems += [f"stage {k}: {p}" for p in check_visual(psi)]
        problems += [
            f"stage {k}: {d.fmt(a)} inside {d.fmt(v)} separates edge set {d.fmt(e)}"
            for v, e, a in check_amenable(d, psi)
        ]
    problems += [f"final: {d.fmt(a)} separates edge set {d.fmt(b)}" for a, b in t33_violations(d, trace.final)]
    return problems


def cmd_splitters(args, out) -> int:
    d = read_diagram(args.file)
    trace = jsj(d)
    if not 0 <= args.stage < len(trace.stages):
        print(f"stage {args.stage} does not exist; the run has stages 0..{len(trace.stages) - 1}", file=sys.stderr)
        return EXIT_INPUT
    psi = trace.stages[args.stage]
    status = EXIT_OK
    for v in psi.vertices:
        records = minimal_splitters(d, psi, v)
        print(f"vertex {d.fmt(v)}: {len(records)} minimal splitter(s)", file=out)
        for r in records:
            partners = ", ".join(d.fmt(p) for p in r.crossing_partners) or "-"
            print(f"  {d.fmt(r.subset)}  E = {d.fmt(r.e_of_a)}  rank {r.rank}  crosses {partners}", file=out)
        if args.exhaustive:
            from coxjsj.oracle import exhaustive_splitters

            slow = set(exhaustive_splitters(d, psi, v))
            if slow != {r.subset for r in records}:
                print(f"  brute force disagrees: {sorted(d.fmt(s) for s in slow)}", file=out)
                status = EXIT_CHECK_FAILED
            else:
                print("  brute force agrees", file=out)
    return status


def cmd_jsj(args, out) -> int:
    d = read_diagram(args.file)
    rng = random.Random(args.seed) if args.seed is not None else None
    trace = jsj(d, rng)
    final = trace.final
    results = [classify_vertex(d, final, v) for v in final.vertices]
    problems = _checks(d, trace)
    if args.dot:
        folder = Path(args.dot)
        folder.mkdir(parents=True, exist_ok=True)
        for k, psi in enumerate(trace.stages):
            (folder / f"stage{k}.dot").write_text(tree_dot(psi, f"stage {k}"), encoding="utf-8")
    if args.json:
        doc = trace_json(trace, results)
        doc["problems"] = problems
        json.dump(doc, out, indent=2)
        print(file=out)
    else:
        if args.trace:
            for k, psi in enumerate(trace.stages):
                print(f"-- stage {k}", file=out)
                print(psi.describe(), file=out)
                for entry in (trace.logs[k - 1] if k else []):
                    print(f"   split {d.fmt(entry.piece)} over {d.fmt(entry.splitter)}", file=out)
            print("-- final", file=out)
        print(f"{len(final.vertices)} vertices, {len(final.edges)} edges", file=out)
        for i, r in enumerate(results):
            if r.kind == "rigid":
                tag = "rigid"
            else:
                s = r.structure
                tag = f"orbifold T = {d.fmt(s.t_part)} M = {d.fmt(s.m_part)} {s.shape.describe()} {s.classification}"
            print(f"  [{i}] {d.fmt(final.vertices[i])}  {tag}", file=out)
        for i, j, e in final.edges:
            print(f"  [{i}]--[{j}] over {d.fmt(e)}", file=out)
        for p in problems:
            print(f"check failed: {p}", file=out)
    return EXIT_CHECK_FAILED if problems else EXIT_OK


def cmd_oracle(args, out) -> int:
    from coxjsj.oracle import cross_check

    d = read_diagram(args.file)
    problems = cross_check(d, seed=args.seed, orders=args.orders)
    if problems:
        for p in problems:
            print(f"disagreement: {p}", file=out)
        return EXIT_CHECK_FAILED
    print("all oracle checks agree", file=out)
    return EXIT_OK


def cmd_generate(args, out) -> int:
    t = read_diagram(args.orbifold)
    out.write(format_diagram(realize_orbifold(t)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxjsj", description="Visual JSJ decompositions of Coxeter groups.")
    p.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="finite/affine types and virtually abelian structure")
    c.add_argument("file")
    c.add_argument("--subset", help="comma-separated generators (default: all)")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("splitters", help="minimal splitters of every vertex at one stage")
    s.add_argument("file")
    s.add_argument("--stage", type=int, default=0)
    s.add_argument("--exhaustive", action="store_true", help="compare against brute force")
    s.set_defaults(func=cmd_splitters)

    j = sub.add_parser("jsj", help="JSJ decomposition with rigid/orbifold tags")
    j.add_argument("file")
    j.add_argument("--trace", action="store_true", help="print every stage")
    j.add_argument("--json", action="store_true")
    j.add_argument("--dot", metavar="DIR", help="write one DOT file per stage")
    j.add_argument("--seed", type=int, help="pick splitters in a random order")
    j.set_defaults(func=cmd_jsj)

    o = sub.add_parser("oracle", help="cross-check against the brute-force oracles")
    o.add_argument("file")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--orders", type=int, default=10, help="randomized splitter orders to compare")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("generate", help="emit a diagram realizing a given orbifold vertex")
    g.add_argument("--orbifold", required=True, metavar="FILE", help="union of paths and points")
    g.set_defaults(func=cmd_generate)
    return p


def run_cli(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except DiagramSyntaxError as exc:
        print(f"{args.file if hasattr(args, 'file') else args.orbifold}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CoxeterInputError, OracleRefusal, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
