"""Command line front end.

Commands: graph, classify, rootseq, moves, contract, pi, census, mc-all.
Words are comma separated (``--word 1,2,1``); any ``--graph`` or
``--word`` value of the form ``@path`` is read from the file instead.
Exit status: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import clusters, enumeration, graphs, triples, words
from .errors import CoxeterError

SCHEMA_PREFIX = "coxclusters"


def _indirect(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:], "r", encoding="utf-8") as handle:
            return handle.read()
    return value


def _graph_of(args) -> graphs.CoxeterGraph:
    return graphs.parse_graph(_indirect(args.graph))


def _word_of(args) -> words.Word:
    return words.parse_word(_indirect(args.word))


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _schema(name: str) -> str:
    return f"{SCHEMA_PREFIX}/{name}/1"


def _cmd_graph(args) -> int:
    g = graphs.parse_graph(_indirect(args.spec))
    report = graphs.classify_graph(g)
    if args.format == "json":
        _emit_json({"schema": _schema("graph"), "graph": g.to_dict(), **report.to_dict()})
    else:
        print(f"vertices: {len(g.vertices)}")
        print(f"edges: {len(g.edges)}")
        print(f"mc_finite: {str(report.mc_finite).lower()}")
        for comp in report.per_component:
            labels = ",".join(str(v) for v in comp.vertices)
            print(
                f"component {labels}: mc_finite={str(comp.mc_finite).lower()} "
                f"reason={comp.reason}"
            )
    return 0


def _cmd_classify(args) -> int:
    g = _graph_of(args)
    w = _word_of(args)
    report = triples.classify_element(g, w, max_nodes=args.max_nodes)
    if args.format == "json":
        doc = {
            "schema": _schema("classify"),
            "graph": g.to_dict(),
            "word": list(w),
            "length": len(w),
        }
        doc.update(report.to_dict())
        _emit_json(doc)
    else:
        print(f"word: {words.format_word(w)}")
        print(f"length: {len(w)}")
        print(f"fully_commutative: {'yes' if report.fully_commutative else 'no'}")
        print(f"freely_braided: {'yes' if report.freely_braided else 'no'}")
        print(f"maximally_clustered: {'yes' if report.maximally_clustered else 'no'}")
        print(f"contractible_count: {report.contractible_count}")
        print(f"cluster_count: {report.cluster_count}")
        ordered = sorted(report.triples, key=triples.InversionTriple.sort_key)
        print(f"triples: {len(ordered)}")
        for t in ordered:
            mark = " contractible" if t.contractible else ""
            print(
                f"  {words.format_root(t.low_a)} + {words.format_root(t.low_b)}"
                f" -> {words.format_root(t.high)}{mark}"
            )
    return 0


def _cmd_rootseq(args) -> int:
    g = _graph_of(args)
    w = _word_of(args)
    rs = words.root_sequence(g, w)
    if args.format == "json":
        _emit_json(
            {
                "schema": _schema("rootseq"),
                "word": list(w),
                "roots": [list(r) for r in rs],
            }
        )
    else:
        print(f"word: {words.format_word(w)}")
        print(f"roots: {len(rs)}")
        for r in rs:
            print(f"  {words.format_root(r)}")
    return 0


def _sorted_words(ws) -> list[words.Word]:
    return sorted(ws, key=lambda w: (len(w), w))


def _cmd_moves(args) -> int:
    g = _graph_of(args)
    w = _word_of(args)
    if args.short_only:
        found = words.commutation_class(g, w, max_nodes=args.max_nodes)
    else:
        found = words.reduced_word_graph(g, w, max_nodes=args.max_nodes)
    ordered = _sorted_words(found)
    if args.format == "json":
        _emit_json(
            {
                "schema": _schema("moves"),
                "word": list(w),
                "short_only": bool(args.short_only),
                "count": len(ordered),
                "words": [list(u) for u in ordered],
            }
        )
    else:
        print(f"count: {len(ordered)}")
        for u in ordered:
            print(words.format_word(u))
    return 0


def _cmd_contract(args) -> int:
    g = _graph_of(args)
    w = _word_of(args)
    contracted = clusters.find_contracted_expression(g, w, max_nodes=args.max_nodes)
    d = clusters.contracted_decomposition(g, contracted)
    report = triples.classify_element(g, w)
    if args.format == "json":
        doc = {
            "schema": _schema("contract"),
            "word": list(w),
            "contracted": list(contracted),
            "contractible_count": report.contractible_count,
            "cluster_count": report.cluster_count,
        }
        doc.update(d.to_dict())
        _emit_json(doc)
    else:
        print(f"word: {words.format_word(w)}")
        print(f"contracted: {words.format_word(contracted)}")
        print(f"bracketed: {d.bracketed()}")
        print(f"contractible_count: {report.contractible_count}")
        print(f"cluster_count: {report.cluster_count}")
    return 0


def _cmd_pi(args) -> int:
    g = _graph_of(args)
    text = _indirect(args.word)
    if "[" in text:
        d = clusters.parse_bracketed(g, text)
        w = d.word
    else:
        w = words.parse_word(text)
        d = None
    if args.iterate:
        image = clusters.contract_fully(g, w)
    else:
        if d is None:
            contracted = clusters.find_contracted_expression(g, w)
            d = clusters.contracted_decomposition(g, contracted)
        image = clusters.contract_cluster(g, d, args.cluster)
    remaining = triples.classify_element(g, image).cluster_count
    if args.format == "json":
        _emit_json(
            {
                "schema": _schema("pi"),
                "input": list(w),
                "image": list(image),
                "cluster_count": remaining,
            }
        )
    else:
        print(f"word: {words.format_word(w)}")
        print(f"image: {words.format_word(image)}")
        print(f"cluster_count: {remaining}")
    return 0


def _cmd_census(args) -> int:
    g = _graph_of(args)
    rows = enumeration.enumerate_by_length(g, args.max_length, max_nodes=args.max_nodes)
    if args.format == "json":
        _emit_json(
            {"schema": _schema("census"), "rows": [row.to_dict() for row in rows]}
        )
    else:
        print(f"{'length':>6} {'total':>7} {'fc':>7} {'fb':>7} {'mc':>7}")
        for row in rows:
            print(
                f"{row.length:>6} {row.total:>7} {row.fc:>7} {row.fb:>7} {row.mc:>7}"
            )
    return 0


def _cmd_mc_all(args) -> int:
    g = _graph_of(args)
    found = enumeration.enumerate_all_mc(
        g,
        max_length=args.max_length,
        max_nodes=args.max_nodes,
        override_finiteness=args.override_finiteness,
    )
    ordered = _sorted_words(found)
    if args.format == "json":
        doc = {"schema": _schema("mc-all"), "count": len(ordered)}
        if not args.count:
            doc["words"] = [list(u) for u in ordered]
        _emit_json(doc)
    elif args.count:
        print(len(ordered))
    else:
        print(f"count: {len(ordered)}")
        for u in ordered:
            print(words.format_word(u))
    return 0


def _add_common(sub, *, word: bool = True) -> None:
    sub.add_argument("--graph", required=True, help="graph spec (A3, D4, E6, JSON or @file)")
    if word:
        sub.add_argument("--word", required=True, help="comma separated letters or @file")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument(
        "--max-nodes",
        type=int,
        default=words.DEFAULT_MAX_NODES,
        help="search/enumeration node cap",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxclusters",
        description="Clustered elements of simply laced Coxeter groups.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("graph", help="classify a Coxeter graph for MC-finiteness")
    p.add_argument("spec", help="graph spec (A3, D4, E6, JSON or @file)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_graph)

    p = commands.add_parser("classify", help="triple report of a reduced word's element")
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = commands.add_parser("rootseq", help="root sequence of a reduced word")
    _add_common(p)
    p.set_defaults(func=_cmd_rootseq)

    p = commands.add_parser("moves", help="all words reachable by braid moves")
    _add_common(p)
    p.add_argument(
        "--short-only",
        action="store_true",
        help="commuting swaps only (the commutation class)",
    )
    p.set_defaults(func=_cmd_moves)

    p = commands.add_parser("contract", help="contracted expression and its parse")
    _add_common(p)
    p.set_defaults(func=_cmd_contract)

    p = commands.add_parser("pi", help="contract a cluster of a maximally clustered element")
    _add_common(p)
    p.add_argument("--cluster", type=int, default=1, help="1-based cluster index")
    p.add_argument(
        "--iterate",
        action="store_true",
        help="contract every cluster, landing on a fully commutative element",
    )
    p.set_defaults(func=_cmd_pi)

    p = commands.add_parser("census", help="census of elements by length")
    _add_common(p, word=False)
    p.add_argument("--max-length", type=int, required=True, help="largest length to census")
    p.set_defaults(func=_cmd_census)

    p = commands.add_parser("mc-all", help="enumerate all maximally clustered elements")
    _add_common(p, word=False)
    p.add_argument("--max-length", type=int, default=None, help="optional length cap")
    p.add_argument("--count", action="store_true", help="print only the count")
    p.add_argument(
        "--override-finiteness",
        action="store_true",
        help="enumerate under caps even when the graph is not MC-finite",
    )
    p.set_defaults(func=_cmd_mc_all)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CoxeterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
