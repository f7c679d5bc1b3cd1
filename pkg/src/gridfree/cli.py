"""Command-line interface.

JSON reports go to stdout, logs to stderr. Exit codes: 0 success, 1 claim
violated, 2 usage error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import constructions, cores, detect, formats, hypergraph, obstruction
from .constructions import SetSpec, SpecError
from .ffield import FieldError

log = logging.getLogger("gridfree")

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _vertex_json(v):
    return [v.part, v.value] if isinstance(v, hypergraph.Vertex) else v


def _embedding_json(emb: detect.Embedding) -> dict:
    return {"vertex_map": [_vertex_json(v) for v in emb.vertex_map],
            "edges": [list(e) for e in emb.edge_map]}


def cmd_build(args) -> int:
    kind = args.construction
    if kind == "qr":
        if args.x_set or args.a_set:
            raise UsageError("qr construction takes no --x-set/--a-set")
        H = constructions.build_qr(args.p)
    else:
        defaults = {"mult": ("nonzero", "nonzero"), "ap": ("all", "all"),
                    "quadratic": (f"interval:1..{max(1, args.p // 8)}",) * 2}
        xs = args.x_set or defaults[kind][0]
        as_ = args.a_set or defaults[kind][1]
        H = constructions.BUILDERS[kind](args.p, SetSpec.parse(xs), SetSpec.parse(as_))
    if args.out:
        formats.save_hypergraph(H, args.out)
        log.info("wrote %d edges to %s", H.num_edges, args.out)
    _emit({"construction": kind, "p": args.p, "out": args.out,
           "report": obstruction.density_report(H)})
    return EXIT_OK


def cmd_detect(args) -> int:
    F = formats.load_pattern(args.pattern)
    H = formats.load_host(args.input)
    res = detect.find_embeddings(H, F, args.mode, max_nodes=args.max_nodes,
                                 partition_agnostic=args.partition_agnostic, threads=args.threads)
    for emb in res.embeddings:
        if not detect.verify_embedding(H, F, emb):
            raise AssertionError("search produced an invalid embedding")
    _emit({"pattern": F.name or str(args.pattern), "mode": args.mode, "status": res.status,
           "count": res.count, "nodes": res.nodes,
           "witnesses": [_embedding_json(e) for e in res.embeddings]})
    if res.exhausted and not res.found:
        return EXIT_BUDGET
    if args.expect_free and res.found:
        return EXIT_VIOLATED
    return EXIT_OK


def cmd_linearize(args) -> int:
    H = formats.load_hypergraph(args.input)
    pairs = hypergraph.conflicting_pairs(H)
    H2 = hypergraph.linearize(H)
    if args.out:
        formats.save_hypergraph(H2, args.out)
    _emit({"conflicting_pairs": len(pairs), "edges_before": H.num_edges,
           "edges_after": H2.num_edges, "linear": hypergraph.is_linear(H2),
           "method": H2.provenance.get("linearize", {}).get("method", "none"), "out": args.out})
    return EXIT_OK


def cmd_enumerate_cores(args) -> int:
    cat = cores.enumerate_linear_2cores(args.max_vertices, threads=args.threads)
    if args.out:
        formats.save_catalog(cat, args.out)
    _emit({"max_vertices": args.max_vertices, "entries": len(cat), "out": args.out,
           "grid_entries": [c.name for c in cat.grid_entries()],
           "by_size": [{"v": c.v, "e": c.e, "name": c.name, **c.flags()} for c in cat]})
    return EXIT_OK


def cmd_scan_cores(args) -> int:
    H = formats.load_host(args.input)
    if args.catalog:
        cat = formats.load_catalog(args.catalog)
    else:
        cat = cores.enumerate_linear_2cores(args.max_vertices, threads=args.threads)
    rows = cores.scan_for_cores(H, cat, max_nodes=args.max_nodes, threads=args.threads)
    found = [r for r in rows if r.status == "found"]
    _emit({"entries": len(rows), "found": [r.entry.name for r in found],
           "non_grid_found": [r.entry.name for r in found if not r.entry.is_grid],
           "indeterminate": [r.entry.name for r in rows if r.status == "indeterminate"],
           "rows": [r.to_dict() for r in rows]})
    if any(r.status == "indeterminate" for r in rows):
        return EXIT_BUDGET
    if args.expect_only_grid and any(not r.entry.is_grid for r in found):
        return EXIT_VIOLATED
    return EXIT_OK


def cmd_solve_obstruction(args) -> int:
    rep = obstruction.count_solutions(args.equation, args.p, SetSpec.parse(args.x_set),
                                      SetSpec.parse(args.a_set), witness_cap=args.witness_cap)
    _emit(rep.to_dict())
    if args.expect_none and rep.count:
        return EXIT_VIOLATED
    return EXIT_OK


def cmd_search_sets(args) -> int:
    x_spec = SetSpec.parse(args.x_set) if args.x_set else None
    res = obstruction.search_sets(args.p, args.equation, args.strategy, args.seed, x_spec)
    _emit(res.to_dict())
    return EXIT_OK


def cmd_report(args) -> int:
    H = formats.load_hypergraph(args.input)
    _emit(obstruction.density_report(H))
    return EXIT_OK


def cmd_partitions(args) -> int:
    F = formats.load_pattern(args.pattern)
    rep = detect.enumerate_3partitions(F)
    _emit({"pattern": F.name or str(args.pattern),
           "partitions": [[list(c) for c in P] for P in rep.partitions],
           "count": len(rep.partitions), "all_equivalent": rep.all_equivalent,
           "automorphism_group_order": detect.automorphism_group_order(F)})
    return EXIT_OK


def cmd_classify_96(args) -> int:
    rep = cores.classify_96_configurations(threads=args.threads)
    _emit(rep.to_dict())
    return EXIT_OK if rep.covered else EXIT_VIOLATED


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("GRIDFREE_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridfree",
                                     description="Grid-free linear 3-uniform hypergraph toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $GRIDFREE_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a construction and write it to a file")
    p.add_argument("--construction", required=True, choices=["mult", "qr", "quadratic", "ap"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x-set")
    p.add_argument("--a-set")
    p.add_argument("--out", help="*.json for trihyper-v1 JSON, anything else for the text format")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("detect", help="search a host for copies of a pattern")
    p.add_argument("--pattern", required=True, help="grid, triangle or a pattern-v1 file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=["first", "count", "all"], default="first")
    p.add_argument("--expect-free", action="store_true", help="exit 1 if a copy is found")
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--partition-agnostic", action="store_true")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("linearize", help="delete one edge from every conflicting pair")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("enumerate-cores", help="catalog of linear 2-cores")
    p.add_argument("--max-vertices", type=int, default=9)
    p.add_argument("--out", help="catalog directory")
    p.set_defaults(func=cmd_enumerate_cores)

    p = sub.add_parser("scan-cores", help="look for every catalog core in a host")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--catalog", help="catalog directory (default: enumerate on the fly)")
    p.add_argument("--max-vertices", type=int, default=9)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--expect-only-grid", action="store_true",
                   help="exit 1 if any core other than the grid is found")
    p.set_defaults(func=cmd_scan_cores)

    p = sub.add_parser("solve-obstruction", help="count solutions of an obstruction equation")
    p.add_argument("--equation", required=True, choices=obstruction.KINDS)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x-set", default="nonzero")
    p.add_argument("--a-set", default="nonzero")
    p.add_argument("--witness-cap", type=int, default=obstruction.WITNESS_CAP)
    p.add_argument("--expect-none", action="store_true", help="exit 1 if solutions exist")
    p.set_defaults(func=cmd_solve_obstruction)

    p = sub.add_parser("search-sets", help="grow solution-free sets")
    p.add_argument("--equation", required=True, choices=obstruction.KINDS)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--strategy", choices=["greedy", "randomized-greedy", "interval"],
                   default="greedy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--x-set", help="fix X instead of tying it to A")
    p.set_defaults(func=cmd_search_sets)

    p = sub.add_parser("report", help="density report for a hypergraph file")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("partitions", help="3-partitions and automorphism group order of a pattern")
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("classify-96", help="classify linear (9,6)-configurations")
    p.set_defaults(func=cmd_classify_96)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if args.threads is None:
        args.threads = _default_threads()
    try:
        return args.func(args)
    except (UsageError, SpecError, FieldError, obstruction.ObstructionError,
            formats.FormatError, hypergraph.SizeError, FileNotFoundError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
