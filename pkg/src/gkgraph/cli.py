"""Command-line front end.

Subcommands wire the file formats to every operation with stable,
machine-readable output. Exit codes: 0 success (or "realizable"),
1 valid input but the answer is no, 2 malformed input, 3 catalog or
data error. Diagnostics go to stderr, results to stdout; every
subcommand takes --format plain|json.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog as cat
from . import classify as cl
from . import graphs as gr
from . import permgroups as pg
from .characters import (
    TableError,
    achievable_graphs,
    edge_removal_set,
    fixed_dim_lower_bound,
    fixed_point_dimension,
    read_table_file,
)
from .gf import GFError, read_reps_file, semidirect_pgc

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_DATA = 3


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
        return
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list):
            value = " ".join(str(v) for v in value)
        print(f"{key}: {value}")


def _graph_payload(g: gr.LabeledGraph) -> dict:
    return {
        "vertices": gr.sorted_labels(g.vertices),
        "edges": [f"{u}-{v}" for u, v in g.edge_pairs()],
    }


def _load_graph(path: str):
    try:
        return gr.read_graph_file(path)
    except FileNotFoundError as exc:
        raise _Exit(EXIT_INPUT, f"graph file not found: {path}") from exc
    except gr.GraphError as exc:
        raise _Exit(EXIT_INPUT, f"{path}: {exc}") from exc


def _plain_graph(parsed) -> gr.LabeledGraph:
    return parsed.graph if isinstance(parsed, gr.RootedGraph) else parsed


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_pgc(args) -> int:
    try:
        gf = pg.read_group_file(args.group)
    except FileNotFoundError:
        raise _Exit(EXIT_INPUT, f"group file not found: {args.group}")
    except pg.GroupError as exc:
        raise _Exit(EXIT_INPUT, str(exc))
    try:
        if args.sample:
            spec = pg.sample_spectrum(gf.group, args.sample, args.seed)
            graph = pg.prime_graph_complement(spec, allow_sampled=True)
            advisory = True
        else:
            spec = pg.enumerate_elements(gf.group, args.limit)
            graph = pg.prime_graph_complement(spec)
            advisory = False
    except pg.EnumerationLimitError as exc:
        raise _Exit(EXIT_DATA, f"{exc} (use --sample N for an advisory spectrum)")
    payload = {
        "name": gf.name,
        "group_order": spec.group_order,
        "orders": sorted(spec.orders),
        "exhaustive": spec.exhaustive,
        "advisory": advisory,
        **_graph_payload(graph),
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_classify(args) -> int:
    parsed = _load_graph(args.graph)
    g = _plain_graph(parsed)
    catalog = None
    if args.family in ("sz8", "psl232"):
        try:
            catalog = cat.load_catalog(args.family)
        except cat.CatalogError as exc:
            raise _Exit(EXIT_DATA, str(exc))
    try:
        verdict = cl.classify(args.family, g, catalog, strict=args.strict)
    except cat.CatalogError as exc:
        raise _Exit(EXIT_DATA, str(exc))
    payload = {
        "family": args.family,
        "realizable": verdict.realizable,
        "condition": verdict.condition,
    }
    if verdict.certificate is not None:
        c = verdict.certificate
        payload["certificate"] = {
            "x_set": list(c.x_set) if c.x_set else None,
            "attach": c.attach,
            "matched_id": c.matched_id,
            "matched_code": c.matched_code,
            "coloring": [[v, col] for v, col in c.coloring.assignment]
            if c.coloring
            else None,
        }
    if verdict.reason:
        payload["reason"] = verdict.reason
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"family: {args.family}")
        print(f"realizable: {'yes' if verdict.realizable else 'no'}")
        print(f"condition: {verdict.condition if verdict.condition else 'none'}")
        if verdict.certificate is not None:
            c = verdict.certificate
            if c.x_set:
                print("x_set: " + " ".join(c.x_set))
            if c.attach:
                print(f"attach: {c.attach}")
            if c.matched_id:
                print(f"matched: {c.matched_id} {c.matched_code}")
            if c.coloring:
                print("coloring: " + " ".join(f"{v}={col}" for v, col in c.coloring.assignment))
        if verdict.reason:
            print(f"reason: {verdict.reason}")
    return EXIT_OK if verdict.realizable else EXIT_NO


def _cmd_brauer(args) -> int:
    try:
        table = read_table_file(args.table)
    except FileNotFoundError:
        raise _Exit(EXIT_INPUT, f"table file not found: {args.table}")
    except TableError as exc:
        raise _Exit(EXIT_DATA, f"{args.table}: {exc}")
    try:
        if args.mode == "fixed-dim":
            dim = fixed_point_dimension(table, args.char, args.cls)
            _emit({"character": args.char, "class": args.cls, "fixed_dim": dim}, args.format)
        elif args.mode == "edges":
            ers = edge_removal_set(table, args.char)
            edges = sorted("-".join(gr.sorted_labels(e)) for e in ers.edges)
            _emit({"character": args.char, "removed_edges": edges}, args.format)
        else:  # achievable
            base = _plain_graph(_load_graph(args.base))
            out = achievable_graphs(table, base)
            graphs = sorted(
                ["; ".join(f"{u}-{v}" for u, v in g.edge_pairs()) or "(edgeless)" for g in out]
            )
            _emit({"count": len(out), "graphs": graphs}, args.format)
    except TableError as exc:
        raise _Exit(EXIT_DATA, str(exc))
    return EXIT_OK


def _cmd_semidirect(args) -> int:
    base = _plain_graph(_load_graph(args.base))
    try:
        f, reps = read_reps_file(args.reps)
    except FileNotFoundError:
        raise _Exit(EXIT_INPUT, f"reps file not found: {args.reps}")
    except GFError as exc:
        raise _Exit(EXIT_DATA, f"{args.reps}: {exc}")
    try:
        primes = [int(v) for v in base.vertices]
    except ValueError:
        raise _Exit(EXIT_INPUT, "base graph vertices must be prime labels")
    try:
        result = semidirect_pgc(base, primes, f.p, reps)
    except GFError as exc:
        raise _Exit(EXIT_INPUT, str(exc))
    payload = {
        "characteristic": f.p,
        "warnings": list(result.warnings),
        **_graph_payload(result.graph),
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    if args.n > gr.ENUMERATE_LIMIT:
        raise _Exit(EXIT_INPUT, f"enumeration limited to {gr.ENUMERATE_LIMIT} vertices")
    degrees = None
    if args.root_degree:
        try:
            degrees = {int(d) for d in args.root_degree.split(",")}
        except ValueError:
            raise _Exit(EXIT_INPUT, f"bad --root-degree list: {args.root_degree!r}")

    def keep(rg: gr.RootedGraph) -> bool:
        if args.triangle and gr.is_triangle_free(rg.graph):
            return False
        if degrees is not None and rg.graph.degree(rg.root) not in degrees:
            return False
        return True

    found = gr.enumerate_rooted_graphs(args.n, keep)
    if args.format == "json":
        print(json.dumps(
            {
                "count": len(found),
                "graphs": [
                    {
                        "code": gr.canonical_form(rg).hex(),
                        "edges": [f"{u}-{v}" for u, v in rg.graph.edge_pairs()],
                        "root": rg.root,
                    }
                    for rg in found
                ],
            },
            sort_keys=True,
        ))
    else:
        for rg in found:
            print(gr.canonical_form(rg).hex())
        print(f"count: {len(found)}")
    return EXIT_OK


def _cmd_catalog(args) -> int:
    try:
        if args.action == "build":
            built = cat.build_catalog(args.family)
            path = cat.save_catalog(built)
            payload = {
                "family": args.family,
                "path": str(path),
                "fully_verified": built.fully_verified,
            }
            if built.partition:
                payload["counts"] = built.partition.counts()
            _emit(payload, args.format)
            return EXIT_OK
        diffs = cat.verify_catalog(args.family)
        _emit({"family": args.family, "diffs": diffs, "ok": not diffs}, args.format)
        return EXIT_OK if not diffs else EXIT_DATA
    except cat.CatalogError as exc:
        raise _Exit(EXIT_DATA, str(exc))


def _parse_bounds(text: str) -> list:
    """Bounds list: comma-separated values, each value or VALUExCOUNT."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if "x" in part:
            value, count = part.split("x", 1)
            out.extend([Fraction(value)] * int(count))
        elif part:
            out.append(Fraction(part))
    return out


def _cmd_bound(args) -> int:
    try:
        bounds = _parse_bounds(args.abs_bounds)
    except (ValueError, ZeroDivisionError):
        raise _Exit(EXIT_INPUT, f"bad bounds list: {args.abs_bounds!r}")
    try:
        value = fixed_dim_lower_bound(args.degree, args.order, bounds)
    except TableError as exc:
        raise _Exit(EXIT_INPUT, str(exc))
    payload = {
        "degree": args.degree,
        "order": args.order,
        "lower_bound": str(value),
        "positive": value > 0,
    }
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gk",
        description="Prime graph complements of finite groups: compute, derive, classify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("plain", "json"), default="plain")

    p = sub.add_parser("pgc", help="prime graph complement of a permutation group")
    p.add_argument("--group", required=True)
    p.add_argument("--sample", type=int, default=0, metavar="N",
                   help="sample N random words instead of exhaustive enumeration")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--limit", type=int, default=pg.DEFAULT_ELEMENT_LIMIT)
    add_format(p)
    p.set_defaults(func=_cmd_pgc)

    p = sub.add_parser("classify", help="decide realizability of a graph")
    p.add_argument("--family", required=True, choices=("solvable", "sz32", "sz8", "psl232"))
    p.add_argument("--graph", required=True)
    p.add_argument("--strict", action="store_true",
                   help="refuse catalogs containing unverified entries")
    add_format(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("brauer", help="fixed points and module extensions from a table")
    p.add_argument("mode", choices=("fixed-dim", "edges", "achievable"))
    p.add_argument("--table", required=True)
    p.add_argument("--char", type=int, default=0, help="character row index")
    p.add_argument("--class", dest="cls", type=int, default=0, help="class index")
    p.add_argument("--base", help="base graph file (achievable mode)")
    add_format(p)
    p.set_defaults(func=_cmd_brauer)

    p = sub.add_parser("semidirect", help="prime graph complement of T x| V from matrices")
    p.add_argument("--base", required=True)
    p.add_argument("--reps", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_semidirect)

    p = sub.add_parser("enumerate", help="rooted graph classes up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--triangle", action="store_true", help="keep only graphs with a triangle")
    p.add_argument("--root-degree", default="", metavar="LIST",
                   help="comma-separated allowed root degrees, e.g. 1,2")
    add_format(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("catalog", help="build or verify a family catalog")
    p.add_argument("action", choices=("build", "verify"))
    p.add_argument("--family", required=True, choices=("sz32", "sz8", "psl232"))
    add_format(p)
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("bound", help="exact fixed-point dimension lower bound")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--abs-bounds", required=True,
                   help="per-power bounds, e.g. '2x30' or '0,0,1'")
    add_format(p)
    p.set_defaults(func=_cmd_bound)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    if args.command == "brauer" and args.mode == "achievable" and not args.base:
        print("achievable mode needs --base", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _Exit as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except (gr.GraphError, pg.GroupError, GFError, TableError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
