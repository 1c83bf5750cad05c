"""Command-line surface.

Commands: gen, twist, join, genus, loopcomp, petrial, verify.  '-' means
stdin wherever a file is expected.  Exit codes: 0 success or all checks
passed, 1 counterexample found, 2 usage or parse error, 3 enumeration
guard exceeded, 4 precondition violation.

All stdout is deterministic for fixed flags and seed, regardless of
--threads; verify timings go to stderr so reports stay byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify as verify_mod
from .deltamatroid import from_graph, parse_set_system
from .errors import (
    DeltaTwistError,
    ParseError,
    PreconditionError,
    TooLarge,
)
from .graphs import generate, parse_graph
from .ribbon import parse_bouquet
from .twistpoly import (
    twist_poly_graph,
    twist_poly_of_dm_via_graph,
    twist_poly_setsystem,
)


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc


def _load(path: str, parser):
    """Parse an input file, folding every failure into a parse error (exit 2)."""
    text = _read_source(path)
    try:
        return parser(text)
    except ParseError:
        raise
    except DeltaTwistError as exc:
        raise ParseError(str(exc)) from exc


def _print_poly(poly, as_json: bool) -> None:
    if as_json:
        print(json.dumps(poly.coefficient_strings()))
    else:
        print(poly)


def _cmd_gen(args) -> int:
    graph = generate(args.family, *args.params, seed=args.seed)
    sys.stdout.write(graph.serialize())
    return 0


def _cmd_twist(args) -> int:
    method = args.method
    if args.kind == "graph":
        graph = _load(args.source, parse_graph)
        if method == "auto":
            method = "rank"
        if method == "rank":
            poly = twist_poly_graph(graph, max_n=args.max_n, threads=args.threads)
        else:
            poly = twist_poly_setsystem(from_graph(graph, max_n=args.max_n),
                                        max_n=args.max_n)
    else:
        system = _load(args.source, parse_set_system)
        if method == "auto":
            method = "setsystem"
        if method == "rank":
            poly = twist_poly_of_dm_via_graph(system, threads=args.threads)
        else:
            poly = twist_poly_setsystem(system, max_n=args.max_n)
    _print_poly(poly, args.json)
    return 0


def _cmd_join(args) -> int:
    g1 = _load(args.file1, parse_graph)
    g2 = _load(args.file2, parse_graph)
    joined = g1.one_point_join(args.v1, g2, args.v2)
    sys.stdout.write(joined.serialize())
    return 0


def _cmd_loopcomp(args) -> int:
    graph = _load(args.source, parse_graph)
    sys.stdout.write(graph.loop_complement(args.vertex).serialize())
    return 0


def _cmd_petrial(args) -> int:
    bouquet = _load(args.source, parse_bouquet)
    sys.stdout.write(bouquet.partial_petrial(args.edges).serialize())
    return 0


def _cmd_genus(args) -> int:
    bouquet = _load(args.source, parse_bouquet)
    poly = bouquet.partial_dual_genus_poly(max_n=args.max_n)
    ig = bouquet.intersection_graph()
    bc = bouquet.boundary_components(bouquet.edge_labels)
    if args.json:
        print(json.dumps({
            "edges": bouquet.num_edges,
            "euler_genus": bouquet.euler_genus(),
            "boundary_components": bc,
            "genus_polynomial": poly.coefficient_strings(),
            "genus_polynomial_text": str(poly),
            "intersection_graph": ig.serialize(),
        }))
    else:
        print(f"edges: {bouquet.num_edges}")
        print(f"euler_genus: {bouquet.euler_genus()}")
        print(f"boundary_components: {bc}")
        print(f"genus_polynomial: {poly}")
        print("intersection_graph:")
        sys.stdout.write(ig.serialize())
    return 0


def _cmd_verify(args) -> int:
    names = verify_mod.identity_names()
    if args.identity != "all":
        if args.identity not in names:
            print(f"unknown identity {args.identity!r}; know: {', '.join(names)}",
                  file=sys.stderr)
            return 2
        names = [args.identity]
    reports = [verify_mod.run_identity(name, args.trials, args.max_n,
                                       args.seed, args.threads)
               for name in names]
    if args.json:
        print(json.dumps([{
            "identity": r.identity,
            "attempted": r.attempted,
            "passed": r.passed,
            "ok": r.ok,
            "counterexample": r.counterexample,
        } for r in reports]))
    else:
        for r in reports:
            status = "passed" if r.ok else "FAILED"
            print(f"{r.identity}: {r.passed}/{r.attempted} {status}")
            if r.counterexample:
                print("counterexample:")
                print(r.counterexample, end="" if r.counterexample.endswith("\n") else "\n")
    for r in reports:
        print(f"# {r.identity}: {r.seconds:.2f}s", file=sys.stderr)
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="root seed for all randomness")
    common.add_argument("--threads", type=int, default=1,
                        help="worker count; never changes output")
    common.add_argument("--max-n", type=int, default=None, dest="max_n",
                        help="enumeration guard / instance size bound")

    parser = argparse.ArgumentParser(
        prog="deltatwist",
        description="Twist polynomials of delta-matroids, looped graphs, and bouquets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit a named graph family")
    p.add_argument("family", choices=["complete", "windmill", "path", "star", "random"])
    p.add_argument("params", nargs="*")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("twist", parents=[common], help="twist polynomial of a graph or set system")
    p.add_argument("kind", choices=["graph", "dm"])
    p.add_argument("source", help="input file, or - for stdin")
    p.add_argument("--method", choices=["rank", "setsystem", "auto"], default="auto")
    p.set_defaults(func=_cmd_twist)

    p = sub.add_parser("join", parents=[common], help="one-point join of two graphs")
    p.add_argument("file1")
    p.add_argument("v1")
    p.add_argument("file2")
    p.add_argument("v2")
    p.set_defaults(func=_cmd_join)

    p = sub.add_parser("genus", parents=[common], help="bouquet genus report")
    p.add_argument("source")
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("loopcomp", parents=[common], help="toggle a loop at a vertex")
    p.add_argument("source")
    p.add_argument("vertex")
    p.set_defaults(func=_cmd_loopcomp)

    p = sub.add_parser("petrial", parents=[common], help="partial Petrial of a bouquet")
    p.add_argument("source")
    p.add_argument("edges", nargs="*")
    p.set_defaults(func=_cmd_petrial)

    p = sub.add_parser("verify", parents=[common], help="run identity checks")
    p.add_argument("identity",
                   help="identity name or 'all'; see README for the registry")
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DeltaTwistError as exc:
        # Remaining domain errors (e.g. a division certifying an identity
        # failed) mean the input falsified something: counterexample-style.
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
