"""Command-line front end.

Subcommands: enumerate, weight, table, check.  Exit codes partition the
failure classes: 0 all passed, 1 a check failed, 2 bad graph encoding,
3 unsatisfiable degree constraints, 4 cache I/O failure, 5 usage errors.

The JSON report (--json) contains only deterministic content; wall time is
printed to stderr so repeated runs with one seed are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .checks import SUITES, SuiteReport
from .graphs import GraphError, ShoikhetGraph, enumerate_graphs
from .weights import BACKEND
from .weights.cache import CacheError, WeightCache, weight_cache_get_or_compute
from .weights.integrate import IntegrationSpec, compute_weight

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_GRAPH = 2
EXIT_BAD_DEGREES = 3
EXIT_CACHE = 4
EXIT_USAGE = 5

CACHE_ENV = "CYCFORM_CACHE"


def _add_spec_flags(parser: argparse.ArgumentParser) -> None:
    # None means "suite default": the battery's own sample counts for
    # theorem34, one million elsewhere
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--method", choices=("mc", "quadrature"), default="mc")
    parser.add_argument("--mesh", type=int, default=32, help="quadrature points per axis")
    parser.add_argument("--slice", dest="slice_index", type=int, default=0,
                        help="boundary vertex pinned at angle 0")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel sample blocks; never changes the result")
    parser.add_argument("--cache", default=os.environ.get(CACHE_ENV),
                        help=f"weight cache path (default: ${CACHE_ENV})")


def _spec_from(args) -> IntegrationSpec:
    return IntegrationSpec(
        method=args.method,
        samples=args.samples if args.samples is not None else 1_000_000,
        seed=args.seed,
        slice_index=args.slice_index,
        mesh=args.mesh,
        jobs=args.jobs,
    )


def _open_cache(args) -> WeightCache | None:
    return WeightCache(args.cache) if getattr(args, "cache", None) else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycform",
        description="Graph weights on the disk and certified operator identities.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", parents=[common],
                            help="list graphs with given out-degrees")
    p_enum.add_argument("--n", type=int, required=True, help="aerial vertex count")
    p_enum.add_argument("--m", type=int, required=True, help="boundary count minus one")
    p_enum.add_argument("--central-degree", type=int, required=True)
    p_enum.add_argument("--aerial-degrees", default="",
                        help="comma-separated out-degrees of vertices 1..n")

    p_weight = sub.add_parser("weight", parents=[common],
                              help="estimate one graph weight")
    p_weight.add_argument("--graph", required=True, help="canonical graph encoding")
    _add_spec_flags(p_weight)

    p_table = sub.add_parser("table", parents=[common],
                             help="weight table over an enumeration")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--m", type=int, required=True)
    p_table.add_argument("--central-degree", type=int, required=True)
    p_table.add_argument("--aerial-degrees", default="")
    _add_spec_flags(p_table)

    p_check = sub.add_parser("check", parents=[common],
                             help="run a verification suite")
    p_check.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p_check.add_argument("--dim", type=int, default=3, help="max dimension (exact suites)")
    p_check.add_argument("--trials", type=int, default=200, help="trials per exact identity")
    p_check.add_argument("--battery", default="default",
                         help="battery name or manifest path (theorem34)")
    p_check.add_argument("--nsigma", type=float, default=4.0)
    p_check.add_argument("--floor", type=float, default=5e-3,
                         help="absolute tolerance floor for statistical checks")
    p_check.add_argument("--tier", choices=("exact", "numeric", "both"), default="both")
    _add_spec_flags(p_check)
    return parser


def _parse_degrees(text: str, n: int) -> tuple[int, ...]:
    if not text.strip():
        degrees: tuple[int, ...] = ()
    else:
        degrees = tuple(int(x) for x in text.split(","))
    if len(degrees) != n:
        raise GraphError(f"expected {n} aerial degrees, got {len(degrees)}")
    if any(d < 0 for d in degrees):
        raise GraphError("degrees must be nonnegative")
    return degrees


def cmd_enumerate(args) -> int:
    degrees = _parse_degrees(args.aerial_degrees, args.n)
    graphs = list(enumerate_graphs(args.n, args.m, args.central_degree, degrees))
    if args.json:
        print(json.dumps({"count": len(graphs), "graphs": [g.encode() for g in graphs]},
                         sort_keys=True))
    else:
        for g in graphs:
            print(g.encode())
        print(f"# {len(graphs)} graphs", file=sys.stderr)
    return EXIT_OK


def cmd_weight(args) -> int:
    graph = ShoikhetGraph.decode(args.graph)
    spec = _spec_from(args)
    cache = _open_cache(args)
    est = (
        weight_cache_get_or_compute(graph, spec, cache)
        if cache is not None
        else compute_weight(graph, spec)
    )
    if args.json:
        print(json.dumps({
            "graph": est.graph, "method": est.method, "samples": est.samples,
            "seed": est.seed, "value": est.value, "stderr": est.stderr,
        }, sort_keys=True))
    else:
        print(f"{est.graph}  {est.value!r} +- {est.stderr!r}  "
              f"(method {est.method}, samples {est.samples}, seed {est.seed})")
    return EXIT_OK


def cmd_table(args) -> int:
    degrees = _parse_degrees(args.aerial_degrees, args.n)
    spec = _spec_from(args)
    cache = _open_cache(args)
    rows = []
    for graph in enumerate_graphs(args.n, args.m, args.central_degree, degrees):
        est = (
            weight_cache_get_or_compute(graph, spec, cache)
            if cache is not None
            else compute_weight(graph, spec)
        )
        rows.append(est)
    if args.json:
        print(json.dumps({"rows": [
            {"graph": e.graph, "value": e.value, "stderr": e.stderr} for e in rows
        ]}, sort_keys=True))
    else:
        for e in rows:
            print(f"{e.graph}\t{e.value!r}\t{e.stderr!r}")
    return EXIT_OK


def _run_suite(name: str, args, cache) -> SuiteReport:
    samples = args.samples if args.samples is not None else 1_000_000
    if name == "algebra":
        return SUITES[name](dim_max=args.dim, trials=args.trials, seed=args.seed)
    if name == "mixed":
        return SUITES[name](dim_max=args.dim, trials=args.trials, seed=args.seed)
    if name == "weights":
        return SUITES[name](samples=samples, seed=args.seed, cache=cache,
                            jobs=args.jobs, nsigma=args.nsigma, floor=args.floor)
    if name == "lemma33":
        return SUITES[name](samples=samples, seed=args.seed, cache=cache,
                            jobs=args.jobs, nsigma=args.nsigma, floor=args.floor)
    if name == "theorem34":
        tiers = ("exact", "numeric") if args.tier == "both" else (args.tier,)
        return SUITES[name](battery=args.battery, samples=args.samples, seed=None,
                            cache=cache, jobs=args.jobs, nsigma=args.nsigma,
                            floor=args.floor, tiers=tiers)
    raise ValueError(name)


def cmd_check(args) -> int:
    cache = _open_cache(args)
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    t0 = time.monotonic()
    reports = [_run_suite(name, args, cache) for name in names]
    elapsed = time.monotonic() - t0
    all_pass = all(r.passed for r in reports)
    if args.json:
        # deterministic payload only: cache statistics and timing vary
        # between reruns against a persistent cache, so they go to stderr
        payload = {
            "command": "check",
            "suites": [r.payload() for r in reports],
            "seed": args.seed,
            "samples": args.samples,
            "backend": BACKEND,
            "passed": all_pass,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for r in reports:
            for c in r.checks:
                print(c.line())
        print(f"suite result: {'PASS' if all_pass else 'FAIL'}")
    if cache is not None:
        print(f"# cache {cache.stats()}", file=sys.stderr)
    print(f"# wall time {elapsed:.1f}s (backend {BACKEND})", file=sys.stderr)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args)
        if args.command == "weight":
            return cmd_weight(args)
        if args.command == "table":
            return cmd_table(args)
        if args.command == "check":
            return cmd_check(args)
    except GraphError as exc:
        msg = str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_BAD_DEGREES if "degree" in msg else EXIT_BAD_GRAPH
    except CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
