#!/usr/bin/env python3
"""Benchmark the compiled sampling kernel against the pure-Python fallback.

Both backends draw identical samples (counter-based RNG), so besides the
timing comparison the script asserts that partial sums agree bit for bit.

Usage: python benchmarks/bench_weights.py [--samples N]
"""

import argparse
import math
import time

from cycform.graphs import ShoikhetGraph
from cycform.weights import _fallback

try:
    from cycform.weights import _kernel
except ImportError:
    _kernel = None

GRAPHS = [
    ("pure-central m=3", "0,3;0>1b,0>2b,0>3b"),
    ("one aerial, dim 3", "1,1;0>1,0>1b|1>1b"),
    ("one aerial, dim 4", "1,2;0>1,0>2b|1>1b,1>2b"),
    ("two aerial, dim 5", "2,1;0>1,0>2|1>2,1>0b|2>1b"),
]


def run(kernel, graph, samples, seed=42):
    src = [e[0] for e in graph.edges()]
    tgt = [e[1] for e in graph.edges()]
    c = 1.0 / (2.0 * math.pi)
    state = _fallback.seed_state(seed)
    t0 = time.perf_counter()
    sums = kernel.block_sums(graph.n, graph.m, 0, src, tgt, c, c, state, 0, samples)
    return time.perf_counter() - t0, sums


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=200_000)
    args = parser.parse_args()

    print(f"{'graph':24} {'python':>12} {'compiled':>12} {'speedup':>9}   identical")
    for name, enc in GRAPHS:
        graph = ShoikhetGraph.decode(enc)
        t_py, sums_py = run(_fallback, graph, args.samples)
        if _kernel is None:
            print(f"{name:24} {args.samples / t_py:>10.0f}/s {'n/a':>12} {'':>9}")
            continue
        t_cy, sums_cy = run(_kernel, graph, args.samples)
        same = sums_py == sums_cy
        print(
            f"{name:24} {args.samples / t_py:>10.0f}/s {args.samples / t_cy:>10.0f}/s "
            f"{t_py / t_cy:>8.1f}x   {same}"
        )
        if not same:
            raise SystemExit(f"backend mismatch on {enc}: {sums_py} vs {sums_cy}")
    if _kernel is None:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
