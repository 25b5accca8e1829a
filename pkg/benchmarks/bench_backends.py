#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-Python fallback.

Both implementation modules are imported directly, so the comparison runs in
one process regardless of BLOCKMATCH_BACKEND.  Workloads mirror the hot
paths: perfect-matching search, covering-matching search (the blocking-set
decider), subset-DP maximum matching, and the graph cover oracle.

Usage:
    python benchmarks/bench_backends.py [--families N] [--graphs N]
"""

from __future__ import annotations

import argparse
import random
import time
from itertools import combinations

from blockmatch import _kernels_py
from blockmatch import build_E
from blockmatch.family import SetFamily

try:
    from blockmatch import _kernels_numba
except ImportError:
    _kernels_numba = None


def encode(family: SetFamily):
    starts, items = family.incidence
    return family.masks, starts, items


def random_families(count: int, seed: int) -> list[SetFamily]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.choice([2, 3])
        n = rng.choice([6, 8]) if k == 2 else rng.choice([6, 9])
        pool = list(combinations(range(1, n + 1), k))
        out.append(SetFamily.from_iterable(n, k, rng.sample(pool, rng.randint(4, len(pool)))))
    return out


def random_graphs(count: int, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(8, 14)
        edges = [e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.2]
        if not edges:
            edges = [(1, 2)]
        fam = SetFamily.from_iterable(n, 2, edges)
        target = 0
        for v in rng.sample(range(1, n + 1), n // 2):
            target |= 1 << (v - 1)
        out.append((fam, target))
    return out


def bench_perfect_matching(impl, families):
    total = 0
    for fam in families:
        if fam.n % fam.k:
            continue
        masks, starts, items = encode(fam)
        res = impl.perfect_matching(masks, starts, items, fam.n)
        total += len(res)
    return total


def bench_cover(impl, family, bs):
    total = 0
    masks, starts, items = encode(family)
    for b in bs:
        target = 0
        for v in b:
            target |= 1 << (v - 1)
        res = impl.cover_matching(masks, starts, items, family.k, target, len(b))
        total += len(res)
    return total


def bench_max_matching(impl, families):
    total = 0
    for fam in families:
        masks, starts, items = encode(fam)
        total += impl.max_matching_size(masks, starts, items, fam.n)
    return total


def bench_graph_cover(impl, graphs):
    total = 0
    for fam, target in graphs:
        masks, starts, items = encode(fam)
        total += bool(impl.graph_cover_exists(masks, starts, items, fam.n, target))
    return total


def run(name, fn, *args):
    results = {}
    for label, impl in [("python", _kernels_py)] + (
        [("numba", _kernels_numba)] if _kernels_numba else []
    ):
        start = time.perf_counter()
        checksum = fn(impl, *args)
        elapsed = time.perf_counter() - start
        results[label] = (elapsed, checksum)
    py_time, py_sum = results["python"]
    line = f"{name:<28} python {py_time * 1e3:9.1f} ms"
    if "numba" in results:
        nb_time, nb_sum = results["numba"]
        assert nb_sum == py_sum, f"{name}: backends disagree ({py_sum} vs {nb_sum})"
        line += f"   numba {nb_time * 1e3:9.1f} ms   speedup {py_time / nb_time:6.1f}x"
    print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--families", type=int, default=400)
    parser.add_argument("--graphs", type=int, default=400)
    args = parser.parse_args()

    if _kernels_numba is not None:
        # compile outside the timed region (results are disk-cached)
        from blockmatch.backend import warmup

        warmup()
    else:
        print("numba unavailable; timing the python kernels only")

    families = random_families(args.families, seed=1)
    big = build_E(4, 16, 3)
    blocking_queries = [
        b for size in (1, 2) for b in combinations(range(1, 17), size)
    ]
    graphs = random_graphs(args.graphs, seed=2)

    print(f"{'workload':<28} {'':>7}")
    run("perfect_matching", bench_perfect_matching, families)
    run("cover_matching E(4,16,3)", bench_cover, big, blocking_queries)
    run("max_matching_size", bench_max_matching, families)
    run("graph_cover_exists", bench_graph_cover, graphs)


if __name__ == "__main__":
    main()
