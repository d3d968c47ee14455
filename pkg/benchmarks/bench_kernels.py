#!/usr/bin/env python3
"""Benchmark the modular rank kernel: numba @njit vs vectorised numpy.

Two measurements per backend:
  1. raw batched rank of random integer matrices (the kernel alone)
  2. end-to-end find_simple_nvg over seeded random arrangements, with the
     exact Python elimination as the reference for (1)

Usage:
    python benchmarks/bench_kernels.py [--batch B] [--rows R] [--cols C] [--seeds S]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from discrimlab import _kernels
from discrimlab.catalog import random_arrangement
from discrimlab.discriminantal import discriminantal
from discrimlab.exact_linalg import int_rank
from discrimlab.nvg import find_simple_nvg


def best_of(fn, repeat=5):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def bench_kernel(batch, rows, cols, seed=0):
    rng = np.random.default_rng(seed)
    mats = rng.integers(-10**6, 10**6, size=(batch, rows, cols))
    # force some rank deficiency: last row = sum of first two
    mats[::3, -1] = mats[::3, 0] + mats[::3, 1]
    stack = np.remainder(mats, _kernels.PRIME)
    results = {}
    for backend in ("numba", "numpy"):
        if backend == "numba" and not _kernels.HAS_NUMBA:
            continue
        _kernels.set_backend(backend)
        _kernels.rank_mod_p_batch(stack[:2])  # JIT warm-up
        t, ranks = best_of(lambda: _kernels.rank_mod_p_batch(stack))
        results[backend] = (t, ranks)
    as_lists = [m.tolist() for m in mats]
    t, exact = best_of(lambda: [int_rank(m, cols) for m in as_lists], repeat=1)
    results["exact python"] = (t, np.array(exact))
    ref = results["exact python"][1]
    print(f"kernel: {batch} matrices of {rows}x{cols}")
    for name, (t, ranks) in results.items():
        agree = bool(np.array_equal(ranks, ref))
        print(f"  {name:13s} {t * 1e3:9.2f} ms   agrees with exact: {agree}")


def bench_search(seeds, r_max):
    arrangements = [random_arrangement(6, 2, s) for s in range(1, seeds + 1)]
    print(f"find_simple_nvg: {seeds} random arrangements n=6 k=2, r_max={r_max}")
    for backend in ("numba", "numpy"):
        if backend == "numba" and not _kernels.HAS_NUMBA:
            continue
        _kernels.set_backend(backend)
        discriminantal.cache_clear()
        start = time.perf_counter()
        hits = sum(len(find_simple_nvg(a, r_max)) for a in arrangements)
        elapsed = time.perf_counter() - start
        print(f"  {backend:13s} {elapsed:9.3f} s    findings: {hits}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--rows", type=int, default=4)
    ap.add_argument("--cols", type=int, default=6)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--max-r", type=int, default=4)
    args = ap.parse_args()
    bench_kernel(args.batch, args.rows, args.cols)
    bench_search(args.seeds, args.max_r)


if __name__ == "__main__":
    main()
