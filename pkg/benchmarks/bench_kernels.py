#!/usr/bin/env python3
"""Benchmark the compiled signal kernels against the numpy fallback.

Run after an editable install (the compiled extension must be built):

    python benchmarks/bench_kernels.py [--sizes 1000,10000,100000] [--repeat 200]
"""

import argparse
import time

import numpy as np

from socketlab.signals import _kernels_py

try:
    from socketlab.signals import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(kernels, n, repeat, rng):
    v = rng.normal(size=n)
    t = np.arange(n, dtype=float)
    tq = np.linspace(0, n - 1, 101)
    a, b = rng.normal(size=n), rng.normal(size=n)
    window = max(3, (n // 20) | 1)
    return {
        "moving_mean": best_of(lambda: kernels.moving_mean_core(v, window), repeat),
        "interp": best_of(lambda: kernels.interp_core(t, v, tq), repeat),
        "pearson": best_of(lambda: kernels.pearson_core(a, b), repeat),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1000,10000,100000")
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    rng = np.random.default_rng(0)
    print(f"{'kernel':<14} {'n':>8} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for n in sizes:
        py = bench_backend(_kernels_py, n, args.repeat, rng)
        cy = bench_backend(_ckernels, n, args.repeat, rng) if _ckernels else None
        for name in py:
            py_us = py[name] * 1e6
            if cy is None:
                print(f"{name:<14} {n:>8} {py_us:>10.1f}us {'missing':>12} {'-':>9}")
            else:
                cy_us = cy[name] * 1e6
                print(f"{name:<14} {n:>8} {py_us:>10.1f}us {cy_us:>10.1f}us {py[name] / cy[name]:>8.2f}x")
    if _ckernels is None:
        print("\ncompiled extension not built; run `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
