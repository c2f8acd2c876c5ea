#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-python trig kernels.

The workload mirrors trace generation: K weighted cosine/sine terms summed
over T grid points.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from ghastates import _backend, _kernels_py

WORKLOADS = [
    (30, 2001),     # small label, default grid
    (200, 2001),    # r close to 0.9
    (200, 20001),   # dense grid
]


def time_call(fn, w, f, t, repeats=7):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(w, f, 0.3, t)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    rng = np.random.default_rng(42)
    impls = [("python", _kernels_py.weighted_trig_sums)]
    if _backend.BACKEND == "compiled":
        impls.append(("compiled", _backend.weighted_trig_sums))
    else:
        print("compiled kernel not built; timing the fallback only")

    print(f"{'terms':>7} {'points':>8}" +
          "".join(f" {name:>12}" for name, _ in impls) + "   speedup")
    for nk, nt in WORKLOADS:
        w = rng.normal(size=nk)
        f = rng.normal(size=nk)
        t = np.linspace(0.0, 100.0, nt)
        times = [time_call(fn, w, f, t) for _, fn in impls]
        ratio = times[0] / times[-1] if len(times) == 2 else float("nan")
        cells = "".join(f" {1e3 * dt:>10.3f}ms" for dt in times)
        print(f"{nk:>7} {nt:>8}{cells}   {ratio:>6.2f}x")


if __name__ == "__main__":
    main()
