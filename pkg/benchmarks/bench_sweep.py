"""Compare the compiled quadruple-sweep kernel against the numpy fallback.

Usage: python benchmarks/bench_sweep.py [max_n]
"""

import sys
import time

import curvkit as ck
from curvkit._kernels import available_backends, get_sweep


def best_of(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 40
    sizes = [n for n in (10, 15, 20, 25, 30, 40, 60, 80) if n <= max_n]
    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    header = f"{'n':>4} {'quadruples':>12}"
    for b in backends:
        header += f" {b + ' [s]':>14}"
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    for n in sizes:
        sp = ck.sphere_sample(n, 2, 1.0, seed=n).space
        times = {}
        counts = None
        for b in backends:
            sweep = get_sweep(b)
            t, res = best_of(lambda: sweep(sp.d, 1.0, 0, n))
            times[b] = t
            counts = res[2] + res[3]
        row = f"{n:>4} {counts:>12}"
        for b in backends:
            row += f" {times[b]:>14.6f}"
        if len(backends) == 2:
            row += f" {times['python'] / times['compiled']:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
