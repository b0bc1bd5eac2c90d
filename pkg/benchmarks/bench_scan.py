"""Compare the compiled and pure-Python integer Catalan scans.

Usage: python benchmarks/bench_scan.py [--xy-max N] [--exp-max E] [--repeat R]
"""

import argparse
import time

from catalanbounds import _kernels


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--xy-max", type=int, default=100_000)
    ap.add_argument("--exp-max", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    results = {}
    for name in _kernels.available_backends():
        scan = _kernels.get_scan(name)
        t, hits = best_time(lambda: scan(args.xy_max, args.exp_max, 1) + scan(args.xy_max, args.exp_max, -1), args.repeat)
        results[name] = (t, sorted(hits))
        print(f"{name:>7}: {t:8.4f} s  ({len(hits)} raw hits)")
    if len(results) == 2:
        assert results["cython"][1] == results["python"][1], "backends disagree"
        print(f"speedup: {results['python'][0] / results['cython'][0]:.1f}x")


if __name__ == "__main__":
    main()
