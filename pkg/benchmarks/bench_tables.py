#!/usr/bin/env python3
"""Benchmark harness: compiled kernel core vs numpy fallback.

Times the budget-defining sweeps on both backends, checks the results
are bit-identical, and (with --assert-thresholds) enforces the
regression thresholds:

    full EBCT spectrum, gold n=6 s=2      < 120 s
    full UBCT + LBCT tables, inverse n=8  < 300 s

Both backends are expected to come in far under the thresholds; the
numbers are recorded so a regression is visible in CI output.

Usage: python benchmarks/bench_tables.py [--assert-thresholds] [--repeat N]
"""

import argparse
import sys
import time

import numpy as np

from boomtab.field import make_field
from boomtab.kernels import get_backend
from boomtab.vecfun import gold_function, inverse_function

THRESHOLDS = {"ebct_spectrum_n6": 120.0, "ubct_lbct_full_n8": 300.0}


def time_case(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def bench_backend(kern, repeat):
    f6 = gold_function(make_field(6), 2)
    f8 = inverse_function(make_field(8))
    out = {}

    def ebct_case():
        table = kern.ebct_full(f6.lut, 0, 64)
        return np.bincount(table.ravel(), minlength=65)

    def ubct_lbct_case():
        return kern.ubct_full(f8.lut, 0, 256), kern.lbct_full(f8.lut)

    out["ebct_spectrum_n6"] = time_case(ebct_case, repeat)
    out["ubct_lbct_full_n8"] = time_case(ubct_lbct_case, repeat)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--assert-thresholds", action="store_true")
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args(argv)

    backends = {}
    for name in ("compiled", "fallback"):
        try:
            backends[name] = get_backend(name)
        except ImportError:
            print(f"{name:9s}  (not built; skipped)")

    results = {name: bench_backend(kern, args.repeat)
               for name, kern in backends.items()}

    print(f"{'case':22s}" + "".join(f"{name:>12s}" for name in results))
    worst = {}
    for case in THRESHOLDS:
        row = f"{case:22s}"
        for name in results:
            dt = results[name][case][0]
            worst[case] = max(worst.get(case, 0.0), dt)
            row += f"{dt:11.3f}s"
        row += f"   (threshold {THRESHOLDS[case]:.0f}s)"
        print(row)

    if len(results) == 2:
        for case in THRESHOLDS:
            a = results["compiled"][case][1]
            b = results["fallback"][case][1]
            if isinstance(a, tuple):
                same = all(np.array_equal(x, y) for x, y in zip(a, b))
            else:
                same = np.array_equal(a, b)
            if not same:
                print(f"MISMATCH between backends on {case}")
                return 1
        print("backend results bit-identical")

    if args.assert_thresholds:
        for case, limit in THRESHOLDS.items():
            if worst[case] >= limit:
                print(f"THRESHOLD EXCEEDED: {case} {worst[case]:.1f}s >= {limit}s")
                return 1
        print("all thresholds met")
    return 0


if __name__ == "__main__":
    sys.exit(main())
