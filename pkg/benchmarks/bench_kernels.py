#!/usr/bin/env python3
"""Compiled kernels vs the pure-Python fallback, per kernel and end to end.

    python3 benchmarks/bench_kernels.py --n 40 --repeat 3
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from simuorb import kernels
from simuorb.enumeration import EXTERIOR_CASES, INTERIOR_CASES, TripletTable
from simuorb.orbits import DEFAULT_TOLERANCES, _group_bounds


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_times(mod, n, repeat):
    cases = [int(c) for c in EXTERIOR_CASES + INTERIOR_CASES]
    p, q, r, _ = mod.generate_many(n, cases)
    table = TripletTable.build(n, INTERIOR_CASES)
    starts, ends = _group_bounds(table.radius_key, DEFAULT_TOLERANCES)
    size = len(table)
    x, y = mod.anchor_points(n, table.p, table.q, table.r)
    root = np.arange(size, dtype=np.int64)
    rng = np.random.default_rng(0)
    src = rng.integers(0, size, size)
    dst = rng.integers(0, size, size)
    shift = rng.integers(0, n, size)
    sqrt_j = np.asarray(table.radius_key, dtype=np.float64)
    return {
        "generate_many": best_of(lambda: mod.generate_many(n, cases), repeat),
        "radius_key": best_of(lambda: mod.radius_key(n, p, q, r), repeat),
        "has_duplicates": best_of(lambda: mod.has_duplicates(n, p, q, r), repeat),
        "anchor_points": best_of(lambda: mod.anchor_points(n, table.p, table.q, table.r), repeat),
        "union_links": best_of(lambda: mod.union_links(size, n, src, dst, shift), repeat),
        "match_roots": best_of(
            lambda: mod.match_roots(
                n, starts, ends, root, x, y, sqrt_j, DEFAULT_TOLERANCES.shift, DEFAULT_TOLERANCES.radius
            ),
            repeat,
        ),
    }


def end_to_end(backend, n):
    """Run a full summary in a fresh interpreter so backend selection happens at import."""
    env = dict(os.environ)
    if backend == "python":
        env["SIMUORB_PURE_PYTHON"] = "1"
    else:
        env.pop("SIMUORB_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, "-m", "simuorb.cli", "bench", "--n", str(n), "--threads", "1", "--format", "json"],
        env=env,
        check=True,
        capture_output=True,
        text=True,
    )
    return json.loads(out.stdout)[0]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    backends = ["python"]
    try:
        kernels.backend_module("cython")
        backends.append("cython")
    except ImportError:
        print("compiled kernels not built; timing the fallback only", file=sys.stderr)

    report = {"n": args.n, "kernels": {}, "end_to_end": {}}
    for name in backends:
        report["kernels"][name] = kernel_times(kernels.backend_module(name), args.n, args.repeat)
        report["end_to_end"][name] = end_to_end(name, args.n)

    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return 0
    print(f"n={args.n}, best of {args.repeat}")
    print(f"{'kernel':<16}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for k in report["kernels"]["python"]:
        row = [report["kernels"][b][k] for b in backends]
        line = f"{k:<16}" + "".join(f"{t:>12.5f}" for t in row)
        if len(row) == 2:
            line += f"{row[0] / row[1]:>11.1f}x"
        print(line)
    row = [report["end_to_end"][b]["time_total"] for b in backends]
    line = f"{'summary':<16}" + "".join(f"{t:>12.5f}" for t in row)
    if len(row) == 2:
        line += f"{row[0] / row[1]:>11.1f}x"
    print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
