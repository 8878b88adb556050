#!/usr/bin/env python3
"""Benchmark the compiled simplex kernel against the pure-numpy fallback.

Workloads mirror the hot paths: discrimination LPs over vertex subsets and
the restricted ray LPs that drive storability sweeps.

Usage: python benchmarks/bench_lp.py [--quick]
"""

import argparse
import itertools
import time

from gptgame import lp
from gptgame.discrimination import encoding_power
from gptgame.model import StateEnsemble
from gptgame.rays import cached_rays
from gptgame.spaces import direct_sum, polygon, tensor_with_classical
from gptgame.storability import characteristic_numbers, storability_limited
from gptgame.storability import _LIMITED_CACHE, _PROFILE_CACHE


def workload_discrimination(space, subset_size):
    total = 0.0
    for idx in itertools.combinations(range(space.num_vertices), subset_size):
        ens = StateEnsemble.from_vertices(space, idx)
        total += encoding_power(space, ens).value
    return total


def workload_profile(space):
    _LIMITED_CACHE.clear()
    _PROFILE_CACHE.clear()
    profile = characteristic_numbers(space)
    return profile.is_value


def workload_limited(space, n):
    _LIMITED_CACHE.clear()
    return storability_limited(space, n).value


def run(name, fn, repeats):
    best = float("inf")
    value = None
    for _ in range(repeats):
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return best, value


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    heavy = direct_sum(polygon(5), polygon(7))
    bit = tensor_with_classical(polygon(5), 2)
    cached_rays(heavy)
    cached_rays(bit)

    if args.quick:
        workloads = [
            ("discrimination LPs, 9-gon, 4-subsets", lambda: workload_discrimination(polygon(9), 4), 2),
            ("limited storability, 12-vertex sum, n=4", lambda: workload_limited(heavy, 4), 1),
        ]
    else:
        workloads = [
            ("discrimination LPs, 9-gon, 4-subsets", lambda: workload_discrimination(polygon(9), 4), 3),
            ("discrimination LPs, 12-vertex sum, 5-subsets", lambda: workload_discrimination(heavy, 5), 1),
            ("full profile, pentagon x bit", lambda: workload_profile(bit), 1),
            ("full profile, pentagon + heptagon", lambda: workload_profile(heavy), 1),
        ]

    backends = ["python"]
    try:
        lp.set_backend("cython")
        backends.insert(0, "cython")
    except ImportError:
        print("compiled kernel unavailable; timing the fallback only")

    print(f"{'workload':46s} " + " ".join(f"{b:>12s}" for b in backends) + "  speedup")
    results = {}
    for label, fn, repeats in workloads:
        times = {}
        checks = {}
        for backend in backends:
            lp.set_backend(backend)
            times[backend], checks[backend] = run(label, fn, repeats)
        if len(backends) == 2 and abs(checks["cython"] - checks["python"]) > 1e-9:
            raise SystemExit(f"backend results diverge on {label}: {checks}")
        row = " ".join(f"{times[b] * 1e3:10.1f}ms" for b in backends)
        speed = (f"{times['python'] / times['cython']:7.1f}x"
                 if len(backends) == 2 else "      -")
        print(f"{label:46s} {row}  {speed}")
        results[label] = times
    lp.set_backend(backends[0])
    return results


if __name__ == "__main__":
    main()
