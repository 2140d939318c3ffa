#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy reference.

Usage:  python benchmarks/compare_backends.py [--repeats N]

Workloads mirror the hot paths of the package: the oscillatory spectral
quadrature on a dense time grid (trajectory construction and parameter
sweeps), the telegraph memory kernel on a large array, and the
positive-gain scan over a full state-grid eigenvalue matrix.
"""

import argparse
import time

import numpy as np

from qbackflow.kernels import KIND_EXPONENT, KIND_RATE, available_backends


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def workloads():
    times_grid = np.linspace(0.0, 10.0, 4000)
    times_long = np.linspace(0.0, 50.0, 1000)
    nu = np.linspace(0.0, 15.0, 2_000_000)
    rng = np.random.default_rng(7)
    lam = 0.75 + 0.2 * np.sin(np.cumsum(rng.uniform(0.0, 0.05, size=(1252, 4000)), axis=1))

    def quad_exponent(impl):
        impl.phase_damping_quad(KIND_EXPONENT, 3.0, 1.0, times_grid, 40.0, 1e-8, 1e-12)

    def quad_rate_long(impl):
        impl.phase_damping_quad(KIND_RATE, 0.5, 1.0, times_long, 40.0, 1e-8, 1e-12)

    def telegraph(impl):
        impl.telegraph_memory(2.0, 1.0, nu)
        impl.telegraph_memory_rate(2.0, 1.0, nu)

    def gains(impl):
        impl.positive_gain_total(lam)

    return [
        ("Gamma(t), s=3, 4000-point grid", quad_exponent),
        ("gamma(t), s=0.5, t up to 50, 1000 points", quad_rate_long),
        ("telegraph kernel + rate, 2e6 points", telegraph),
        ("positive-gain scan, 1252 x 4000 matrix", gains),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled extension not available; only timing the reference backend")
    names = list(backends)
    header = f"{'workload':44s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))
    for label, fn in workloads():
        timings = {}
        for name in names:
            impl = backends[name]
            timings[name] = best_of(lambda: fn(impl), args.repeats)
        row = f"{label:44s}" + "".join(f"{timings[n] * 1e3:10.1f}ms" for n in names)
        if "compiled" in timings:
            row += f"{timings['reference'] / timings['compiled']:9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
