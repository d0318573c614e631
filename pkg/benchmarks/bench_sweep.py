#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Times three hot paths on built verifier algorithms and checks that both
backends agree while they are at it:

  * the exhaustive exactness sweep (dense pipeline over all 2**n words)
  * the structure-aware single-word runner
  * the sensitivity sweep over a full truth table

Usage:
    python benchmarks/bench_sweep.py [--sizes 12 14 16] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qverify import BooleanFunction, build_algorithm
from qverify import _kernels
from qverify.model import EXACT_TOL, _sweep_arrays


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_exact_sweep(n: int, repeat: int, backends: list[str]) -> dict[str, float]:
    alg = build_algorithm(n)
    arrays = _sweep_arrays(alg)
    expected = BooleanFunction.verify(n).values()
    results = {}
    outcomes = {}
    for backend in backends:
        def sweep(backend=backend):
            outcomes[backend] = _kernels.sweep_range(
                *arrays, n, 0, 1 << n, expected, EXACT_TOL, backend=backend)
        sweep()  # warm up (JIT compile on the numba side)
        results[backend] = _time(sweep, repeat)
    firsts = {first for first, _ in outcomes.values()}
    assert firsts == {-1}, f"backends disagree on n={n}: {outcomes}"
    return results


def bench_pair_sweep(n: int, repeat: int, backends: list[str]) -> dict[str, float]:
    expected = BooleanFunction.verify(n).values()
    results = {}
    outcomes = {}
    for backend in backends:
        def sweep(backend=backend):
            outcomes[backend] = _kernels.pair_sweep_range(
                n, 0, 1 << n, expected, EXACT_TOL, backend=backend)
        sweep()
        results[backend] = _time(sweep, repeat)
    assert {first for first, _ in outcomes.values()} == {-1}
    return results


def bench_pair_run(n: int, repeat: int, backends: list[str], words: int = 2000) -> dict[str, float]:
    rng = np.random.default_rng(0)
    sample = [int(w) for w in rng.integers(0, 1 << n, size=words)]
    results = {}
    finals = {}
    for backend in backends:
        def run_all(backend=backend):
            acc = 0.0
            for w in sample:
                acc += _kernels.pair_run(n, w, backend=backend)[0]
            finals[backend] = acc
        run_all()
        results[backend] = _time(run_all, repeat)
    values = list(finals.values())
    assert all(abs(v - values[0]) <= 1e-9 * len(sample) for v in values)
    return results


def bench_sensitivity(n: int, repeat: int, backends: list[str]) -> dict[str, float]:
    table = BooleanFunction.verify(n).values()
    results = {}
    outcomes = {}
    for backend in backends:
        def sweep(backend=backend):
            outcomes[backend] = _kernels.table_sensitivity(table, n, backend=backend)
        sweep()
        results[backend] = _time(sweep, repeat)
    assert len(set(outcomes.values())) == 1, outcomes
    return results


def _print_row(label: str, timings: dict[str, float]) -> None:
    cells = "  ".join(f"{backend}: {seconds * 1e3:9.2f} ms" for backend, seconds in timings.items())
    if "numba" in timings and "numpy" in timings:
        cells += f"  (numpy/numba: {timings['numpy'] / timings['numba']:5.2f}x)"
    print(f"{label:<28}{cells}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[12, 14, 16],
                        help="word sizes for the exactness sweep (even)")
    parser.add_argument("--repeat", type=int, default=3, help="timed repetitions, best-of")
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    print(f"active backend: {_kernels.BACKEND}   comparing: {', '.join(backends)}")
    if not _kernels.HAVE_NUMBA:
        print("numba not importable; timing the numpy path only")
    print()

    for n in args.sizes:
        _print_row(f"dense sweep n={n}", bench_exact_sweep(n, args.repeat, backends))
    print()
    for n in args.sizes:
        _print_row(f"pair sweep n={n}", bench_pair_sweep(n, args.repeat, backends))
    print()
    for n in (16, 20, 24):
        _print_row(f"pair runner n={n} (2000x)", bench_pair_run(n, args.repeat, backends))
    print()
    for n in (16, 18):
        _print_row(f"sensitivity n={n}", bench_sensitivity(n, args.repeat, backends))


if __name__ == "__main__":
    main()
