#!/usr/bin/env python3
"""Benchmark the numba and numpy kernel backends against each other.

Times the LCS kernel on random token-code sequences and the alignment
subset-selection kernel on random occurrence lists, then prints a table
with per-call times and the numba speedup. Results are checked for
equality while timing, so a reported speedup is always for identical
output.

Usage:
    python benchmarks/benchmark_kernels.py [--lcs-len 400] [--repeats 30]
"""

import argparse
import random
import time

import numpy as np

from mtmetrics import _kernels


def time_call(fn, args_list, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        results = [fn(*args) for args in args_list]
        best = min(best, time.perf_counter() - start)
    return best / len(args_list), results


def bench_lcs(rng, length, cases, repeats):
    args_list = []
    for _ in range(cases):
        a = np.array([rng.randrange(50) for _ in range(length)], dtype=np.int64)
        b = np.array([rng.randrange(50) for _ in range(length)], dtype=np.int64)
        args_list.append((a, b))
    numpy_time, numpy_out = time_call(_kernels._lcs_numpy, args_list, repeats)
    if not _kernels.HAVE_NUMBA:
        return numpy_time, None, numpy_out is not None
    _kernels._lcs_numba(*args_list[0])  # warm the JIT outside the timer
    numba_time, numba_out = time_call(_kernels._lcs_numba, args_list, repeats)
    return numpy_time, numba_time, numpy_out == numba_out


def bench_selection(rng, occurrences, cases, repeats):
    args_list = []
    for _ in range(cases):
        q = occurrences
        p = max(1, q // 2)
        big = np.array(sorted(rng.sample(range(q * 20), q)), dtype=np.int64)
        small = np.array(sorted(rng.sample(range(q * 20), p)), dtype=np.int64)
        args_list.append((small, big))
    numpy_time, numpy_out = time_call(_kernels._select_numpy, args_list, repeats)
    if not _kernels.HAVE_NUMBA:
        return numpy_time, None, numpy_out is not None
    _kernels._select_numba(*args_list[0])
    numba_time, numba_out = time_call(_kernels._select_numba, args_list, repeats)
    equal = all(list(x) == list(y) for x, y in zip(numpy_out, numba_out))
    return numpy_time, numba_time, equal


def fmt_time(seconds):
    if seconds is None:
        return "n/a"
    return f"{seconds * 1e6:9.1f} us"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lcs-len", type=int, default=400,
                        help="token count per side for the LCS benchmark")
    parser.add_argument("--occurrences", type=int, default=64,
                        help="occurrence list size for the selection benchmark")
    parser.add_argument("--cases", type=int, default=20)
    parser.add_argument("--repeats", type=int, default=10)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    if not _kernels.HAVE_NUMBA:
        print("numba not importable: timing the numpy backend only")

    rows = []
    np_t, nb_t, equal = bench_lcs(rng, args.lcs_len, args.cases, args.repeats)
    rows.append((f"lcs ({args.lcs_len}x{args.lcs_len})", np_t, nb_t, equal))
    np_t, nb_t, equal = bench_selection(rng, args.occurrences, args.cases, args.repeats)
    rows.append((f"selection ({args.occurrences} occ)", np_t, nb_t, equal))

    print(f"{'kernel':<24} {'numpy/call':>13} {'numba/call':>13} {'speedup':>9}  outputs")
    for name, numpy_time, numba_time, equal in rows:
        speedup = f"{numpy_time / numba_time:8.1f}x" if numba_time else "      n/a"
        status = "identical" if equal else "MISMATCH"
        print(f"{name:<24} {fmt_time(numpy_time):>13} {fmt_time(numba_time):>13} "
              f"{speedup:>9}  {status}")


if __name__ == "__main__":
    main()
