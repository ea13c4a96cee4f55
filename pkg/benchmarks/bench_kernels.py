"""Benchmark the subset-rank scan kernels: numba backend vs numpy fallback.

The hot loop of the whole package is "scan k-column subsets of a small
matrix and rank-test each one" (general position checks, facial searches).
Two regimes matter:

  * full scan   -- general position checks pass every subset, so the scan
                   runs to the end.  The numpy fallback batches subsets
                   into stacked SVD calls and tends to win here.
  * early exit  -- facial searches usually hit an independent subset
                   within the first few tries.  The jitted loop returns
                   after one tiny SVD; the numpy path pays for a whole
                   chunk.  numba wins by orders of magnitude.

classify() mixes both (one full scan plus one early-exit search per
vertex), which is why numba is the default backend when importable.

Run from the repo root:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from stresskit import _kernels

REL_TOL = 1e-9
ABS_FLOOR = 1e-12
REPEATS = 20

# (rows, n, k): rank-test k-column subsets of an (rows, n) matrix.
# Shapes mirror the kernel general-position scans (rows = d+1, k = d+1)
# and facial searches the library actually runs.
FULL_SCAN_CASES = [
    (3, 6, 3),     # W_5 kernel scan, d=2
    (3, 9, 3),     # largest builtin, d=2
    (4, 12, 4),    # d=3, n=12
    (6, 14, 6),    # stress-matrix column route, larger n
]
EARLY_EXIT_CASES = [
    (6, 9, 3),
    (9, 12, 4),
    (12, 16, 6),
]


def time_call(name, fn, mat, subsets):
    _kernels.activate(name)
    # one untimed call so jit compilation stays out of the numbers
    fn(mat, subsets, REL_TOL, ABS_FLOOR)
    best = np.inf
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        out = fn(mat, subsets, REL_TOL, ABS_FLOOR)
        best = min(best, time.perf_counter() - t0)
    return best, out


def run(label, fn, cases):
    print(label)
    print(f"  {'case':>14} {'subsets':>8} {'numpy':>11} {'numba':>11} {'numpy/numba':>12}")
    rng = np.random.default_rng(7)
    for rows, n, k in cases:
        mat = np.ascontiguousarray(rng.standard_normal((rows, n)))
        subsets = _kernels.combinations_array(n, k)
        t_np, out_np = time_call("numpy", fn, mat, subsets)
        try:
            t_nb, out_nb = time_call("numba", fn, mat, subsets)
        except ImportError:
            print(f"  {f'r={rows} n={n} k={k}':>14} {len(subsets):>8} "
                  f"{t_np * 1e6:>9.1f}us {'(no numba)':>11}")
            continue
        assert out_np == out_nb, (out_np, out_nb)
        print(f"  {f'r={rows} n={n} k={k}':>14} {len(subsets):>8} "
              f"{t_np * 1e6:>9.1f}us {t_nb * 1e6:>9.1f}us {t_np / t_nb:>11.1f}x")


def main():
    initial = _kernels.backend_name()
    # generic data: full scans find no dependent subset, early-exit
    # searches find an independent one almost immediately
    run("full scan (first_dependent_columns, no hit)",
        _kernels.first_dependent_columns, FULL_SCAN_CASES)
    run("early exit (first_independent_columns, hit near start)",
        _kernels.first_independent_columns, EARLY_EXIT_CASES)
    _kernels.activate(initial)


if __name__ == "__main__":
    main()
