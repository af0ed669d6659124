"""Benchmark the modular elimination backends against each other.

Runs the scalar row-reduction and the blocked rank-only elimination on
matrices shaped like real Jacobian-ideal slices, once with the accelerated
(numba) implementation and once with the plain-numpy fallback, and prints
a timing table. The two backends must return identical ranks; the script
exits nonzero if they ever disagree.

Usage:
    python3 benchmarks/bench_elimination.py [--quick]

The accelerated backend is skipped automatically when numba is not
importable or NODALCERT_PURE_NUMPY=1 is set (the same switch the library
honors at import time).
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from nodalcert._kernels import (
    HAS_NUMBA,
    IMPL_NUMPY,
    blocked_rank_mod,
    rref_mod,
)
from nodalcert.field import DEFAULT_PRIMES

P = DEFAULT_PRIMES[0]

# (label, rows, cols, rank): sizes matching Jacobian slices that the
# certification pipeline actually eliminates.
CASES = [
    ("quartic 3-fold, degree 8", 224, 165, 164),
    ("quintic 3-fold, degree 12", 780, 455, 454),
    ("quintic 4-fold, degree 10", 2002, 1001, 1000),
    ("quintic 4-fold, degree 13", 4900, 2380, 2378),
    ("quintic 4-fold, degree 15", 7140, 3876, 3874),
]
QUICK_CASES = CASES[:3]


def random_with_rank(rng: np.random.Generator, rows: int, cols: int, rank: int) -> np.ndarray:
    left = rng.integers(0, P, size=(rows, rank), dtype=np.int64)
    right = rng.integers(0, P, size=(rank, cols), dtype=np.int64)
    out = np.zeros((rows, cols), dtype=np.int64)
    for j0 in range(0, cols, 64):
        j1 = min(j0 + 64, cols)
        out[:, j0:j1] = (left @ right[:, j0:j1]) % P
    return out


def time_call(fn, *args) -> tuple[float, int]:
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--quick", action="store_true", help="only the small cases")
    args = parser.parse_args(argv)

    impls = [("numpy", IMPL_NUMPY)]
    if HAS_NUMBA:
        from nodalcert._kernels import IMPL_NUMBA

        # warm the JIT so compile time does not pollute the table
        warm = np.arange(16, dtype=np.int64).reshape(4, 4) % P
        rref_mod(warm.copy(), P, impl=IMPL_NUMBA)
        blocked_rank_mod(warm.copy(), P, impl=IMPL_NUMBA)
        impls.append(("numba", IMPL_NUMBA))
    else:
        print("accelerated backend unavailable; timing the fallback only")

    rng = np.random.default_rng(2024)
    cases = QUICK_CASES if args.quick else CASES
    header = f"{'case':<28} {'shape':>12} {'algorithm':<10}"
    for name, _ in impls:
        header += f" {name:>10}"
    print(header)
    print("-" * len(header))
    disagreements = 0
    for label, rows, cols, rank in cases:
        A = random_with_rank(rng, rows, cols, rank)
        for algo, fn in [("scalar", lambda M, impl: rref_mod(M, P, impl=impl)[0]),
                         ("blocked", lambda M, impl: blocked_rank_mod(M, P, impl=impl))]:
            line = f"{label:<28} {rows:>5}x{cols:<6} {algo:<10}"
            ranks = []
            for _, impl in impls:
                secs, got = time_call(fn, A.copy(), impl)
                ranks.append(got)
                line += f" {secs:>9.3f}s"
            if len(set(ranks)) != 1:
                line += "  RANK DISAGREEMENT"
                disagreements += 1
            print(line)
    if disagreements:
        print(f"{disagreements} disagreement(s) between backends", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
