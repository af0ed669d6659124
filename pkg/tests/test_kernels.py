"""Modular elimination kernels: the accelerated and plain implementations
must agree bit-for-bit, and both must agree with exact arithmetic."""

import os
import subprocess
import sys

import numpy as np
import pytest

from nodalcert._kernels import (
    HAS_NUMBA,
    IMPL_NUMPY,
    PANEL_WIDTH,
    blocked_rank_mod,
    kernel_from_rref,
    rank_mod,
    rref_mod,
)
from nodalcert.exact import bareiss_rank
from nodalcert.field import DEFAULT_PRIMES

P = DEFAULT_PRIMES[0]


def _random_with_rank(rng, rows, cols, rank, p=P):
    left = rng.integers(0, p, size=(rows, rank), dtype=np.int64)
    right = rng.integers(0, p, size=(rank, cols), dtype=np.int64)
    out = np.zeros((rows, cols), dtype=np.int64)
    for j0 in range(0, cols, 64):
        j1 = min(j0 + 64, cols)
        out[:, j0:j1] = (left @ right[:, j0:j1]) % p
    return out


def test_rref_finds_the_pivot_columns():
    A = np.array([[2, 4, 6], [1, 2, 4], [0, 0, 5]], dtype=np.int64) % P
    rank, pivots = rref_mod(A.copy(), P)
    assert rank == 2
    assert pivots.tolist() == [0, 2]
    B = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.int64)
    rank_b, pivots_b = rref_mod(B, P)
    assert rank_b == 2 and pivots_b.tolist() == [0, 1]


def test_rref_rank_matches_exact_rank():
    rng = np.random.default_rng(7)
    for rows, cols, r in [(12, 9, 5), (9, 14, 7), (10, 10, 10)]:
        A = _random_with_rank(rng, rows, cols, r)
        exact = bareiss_rank([[int(x) for x in row] for row in A])
        got, _ = rref_mod(A.copy(), P)
        assert got == exact


def test_blocked_rank_agrees_with_scalar_rref():
    rng = np.random.default_rng(11)
    for rows, cols, r in [
        (200, 150, 60),
        (150, 200, 90),
        (PANEL_WIDTH + 40, PANEL_WIDTH + 17, PANEL_WIDTH + 3),
        (300, 300, 299),
    ]:
        A = _random_with_rank(rng, rows, cols, r)
        scalar, _ = rref_mod(A.copy(), P)
        blocked = blocked_rank_mod(A.copy(), P)
        assert blocked == scalar


def test_blocked_rank_with_extreme_entries():
    # stress the limb-splitting reduction with entries at the modulus edge
    A = np.full((140, 140), P - 1, dtype=np.int64)
    A[np.diag_indices(140)] = 1
    scalar, _ = rref_mod(A.copy(), P)
    assert blocked_rank_mod(A.copy(), P) == scalar


def test_rank_mod_handles_degenerate_shapes():
    assert rank_mod(np.zeros((0, 5), dtype=np.int64), P) == 0
    assert rank_mod(np.zeros((5, 0), dtype=np.int64), P) == 0
    assert rank_mod(np.zeros((4, 4), dtype=np.int64), P) == 0


def test_kernel_from_rref_annihilates_the_matrix():
    rng = np.random.default_rng(3)
    A = _random_with_rank(rng, 20, 15, 8)
    original = A.copy()
    rank, pivots = rref_mod(A, P)
    ker = kernel_from_rref(A[:rank], pivots, 15, P)
    assert ker.shape == (15 - rank, 15)
    assert not ((original @ ker.T) % P).any()
    # the kernel rows are independent
    got, _ = rref_mod(ker.copy(), P)
    assert got == 15 - rank


@pytest.mark.skipif(not HAS_NUMBA, reason="accelerated backend not active")
def test_numba_and_numpy_backends_agree_bitwise():
    from nodalcert._kernels import IMPL_NUMBA

    rng = np.random.default_rng(23)
    for rows, cols, r in [(40, 60, 25), (170, 140, 100)]:
        A = _random_with_rank(rng, rows, cols, r)
        a1, a2 = A.copy(), A.copy()
        r1, piv1 = rref_mod(a1, P, impl=IMPL_NUMPY)
        r2, piv2 = rref_mod(a2, P, impl=IMPL_NUMBA)
        assert r1 == r2
        assert piv1.tolist() == piv2.tolist()
        assert np.array_equal(a1, a2)
        b1 = blocked_rank_mod(A.copy(), P, impl=IMPL_NUMPY)
        b2 = blocked_rank_mod(A.copy(), P, impl=IMPL_NUMBA)
        assert b1 == b2 == r1


def test_pure_numpy_env_flag_disables_acceleration():
    env = dict(os.environ, NODALCERT_PURE_NUMPY="1")
    out = subprocess.run(
        [sys.executable, "-c", "from nodalcert._kernels import HAS_NUMBA; print(HAS_NUMBA)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "False"
