"""Multiplication pairing and period-differential certificates.

The central object is the multiplication pairing

    (S/J)_(d-n-1)  x  (S/J)_d  ->  (S/J)_(2d-n-1)

realized as one matrix: a column per standard monomial class of degree d, a
row per (degree-(d-n-1) standard monomial, coordinate of the target class)
pair, rows flattened source-major. Full column rank means multiplication by
classes of degree d acts injectively — the paper-level statement this
package certifies on nodal inputs.

The period differential is the same pairing restricted to an effective
deformation subspace V of S_d, with the sign flipped (the differential of
the period map is minus the multiplication action); its certificate demands
full column rank on V after checking V really is effective (meets the
degree-d ideal slice only in zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .assembly import coo_vstack, exact_rows_to_int_coo, polys_to_exact_rows
from .errors import DegreeTooSmall, NotEffective, UnsupportedDimension
from .field import fraction_mod
from .linalg import AmbientSpace, SubspaceBasis
from .milnor import JacobianContext
from .monomials import monomial_basis, monomial_rank_rows
from .polynomials import HomogeneousPolynomial


def quotient_basis(ctx: JacobianContext, k: int) -> tuple[tuple[int, ...], ...]:
    """Standard-monomial basis (exponent tuples) of the degree-k quotient:
    the monomials at non-pivot columns of the ideal slice's echelon basis."""
    basis = ctx.jacobian_basis(k)
    mons = monomial_basis(ctx.n, k)
    return tuple(mons[g] for g in basis.free_columns())


def _pairing_payload(ctx: JacobianContext) -> tuple[dict[str, object], tuple[int, int]]:
    """Per-field pairing matrix and its shape."""
    n, d = ctx.n, ctx.d
    k1 = d - n - 1
    k2 = 2 * d - n - 1
    QR2 = ctx.quotient_reduction(k2)
    src = quotient_basis(ctx, k1)
    mid = quotient_basis(ctx, d)
    q1, qd = len(src), len(mid)
    q2 = _table_width(QR2)
    mid_expos = np.array(mid, dtype=np.int64).reshape(qd, n + 1)
    payload: dict[str, object] = {}
    for key, table in QR2.items():
        blocks = []
        for alpha in src:
            a = np.array(alpha, dtype=np.int64)
            ranks = monomial_rank_rows(mid_expos + a[None, :], n, k2)
            if key == "exact":
                block = [[table[int(r)][c] for r in ranks] for c in range(q2)]
                blocks.extend(tuple(row) for row in block)
            else:
                blocks.append(table[ranks].T)
        if key == "exact":
            payload[key] = tuple(blocks)
        else:
            payload[key] = (
                np.vstack(blocks) if blocks else np.zeros((0, qd), dtype=np.int64)
            )
    return payload, (q1 * q2, qd)


def pairing_matrix(ctx: JacobianContext) -> tuple[dict[str, object], tuple[int, int]]:
    """Matrix of the multiplication pairing (per field key) with shape
    (q_(d-n-1) * q_(2d-n-1), q_d); raises DegreeTooSmall when d < n + 1."""
    if ctx.d < ctx.n + 1:
        raise DegreeTooSmall(
            f"pairing needs degree >= n+1 = {ctx.n + 1}, got {ctx.d}"
        )
    return _pairing_payload(ctx)


def pairing_injective(ctx: JacobianContext) -> bool:
    """Whether multiplication by degree-d classes is injective: the pairing
    matrix has full column rank q_d."""
    payload, shape = pairing_matrix(ctx)
    rank = ctx.engine.rank_payload(payload, shape, "pairing")
    return rank == ctx.milnor_dim(ctx.d)


def variable_multiplication_kernel(ctx: JacobianContext, t: int) -> SubspaceBasis:
    """Kernel of v -> (x_0 v, ..., x_n v) on the degree-t quotient classes,
    in standard-monomial coordinates of the degree-t quotient."""
    n = ctx.n
    std = quotient_basis(ctx, t)
    qt = len(std)
    amb = AmbientSpace.abstract(qt)
    QR1 = ctx.quotient_reduction(t + 1)
    q_next = _table_width(QR1)
    std_expos = np.array(std, dtype=np.int64).reshape(qt, n + 1)
    payload: dict[str, object] = {}
    for key, table in QR1.items():
        if key == "exact":
            rows: list[tuple[Fraction, ...]] = []
            for i in range(n + 1):
                shifted = std_expos.copy()
                shifted[:, i] += 1
                ranks = monomial_rank_rows(shifted, n, t + 1)
                for c in range(q_next):
                    rows.append(tuple(table[int(r)][c] for r in ranks))
            payload[key] = tuple(rows)
        else:
            blocks = []
            for i in range(n + 1):
                shifted = std_expos.copy()
                shifted[:, i] += 1
                ranks = monomial_rank_rows(shifted, n, t + 1)
                blocks.append(table[ranks].T)
            payload[key] = (
                np.vstack(blocks) if blocks else np.zeros((0, qt), dtype=np.int64)
            )
    shape = ((n + 1) * q_next, qt)
    return ctx.engine.kernel_payload(payload, shape, amb, f"varmul/{t}")


def effective_deformation_check(ctx: JacobianContext, V: Sequence[HomogeneousPolynomial]) -> bool:
    """Whether span(V) inside S_d meets the degree-d ideal slice only in
    zero (and V itself is independent): rank [ideal gens ; V] must equal
    dim J_d + |V|."""
    d = ctx.d
    for g in V:
        if g.is_zero or g.degree != d or g.n != ctx.n:
            raise ValueError("deformation entries must be nonzero of degree d in the same variables")
    v_rows = polys_to_exact_rows(V, d)
    v_coo = exact_rows_to_int_coo(v_rows, ctx.generator_coo(d).shape[1])
    v_rank = ctx.engine.rank_coo(v_coo, f"deformation-span/{_span_tag(ctx)}")
    stacked = coo_vstack([ctx.generator_coo(d), v_coo])
    total = ctx.engine.rank_coo(stacked, f"deformation-stack/{_span_tag(ctx)}")
    return v_rank == len(V) and total == ctx.jacobian_dim(d) + len(V)


def _span_tag(ctx: JacobianContext) -> int:
    """Distinct ledger tags for successive deformation checks on one context."""
    tag = getattr(ctx, "_deformation_tag", 0) + 1
    ctx._deformation_tag = tag  # type: ignore[attr-defined]
    return tag


@dataclass(frozen=True)
class PeriodDifferentialResult:
    payload: dict[str, object]
    shape: tuple[int, int]
    rank: int
    dim_v: int

    @property
    def injective(self) -> bool:
        return self.rank == self.dim_v


def period_differential(
    ctx: JacobianContext, V: Sequence[HomogeneousPolynomial]
) -> PeriodDifferentialResult:
    """Matrix of the period-map differential on the deformation subspace V:
    minus the multiplication pairing evaluated on each element of V.

    Supported ambient dimensions are n >= 3 odd and n >= 6 even; n = 4 (and
    every n < 3) raises UnsupportedDimension. V must pass the effectiveness
    check or NotEffective is raised.
    """
    n, d = ctx.n, ctx.d
    if n < 3 or n == 4:
        raise UnsupportedDimension(f"period differential not certified for n = {n}")
    if d < n + 1:
        raise DegreeTooSmall(f"pairing needs degree >= n+1 = {n + 1}, got {d}")
    if not effective_deformation_check(ctx, V):
        raise NotEffective("deformation subspace meets the degree-d ideal slice")
    k1 = d - n - 1
    k2 = 2 * d - n - 1
    QR2 = ctx.quotient_reduction(k2)
    src = quotient_basis(ctx, k1)
    q2 = _table_width(QR2)
    q1 = len(src)
    nv = len(V)
    payload: dict[str, object] = {}
    for key, table in QR2.items():
        if key == "exact":
            cols: list[list[Fraction]] = [[Fraction(0)] * (q1 * q2) for _ in range(nv)]
            for j, g in enumerate(V):
                for a_idx, alpha in enumerate(src):
                    acc = [Fraction(0)] * q2
                    for expo, coeff in g.terms.items():
                        prod = tuple(x + y for x, y in zip(alpha, expo))
                        row = table[_rank_of(prod, n, k2)]
                        for c in range(q2):
                            if row[c]:
                                acc[c] += coeff * row[c]
                    for c in range(q2):
                        cols[j][a_idx * q2 + c] = -acc[c]
            payload[key] = tuple(
                tuple(cols[j][r] for j in range(nv)) for r in range(q1 * q2)
            )
        else:
            p = int(key.split(":", 1)[1])
            mat = np.zeros((q1 * q2, nv), dtype=np.int64)
            src_expos = np.array(src, dtype=np.int64).reshape(q1, n + 1)
            for j, g in enumerate(V):
                for expo, coeff in g.terms.items():
                    cmod = fraction_mod(Fraction(coeff), p)
                    if cmod == 0:
                        continue
                    expo_arr = np.array(expo, dtype=np.int64)
                    ranks = monomial_rank_rows(src_expos + expo_arr[None, :], n, k2)
                    contrib = (cmod * table[ranks]) % p  # (q1, q2)
                    mat[:, j] = (mat[:, j] + contrib.reshape(q1 * q2)) % p
                mat[:, j] = (p - mat[:, j]) % p
            payload[key] = mat
    shape = (q1 * q2, nv)
    rank = ctx.engine.rank_payload(payload, shape, f"period-differential/{_span_tag(ctx)}")
    return PeriodDifferentialResult(payload, shape, rank, nv)


def _table_width(QR: dict[str, object]) -> int:
    for key, table in QR.items():
        if key == "exact":
            return len(table[0]) if table else 0
        return int(table.shape[1])
    return 0


def _rank_of(expo: tuple[int, ...], n: int, k: int) -> int:
    arr = np.array(expo, dtype=np.int64).reshape(1, n + 1)
    return int(monomial_rank_rows(arr, n, k)[0])
