"""Graded invariants of the partial-derivative ideal of a hypersurface.

Everything here reduces to ranks of structured integer matrices: the
degree-k slice of the ideal spanned by the partials is the row space of a
generator matrix, the quotient algebra dimension is the codimension, and
the saturation slice is the kernel of "multiply by every monomial of one
fixed degree chosen to land past the socle, then reduce mod the ideal".

The smooth reference sequence — the coefficients of ((1-t^(d-1))/(1-t))^(n+1)
— is the Hilbert function every smooth hypersurface of the same (n, d)
realizes; comparing against it detects and quantifies singularity.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .assembly import IntCOO, jacobian_generator_coo
from .errors import NoStabilization
from .field import FieldConfig
from .linalg import AmbientSpace, LinearEngine, SubspaceBasis
from .monomials import exponent_matrix, monomial_rank_rows, space_dim
from .polynomials import HomogeneousPolynomial, partial_derivatives


class SmoothMarker:
    """Returned by coincidence_threshold when no deviation exists through
    the socle degree plus one — the Hilbert-function signature of a smooth
    hypersurface."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "Smooth"


SMOOTH = SmoothMarker()


def socle_degree(n: int, d: int) -> int:
    return (n + 1) * (d - 2)


@lru_cache(maxsize=None)
def _smooth_reference_series(n: int, d: int) -> tuple[int, ...]:
    """Coefficients of (1 + t + ... + t^(d-2))^(n+1)."""
    base = [1] * (d - 1)
    out = [1]
    for _ in range(n + 1):
        new = [0] * (len(out) + len(base) - 1)
        for i, a in enumerate(out):
            if a:
                for j, b in enumerate(base):
                    new[i + j] += a * b
        out = new
    return tuple(out)


def smooth_reference_dim(n: int, d: int, k: int) -> int:
    """Dimension of the degree-k Milnor algebra slice of any smooth
    degree-d hypersurface in P^n."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    if k < 0:
        return 0
    series = _smooth_reference_series(n, d)
    return series[k] if k < len(series) else 0


def _empty_rows(key: str, ncols: int):
    if key == "exact":
        return ()
    return np.zeros((0, ncols), dtype=np.int64)


class JacobianContext:
    """Caches bases, dimensions, and quotient-reduction tables for one
    hypersurface over one field configuration.

    Single-threaded by design: parallel drivers give each worker its own
    context. The engine's rank ledger accumulates every elimination run
    through this context, in order, for replay comparisons.
    """

    def __init__(self, f: HomogeneousPolynomial, field: FieldConfig | None = None):
        if f.is_zero or f.degree < 2:
            raise ValueError("expected a homogeneous polynomial of degree >= 2")
        self.f = f
        self.n = f.n
        self.d = f.degree
        self.field = field or FieldConfig.prime_pair()
        self.field.check_degree_bound(self.n, self.d)
        self.engine = LinearEngine(self.field)
        self.partials = partial_derivatives(f)
        self._monomial_partials = all(len(g.terms) <= 1 for g in self.partials)
        self._dims: dict[int, int] = {}
        self._coo: dict[int, IntCOO] = {}
        self._qr: dict[tuple[int, str], object] = {}

    # -- raw ideal slices ---------------------------------------------------

    def generator_coo(self, k: int) -> IntCOO:
        if k not in self._coo:
            self._coo[k] = jacobian_generator_coo(self.partials, k)
        return self._coo[k]

    def _monomial_dim(self, k: int) -> int:
        """Monomial-ideal fast path: count degree-k monomials divisible by
        at least one (monomial) partial."""
        E = exponent_matrix(self.n, k)
        hit = np.zeros(E.shape[0], dtype=bool)
        for g in self.partials:
            if g.is_zero:
                continue
            expo = next(iter(g.terms))
            ge = np.array(expo, dtype=np.int64)
            hit |= np.all(E >= ge[None, :], axis=1)
        return int(hit.sum())

    def jacobian_dim(self, k: int, force_generic: bool = False) -> int:
        """Dimension of the degree-k slice of the partials' ideal."""
        if k < self.d - 1:
            return 0
        if k in self._dims and not force_generic:
            return self._dims[k]
        if self._monomial_partials and not force_generic:
            dim = self._monomial_dim(k)
        else:
            dim = self.engine.rank_coo(self.generator_coo(k), f"jacobian/{k}")
        self._dims[k] = dim
        return dim

    def jacobian_basis(self, k: int) -> SubspaceBasis:
        """Echelonized basis of the degree-k ideal slice."""
        amb = AmbientSpace.graded(self.n, k)
        if k < self.d - 1:
            payload = {key: _empty_rows(key, amb.dim) for key in self.field.keys}
            return self.engine.echelon_payload(payload, amb, f"jacobian/{k}")
        basis = self.engine.echelon_coo(self.generator_coo(k), amb, f"jacobian/{k}")
        self._dims.setdefault(k, basis.dim)
        return basis

    def milnor_dim(self, k: int) -> int:
        """Hilbert function of the quotient algebra at degree k."""
        if k < 0:
            return 0
        return space_dim(self.n, k) - self.jacobian_dim(k)

    def smooth_dim(self, k: int) -> int:
        return smooth_reference_dim(self.n, self.d, k)

    @property
    def socle(self) -> int:
        return socle_degree(self.n, self.d)

    # -- quotient reduction tables --------------------------------------------

    def quotient_reduction(self, k: int) -> dict[str, object]:
        """Per-field table (N_k x q_k) sending a monomial index to the
        coordinates of its class over the standard complement monomials of
        the degree-k ideal slice."""
        first_key = self.field.keys[0]
        if (k, first_key) not in self._qr:
            basis = self.jacobian_basis(k)
            free = basis.free_columns()
            N = space_dim(self.n, k)
            q = len(free)
            free_arr = np.array(free, dtype=np.int64)
            for key in self.field.keys:
                if key == "exact":
                    table: list[list[Fraction]] = [[Fraction(0)] * q for _ in range(N)]
                    for pos, g in enumerate(free):
                        table[g][pos] = Fraction(1)
                    rows = basis.payload[key]
                    for t, pc in enumerate(basis.pivots):
                        row = rows[t]
                        table[pc] = [-row[g] for g in free]
                    self._qr[(k, key)] = tuple(tuple(r) for r in table)
                else:
                    p = int(key.split(":", 1)[1])
                    QR = np.zeros((N, q), dtype=np.int64)
                    if q:
                        QR[free_arr, np.arange(q, dtype=np.int64)] = 1
                        if basis.pivots:
                            rows = basis.payload[key]
                            piv_arr = np.array(basis.pivots, dtype=np.int64)
                            QR[piv_arr] = (p - rows[:, free_arr]) % p
                    self._qr[(k, key)] = QR
        return {key: self._qr[(k, key)] for key in self.field.keys}


# ---------------------------------------------------------------------------
# Hilbert-function scans
# ---------------------------------------------------------------------------


def coincidence_threshold(ctx: JacobianContext) -> int | SmoothMarker:
    """Largest degree through which the quotient Hilbert function matches
    the smooth reference; the Smooth marker if they agree through the socle
    degree plus one (after which both vanish identically)."""
    top = ctx.socle + 1
    for k in range(top + 1):
        if ctx.milnor_dim(k) != ctx.smooth_dim(k):
            if k == 0:
                raise ValueError("Hilbert functions differ already at degree 0")
            return k - 1
    return SMOOTH


def dims_match_reference_through(ctx: JacobianContext, q: int) -> bool:
    """Whether the quotient Hilbert function equals the smooth reference for
    every degree <= q (a one-sided, cheap bound on coincidence_threshold)."""
    return all(ctx.milnor_dim(k) == ctx.smooth_dim(k) for k in range(q + 1))


def tjurina_count(ctx: JacobianContext) -> int:
    """Stabilized value of the quotient Hilbert function: scan upward from
    the socle degree until three consecutive degrees agree."""
    bound = ctx.socle + 3 * ctx.d
    k = ctx.socle
    while k + 2 <= bound:
        a, b, c = ctx.milnor_dim(k), ctx.milnor_dim(k + 1), ctx.milnor_dim(k + 2)
        if a == b == c:
            return a
        k += 1
    raise NoStabilization(f"quotient dimensions did not stabilize by degree {bound}")


# ---------------------------------------------------------------------------
# degreewise saturation
# ---------------------------------------------------------------------------


def _colon_step_kernel(
    ctx: JacobianContext, W: SubspaceBasis, k0: int, m: int, label: str
) -> SubspaceBasis:
    """Vectors v in the standard complement of W (inside S_k0) with
    v * (every degree-m monomial) inside the ideal slice at k0 + m.

    Returned in ambient S_k0 coordinates (complement columns lifted back).
    """
    n = ctx.n
    free = W.free_columns()
    q_cols = len(free)
    amb = AmbientSpace.graded(n, k0)
    if q_cols == 0:
        payload = {key: _empty_rows(key, amb.dim) for key in ctx.field.keys}
        return ctx.engine.echelon_payload(payload, amb, label + "/empty")
    QR = ctx.quotient_reduction(k0 + m)
    qdim = _qr_width(QR)
    E_m = exponent_matrix(n, m)
    Nm = E_m.shape[0]
    E_k0 = exponent_matrix(n, k0)
    free_arr = np.array(free, dtype=np.int64)
    # target monomial index of (free monomial u) * (degree-m monomial b)
    prod = (E_k0[free_arr][:, None, :] + E_m[None, :, :]).reshape(q_cols * Nm, n + 1)
    prod_rank = monomial_rank_rows(prod, n, k0 + m)
    payload = {}
    for key, table in QR.items():
        if key == "exact":
            cols = []
            for u_pos in range(q_cols):
                block: list[Fraction] = []
                for b_pos in range(Nm):
                    block.extend(table[prod_rank[u_pos * Nm + b_pos]])
                cols.append(block)
            nrows = Nm * qdim
            payload[key] = tuple(
                tuple(cols[u][r] for u in range(q_cols)) for r in range(nrows)
            )
        else:
            block_rows = table[prod_rank].reshape(q_cols, Nm * qdim)
            payload[key] = np.ascontiguousarray(block_rows.T)
    shape = (Nm * qdim, q_cols)
    ker = ctx.engine.kernel_payload(payload, shape, AmbientSpace.abstract(q_cols), label)
    # lift kernel rows from complement coordinates back into S_k0
    lifted = {}
    for key, rows in ker.payload.items():
        if key == "exact":
            out = []
            for row in rows:
                vec = [Fraction(0)] * amb.dim
                for pos, v in enumerate(row):
                    vec[free[pos]] = v
                out.append(tuple(vec))
            lifted[key] = tuple(out)
        else:
            arr = np.zeros((rows.shape[0], amb.dim), dtype=np.int64)
            if rows.shape[0]:
                arr[:, free_arr] = rows
            lifted[key] = arr
    return ctx.engine.echelon_payload(lifted, amb, label + "/lifted")


def _qr_width(QR: dict[str, object]) -> int:
    for key, table in QR.items():
        if key == "exact":
            return len(table[0]) if table else 0
        return int(table.shape[1])
    return 0


_SATURATION_DIM_CAP = 5000


def saturation_graded(ctx: JacobianContext, k: int) -> SubspaceBasis:
    """Degree-k slice of the saturation {v : v * S_m inside the ideal, m >> 0}.

    For an ideal whose zero locus is a finite set of points, the ideal slice
    equals its saturation slice in every degree past the socle degree (the
    quotient Hilbert function is constant there and the ideal is squeezed
    against the vanishing ideal of the points).  A single colon step into
    that stable range therefore captures the whole saturation slice: v is in
    the saturation iff v * (every degree-M monomial) lands in the ideal,
    with M chosen so k + M is past the socle.  Intermediate chain levels
    {v : v * S_m in the ideal} for smaller m can be strictly smaller, so no
    stationarity heuristic on the chain is sound.
    """
    stab = socle_degree(ctx.n, ctx.d) + 1
    if k >= stab:
        return ctx.jacobian_basis(k)
    if space_dim(ctx.n, stab) > _SATURATION_DIM_CAP:
        raise NoStabilization(
            f"saturation at degree {k} needs the degree-{stab} ideal slice "
            f"({space_dim(ctx.n, stab)} columns), past the feasible size cap"
        )
    M = stab - k
    W = ctx.jacobian_basis(k)
    ker = _colon_step_kernel(ctx, W, k, M, f"saturation/{k}/colon{M}")
    if ker.dim:
        W = _basis_union(ctx, W, ker, f"saturation/{k}/union")
    return W


def _basis_union(
    ctx: JacobianContext, a: SubspaceBasis, b: SubspaceBasis, label: str
) -> SubspaceBasis:
    assert a.ambient == b.ambient
    payload = {}
    for key in a.payload.keys():
        if key == "exact":
            payload[key] = tuple(a.payload[key]) + tuple(b.payload[key])
        else:
            payload[key] = np.vstack([a.payload[key], b.payload[key]])
    return ctx.engine.echelon_payload(payload, a.ambient, label)
