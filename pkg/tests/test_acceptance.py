"""Acceptance gate: ten independently checkable statements, each reported
as one pass/fail line in the terminal summary block.

Criterion 2 contains one honestly unattainable element: its coverage
clause asks for a certified-nodal fixture with n = 5, but any sound
global node-count certificate for a (5,6) hypersurface needs the rank of
the degree-24 Jacobian slice — a 255024 x 118755 elimination (~2*10^16
operations) — because the graded dimensions below the socle degree
cannot distinguish the claimed node set from one with an extra hidden
singularity. The criterion is therefore reported FAIL with the analysis
inline; every certifiable part of it passes and is printed as such.
"""

from __future__ import annotations

import json
import time

import numpy as np
import pytest

from conftest import EXPECTED, ROSTER, record_criterion

from nodalcert.cli import main as cli_main
from nodalcert.field import FieldConfig
from nodalcert.fixtures import fermat, one_node
from nodalcert.hodge import hodge_graded_dims, ideal_of_points_dim
from nodalcert.koszul import koszul_cohomology_dim, min_relation_degree
from nodalcert.milnor import (
    JacobianContext,
    coincidence_threshold,
    saturation_graded,
    smooth_reference_dim,
    socle_degree,
    tjurina_count,
)
from nodalcert.errors import UnsupportedDimension
from nodalcert.nodal import certify_nodal
from nodalcert.polynomials import HomogeneousPolynomial
from nodalcert.torelli import (
    pairing_injective,
    pairing_matrix,
    period_differential,
    quotient_basis,
    variable_multiplication_kernel,
)


def _criterion(request, num: int, title: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    line = f"criterion {num:2d} [{status}] {title}: {detail}"
    record_criterion(request.config, line)
    assert ok, line


def _standard_monomials(ctx, k):
    return [HomogeneousPolynomial.monomial(ctx.n, e) for e in quotient_basis(ctx, k)]


def test_criterion_01_hilbert_oracle(request):
    t0 = time.perf_counter()
    mismatches = []
    for n, d in [(3, 4), (3, 5), (4, 5), (5, 6)]:
        ctx = JacobianContext(fermat(n, d).f, FieldConfig.prime_pair())
        T = socle_degree(n, d)
        for k in range(T + 3):
            if ctx.milnor_dim(k) != smooth_reference_dim(n, d, k):
                mismatches.append((n, d, k))
    seq = [smooth_reference_dim(3, 4, k) for k in range(9)]
    seq_ok = seq == [1, 4, 10, 16, 19, 16, 10, 4, 1]
    elapsed = time.perf_counter() - t0
    ok = not mismatches and seq_ok and elapsed < 5.0
    _criterion(
        request, 1, "Hilbert oracle",
        ok,
        f"Fermat (3,4),(3,5),(4,5),(5,6) match the smooth reference through "
        f"socle+2; (3,4) sequence {tuple(seq)}; {elapsed:.2f}s (< 5s)"
        + (f"; mismatches {mismatches}" if mismatches else ""),
    )


def test_criterion_02_injective_pairing_suite(request, roster):
    t0 = time.perf_counter()
    problems = []
    for key in roster.certified_keys():
        cert = roster.cert(key)
        if cert.verdict != f"Nodal({EXPECTED[key]['nodes']})":
            problems.append(f"{key}: {cert.verdict}")
            continue
        ctx = roster.ctx(key)
        if not pairing_injective(ctx):
            problems.append(f"{key}: pairing rank below the quotient dimension")
        elif ctx.engine.rank_ledger["pairing"].rank != ctx.milnor_dim(ctx.d):
            problems.append(f"{key}: ledger rank mismatch")

    # the n = 5 coverage element, attempted honestly
    big = one_node(5, 6, 808)
    big_ctx = JacobianContext(big.f, FieldConfig.prime_pair())
    big_cert = certify_nodal(big_ctx, big.points)
    big_phi = pairing_injective(big_ctx)

    covered_n = {ROSTER[k][1] for k in roster.certified_keys()}
    covered_offsets = {ROSTER[k][2] - ROSTER[k][1] for k in roster.certified_keys()}
    covered_counts = {EXPECTED[k]["nodes"] for k in roster.certified_keys()}
    coverage_ok = (
        len(roster.certified_keys()) >= 6
        and covered_n >= {3, 4, 5}
        and covered_offsets >= {1, 2}
        and covered_counts >= {1, 2}
    )
    elapsed = time.perf_counter() - t0
    ok = not problems and coverage_ok and elapsed < 600.0
    detail = (
        f"{len(roster.certified_keys())} certified fixtures "
        f"(n in {sorted(covered_n)}, degree offsets {sorted(covered_offsets)}, "
        f"node counts {sorted(covered_counts)}), pairing injective on all"
        + (f"; FAILURES {problems}" if problems else "")
        + f"; n=5 element: certification {big_cert.verdict!r} — any sound global "
        f"node count for (5,6) needs the degree-24 Jacobian slice "
        f"(255024 x 118755, ~2e16 ops; dimensions below the socle cannot "
        f"separate the claimed nodes from a hidden extra singularity), "
        f"infeasible here; pairing on that uncertified fixture is "
        f"{'injective' if big_phi else 'NOT injective'}; {elapsed:.1f}s (< 600s)"
    )
    _criterion(request, 2, "injectivity of the multiplication pairing", ok, detail)


def test_criterion_03_syzygy_vanishing_window(request, roster):
    t0 = time.perf_counter()
    bad = []
    for key in roster.certified_keys():
        ctx = roster.ctx(key)
        top = (ctx.n * ctx.d - 1) // 2
        for m in range(top + 1):
            dim = koszul_cohomology_dim(ctx, m)
            if dim != 0:
                bad.append((key, m, dim))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 600.0
    _criterion(
        request, 3, "syzygy cohomology vanishing",
        ok,
        f"all dims zero for m <= (n*d-1)/2 on the 6 certified fixtures; "
        f"{elapsed:.1f}s (< 600s)" + (f"; nonzero {bad}" if bad else ""),
    )


def test_criterion_04_threshold_identity(request, roster):
    t0 = time.perf_counter()
    rows = []
    bad = []
    for key in roster.certified_keys():
        ctx = roster.ctx(key)
        ct = coincidence_threshold(ctx)
        mdr = min_relation_degree(ctx)
        bound = 2 * ctx.d - ctx.n - 1
        rows.append(f"{key}: ct={ct} mdr={mdr}")
        if ct != mdr + ctx.d - 2 or not ct > bound:
            bad.append(f"{key}: ct={ct} mdr={mdr} bound={bound}")
        if ct != EXPECTED[key]["ct"] or mdr != EXPECTED[key]["mdr"]:
            bad.append(f"{key}: drifted from the frozen values")
    elapsed = time.perf_counter() - t0
    ok = not bad
    _criterion(
        request, 4, "coincidence threshold identity",
        ok,
        f"ct = mdr + d - 2 and ct > 2d-n-1 on every singular fixture "
        f"({'; '.join(rows)}); {elapsed:.1f}s"
        + (f"; FAILURES {bad}" if bad else ""),
    )


def test_criterion_05_low_degree_reference_equalities(request, roster):
    bad = []
    for key in roster.certified_keys():
        ctx = roster.ctx(key)
        for k in (ctx.d - ctx.n - 1, 2 * ctx.d - ctx.n - 1):
            if ctx.milnor_dim(k) != ctx.smooth_dim(k):
                bad.append((key, k))
    _criterion(
        request, 5, "reference equalities at the pairing degrees",
        not bad,
        "quotient dims equal the smooth reference at k = d-n-1 and 2d-n-1 "
        "on all six nodal fixtures" + (f"; mismatches {bad}" if bad else ""),
    )


def test_criterion_06_variable_multiplication_kernels(request, roster):
    t0 = time.perf_counter()
    bad = []
    for key in roster.certified_keys():
        ctx = roster.ctx(key)
        for t in range(2 * ctx.d - ctx.n - 1):
            dim = variable_multiplication_kernel(ctx, t).dim
            if dim != 0:
                bad.append((key, t, dim))
    fer = roster.ctx("fermat34")
    socle_kernel = variable_multiplication_kernel(fer, fer.socle).dim
    elapsed = time.perf_counter() - t0
    ok = not bad and socle_kernel == 1 and elapsed < 300.0
    _criterion(
        request, 6, "variable-multiplication kernels",
        ok,
        f"kernels vanish for t < 2d-n-1 on all nodal fixtures; smooth "
        f"socle-degree kernel is {socle_kernel}-dimensional (sharpness); "
        f"{elapsed:.1f}s (< 300s)" + (f"; nonzero {bad}" if bad else ""),
    )


def test_criterion_07_period_differential(request, roster):
    t0 = time.perf_counter()
    problems = []
    for key in ("A", "C"):
        ctx = roster.ctx(key)
        V = _standard_monomials(ctx, ctx.d)
        result = period_differential(ctx, V)
        if not (result.rank == result.dim_v == ctx.milnor_dim(ctx.d)):
            problems.append(f"{key}: rank {result.rank} vs dim {result.dim_v}")
            continue
        pairing_payload, pairing_shape = pairing_matrix(ctx)
        if result.shape != pairing_shape:
            problems.append(f"{key}: shape mismatch")
            continue
        for fkey, mat in result.payload.items():
            p = int(fkey.split(":")[1])
            expected = (p - np.asarray(pairing_payload[fkey])) % p
            if not np.array_equal(np.asarray(mat), expected):
                problems.append(f"{key}: entries differ from -1 x pairing over {fkey}")
    try:
        ctx4 = JacobianContext(fermat(4, 5).f, FieldConfig.prime_pair())
        period_differential(ctx4, [HomogeneousPolynomial.monomial(4, (5, 0, 0, 0, 0))])
        problems.append("n=4 was not rejected")
    except UnsupportedDimension:
        pass
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 300.0
    _criterion(
        request, 7, "period differential",
        ok,
        f"full-rank on the standard-monomial complement for two 3-fold "
        f"fixtures, entrywise equal to -1 x the pairing matrix, and n=4 "
        f"rejected; {elapsed:.1f}s (< 300s)"
        + (f"; FAILURES {problems}" if problems else ""),
    )


def test_criterion_08_graded_pieces_and_saturation(request, roster):
    t0 = time.perf_counter()
    ctx1 = roster.ctx("A")
    pts1 = roster.fixture("A").points
    fx2 = one_node(3, 4, 909)
    ctx2 = JacobianContext(fx2.f, FieldConfig.prime_pair())
    cert2 = certify_nodal(ctx2, fx2.points)
    h1, h2 = hodge_graded_dims(ctx1), hodge_graded_dims(ctx2)
    agree = (h1.gr_top, h1.gr_next) == (h2.gr_top, h2.gr_next)
    sat_ok = True
    for ctx, pts in ((ctx1, pts1), (ctx2, fx2.points)):
        k = 2 * ctx.d - 4
        if saturation_graded(ctx, k).dim != ideal_of_points_dim(ctx, pts, k):
            sat_ok = False
    elapsed = time.perf_counter() - t0
    ok = cert2.passed and agree and sat_ok and elapsed < 300.0
    _criterion(
        request, 8, "graded pieces across seeds / saturation vs point ideal",
        ok,
        f"independently seeded one-node quartics agree: gr_top={h1.gr_top}, "
        f"gr_next={h1.gr_next} on both; saturation at 2d-4 equals the "
        f"node-ideal dimension on both; {elapsed:.1f}s (< 300s)",
    )


def test_criterion_09_two_prime_vs_exact(request, roster):
    t0 = time.perf_counter()

    def full_suite(field):
        fx = roster.fixture("A")
        ctx = JacobianContext(fx.f, field)
        certify_nodal(ctx, fx.points)
        pairing_injective(ctx)
        min_relation_degree(ctx)
        saturation_graded(ctx, 4)
        return {k: (r.rows, r.cols, r.rank) for k, r in ctx.engine.rank_ledger.items()}

    def limited_suite(field):
        fx = roster.fixture("E")
        ctx = JacobianContext(fx.f, field)
        for k in range(9):
            ctx.milnor_dim(k)
        pairing_injective(ctx)
        return {k: (r.rows, r.cols, r.rank) for k, r in ctx.engine.rank_ledger.items()}

    mism = []
    counts = []
    for name, suite in (("n=3 full suite", full_suite), ("n=4 limited suite", limited_suite)):
        modular = suite(FieldConfig.prime_pair())
        rational = suite(FieldConfig.exact())
        counts.append(f"{name}: {len(modular)} ranks")
        if set(modular) != set(rational):
            mism.append(f"{name}: ledger labels differ")
        else:
            mism.extend(
                f"{name}/{label}: {modular[label]} vs {rational[label]}"
                for label in modular
                if modular[label] != rational[label]
            )
    elapsed = time.perf_counter() - t0
    ok = not mism and elapsed < 900.0
    _criterion(
        request, 9, "two-prime vs exact-rational ranks",
        ok,
        f"every recorded rank identical across modes ({'; '.join(counts)}); "
        f"{elapsed:.1f}s (< 900s)" + (f"; mismatches {mism}" if mism else ""),
    )


def test_criterion_10_sweep_determinism(request, capsys):
    t0 = time.perf_counter()
    argv = [
        "sweep",
        "one_node:3,4,seed=11",
        "one_node:3,4,seed=22",
        "one_node:3,4,seed=33",
        "--json",
    ]
    outputs = []
    codes = []
    for _ in range(2):
        codes.append(cli_main(list(argv)))
        outputs.append(capsys.readouterr().out)

    def stripped(raw: str) -> bytes:
        doc = json.loads(raw)
        doc.pop("timings", None)
        return json.dumps(doc, indent=2, sort_keys=True).encode()

    identical = stripped(outputs[0]) == stripped(outputs[1])
    constancy = json.loads(outputs[0])["results"]["constancy"]
    elapsed = time.perf_counter() - t0
    ok = codes == [0, 0] and identical and constancy and elapsed < 60.0
    _criterion(
        request, 10, "sweep determinism",
        ok,
        f"two sweeps over three seeded fixtures byte-identical with timings "
        f"excluded, constancy holds; {elapsed:.1f}s (< 60s)",
    )
