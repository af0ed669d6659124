"""Nodality certification: point parsing, local checks, both global
routes, and the fail-closed behavior on every bad input."""

from fractions import Fraction

import pytest

from nodalcert.errors import DegeneratePoint, NotSingular
from nodalcert.field import FieldConfig
from nodalcert.fixtures import fermat, multi_node, one_node
from nodalcert.milnor import JacobianContext
from nodalcert.nodal import (
    ProjectivePoint,
    certify_nodal,
    hessian_rank_at,
    is_singular_at,
    parse_point,
)
from nodalcert.polynomials import compose_linear, parse_polynomial


def test_parse_point_normalizes_scaling():
    p = parse_point("[0 : 0 : 0 : 2]", 3)
    assert p.to_text() == "[0 : 0 : 0 : 1]"
    q = parse_point("[2 : 4 : 0 : 6]", 3)
    assert q.coords == (1, 2, 0, 3)
    assert parse_point("[1/2 : 1 : 0 : 0]", 3) == parse_point("[1 : 2 : 0 : 0]", 3)


def test_parse_point_rejects_bad_input():
    with pytest.raises(DegeneratePoint):
        parse_point("[0 : 0 : 0 : 0]", 3)
    for text in ["1 : 2 : 3 : 4", "[1 : 2]", "[1 : x : 0 : 0]"]:
        with pytest.raises(Exception):
            parse_point(text, 3)


def test_singularity_detection(roster):
    fer = roster.fixture("fermat34").f
    assert not is_singular_at(fer, parse_point("[1 : 0 : 0 : 0]", 3))
    fx = roster.fixture("A")
    assert is_singular_at(fx.f, fx.points[0])
    assert not is_singular_at(fx.f, parse_point("[1 : 0 : 0 : 0]", 3))


def test_hessian_rank_at_the_node(roster):
    fx = roster.fixture("A")
    assert hessian_rank_at(fx.f, fx.points[0]) == 3


def test_hessian_rank_requires_a_singular_point(roster):
    with pytest.raises(NotSingular):
        hessian_rank_at(roster.fixture("fermat34").f, parse_point("[1 : 0 : 0 : 0]", 3))


def test_hessian_rank_is_chart_independent(roster):
    # move the node to a different coordinate chart by a change of variables
    fx = roster.fixture("A")
    perm = [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]
    g = compose_linear(fx.f, perm)
    moved = parse_point("[1 : 0 : 0 : 0]", 3)
    assert is_singular_at(g, moved)
    assert hessian_rank_at(g, moved) == 3


def test_certify_one_node_literal_route(roster):
    cert = roster.cert("A")
    assert cert.verdict == "Nodal(1)"
    assert cert.route == "literal"
    assert cert.tjurina == 1
    assert cert.passed


def test_certify_routes_agree(roster):
    # the direct global count and the persistence certificate are
    # independent global arguments; they must reach the same verdict
    fx = roster.fixture("B")
    ctx = roster.ctx("B")
    lit = certify_nodal(ctx, fx.points, route="literal")
    per = certify_nodal(ctx, fx.points, route="hilbert-persistence")
    assert lit.verdict == per.verdict == "Nodal(2)"
    assert lit.route == "literal"
    assert per.route == "hilbert-persistence"
    assert per.details["h0"] == per.details["h1"] == 2


def test_certify_smooth_both_routes(roster):
    ctx = roster.ctx("fermat34")
    lit = certify_nodal(ctx, (), route="literal")
    per = certify_nodal(ctx, (), route="hilbert-persistence")
    assert lit.verdict == per.verdict == "Smooth"


def test_certify_fails_on_nonsingular_claimed_point(roster):
    ctx = roster.ctx("A")
    cert = certify_nodal(ctx, (parse_point("[1 : 0 : 0 : 0]", 3),))
    assert not cert.passed
    assert "singular" in cert.reason


def test_certify_fails_on_duplicate_points(roster):
    fx = roster.fixture("A")
    cert = certify_nodal(roster.ctx("A"), fx.points + fx.points)
    assert not cert.passed
    assert "distinct" in cert.reason


def test_certify_fails_when_a_node_is_missing(roster):
    # claiming only one of the two actual nodes must fail on both routes
    fx = roster.fixture("B")
    ctx = roster.ctx("B")
    for route in ("literal", "hilbert-persistence"):
        cert = certify_nodal(ctx, fx.points[:1], route=route)
        assert not cert.passed, route


def test_certify_fails_on_a_worse_singularity():
    # cusp-like point: singular but with a degenerate Hessian
    f = parse_polynomial("x0^3 + x1^2*x3 + x2^2*x3", 3)
    ctx = JacobianContext(f, FieldConfig.prime_pair())
    cert = certify_nodal(ctx, (parse_point("[0 : 0 : 0 : 1]", 3),))
    assert not cert.passed
    assert "rank" in cert.reason


def test_certify_fails_on_dimension_mismatch(roster):
    cert = certify_nodal(roster.ctx("A"), (parse_point("[1 : 0 : 0 : 0 : 0]", 4),))
    assert not cert.passed


def test_certify_smooth_literal_on_fermat_quintic():
    ctx = JacobianContext(fermat(3, 5).f, FieldConfig.prime_pair())
    cert = certify_nodal(ctx, ())
    assert cert.verdict == "Smooth"


def test_certify_declines_infeasible_sizes_honestly():
    fx = one_node(5, 6, 808)
    ctx = JacobianContext(fx.f, FieldConfig.prime_pair())
    cert = certify_nodal(ctx, fx.points)
    assert not cert.passed
    assert cert.verdict.startswith("Failed")
    assert "feasible size cap" in cert.reason


def test_local_checks_work_at_scale_without_global_count():
    # the per-point analysis stays exact and fast even where the global
    # certificate is out of reach
    fx = one_node(5, 6, 808)
    assert is_singular_at(fx.f, fx.points[0])
    assert hessian_rank_at(fx.f, fx.points[0]) == 5


def test_multi_node_points_are_distinct_unit_points():
    fx = multi_node(3, 4, 2, 202)
    assert len(set(fx.points)) == 2
    for pt in fx.points:
        assert sum(1 for c in pt.coords if c) == 1
