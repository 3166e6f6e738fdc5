import itertools
import random

import pytest

from fqgeom.errors import PointNotInSubspace, RankOutOfRange, UnsupportedQ
from fqgeom.fields import Subspace, field_for, random_subspace
from fqgeom.linset import (
    LinearSetSpec,
    all_graph_specs,
    all_points,
    max_linearity_modulus,
    points,
    secant_spectrum,
    verify_plane_bound,
    weight,
)
from fqgeom import spread


def test_spread_element_examples():
    ctx1 = field_for(2, 1)
    S = spread.spread_element(ctx1, (1, 0))
    assert S.as_subspace.dim == 1
    ctx = field_for(2, 2)
    S = spread.spread_element(ctx, (1, 0))
    assert S.base_point == (1, 0)
    assert S.as_subspace == Subspace.span(ctx, [(1, 0), (2, 0)], 2)
    assert len(S.as_subspace.nonzero()) == 3


@pytest.mark.parametrize("q,n,r", [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2), (3, 3, 2), (2, 3, 3)])
def test_spread_partitions_vectors(q, n, r):
    ctx = field_for(q, n)
    elements = [spread.spread_element(ctx, P).as_subspace for P in all_points(ctx, r)]
    assert all(S.dim == n for S in elements)
    owner = {}
    for i, S in enumerate(elements):
        for v in S.nonzero():
            assert v not in owner
            owner[v] = i
    assert len(owner) == ctx.qn**r - 1


def test_distinct_elements_meet_trivially_pg1_4():
    ctx = field_for(2, 2)
    elements = [spread.spread_element(ctx, P).as_subspace for P in all_points(ctx, 2)]
    for A, B in itertools.combinations(elements, 2):
        assert A.intersect(B).dim == 0


def test_b_operator_trivial_cases():
    ctx = field_for(2, 3)
    point = Subspace.span(ctx, [(3, 5)], 2)
    assert spread.b_operator(point) == {ctx.normalize((3, 5))}
    whole = spread.spread_element(ctx, (1, 4)).as_subspace
    assert spread.b_operator(whole) == {(1, 4)}
    assert spread.weight_via_spread(whole, (1, 4)) == 3
    assert spread.weight_via_spread(whole, (1, 0)) == 0


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2)])
def test_graph_views_agree_exhaustive(q, n):
    ctx = field_for(q, n)
    for k in range(1, n + 1):
        for spec in all_graph_specs(ctx, k):
            assert spread.b_operator(spec.U) == {wp.point for wp in points(spec)}
            for wp in points(spec):
                assert spread.weight_via_spread(spec.U, wp.point) == wp.weight


@pytest.mark.parametrize("q,n,k", [(2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 2), (3, 4, 3)])
def test_vbtrace_sizes(q, n, k):
    pi = spread.construct_vbtrace(field_for(q, n), k)
    assert pi.dim == k
    assert len(spread.b_operator(pi)) == q ** (k - 1) + 1


def test_vbtrace_rank_range():
    ctx = field_for(2, 3)
    for k in (1, 4):
        with pytest.raises(RankOutOfRange):
            spread.construct_vbtrace(ctx, k)


@pytest.mark.parametrize("q,n,k,size", [(2, 3, 3, 7), (3, 3, 3, 13), (2, 4, 4, 13), (2, 4, 3, 7), (3, 4, 4, 37)])
def test_vbvlak_sizes(q, n, k, size):
    pi = spread.construct_vbvlak(field_for(q, n), k)
    assert len(spread.b_operator(pi)) == size == q ** (k - 1) + q ** (k - 2) + 1
    spectrum = secant_spectrum(pi.ctx, sorted(spread.b_operator(pi)))
    assert spectrum.get(q + 1, 0) > 0


def test_vbvlak_modulus_q2():
    pi = spread.construct_vbvlak(field_for(2, 3), 3)
    spectrum = secant_spectrum(pi.ctx, sorted(spread.b_operator(pi)))
    assert max_linearity_modulus(spectrum, 2) == 1


def test_vbvlak_rank_range():
    with pytest.raises(RankOutOfRange):
        spread.construct_vbvlak(field_for(2, 3), 2)


def test_subplane_q2():
    pi = spread.construct_subplane(2)
    assert pi.dim == 5 and pi.ctx.n == 4
    spec = LinearSetSpec(pi)
    pts = points(spec)
    assert len(pts) == 21 < 2**4 + 2**3 + 1
    assert sum(1 for wp in pts if wp.weight == 1) == 16
    spectrum = secant_spectrum(pi.ctx, [wp.point for wp in pts])
    assert set(spectrum) == {1, 5}
    assert max_linearity_modulus(spectrum, 2) == 2
    rep = verify_plane_bound(spec)
    assert not rep["has_q1_secant"] and rep["bound_ok"] is None


def test_subplane_q3():
    pi = spread.construct_subplane(3)
    pts = points(LinearSetSpec(pi))
    assert len(pts) == 91
    assert sum(1 for wp in pts if wp.weight == 1) == 81


def test_subplane_is_the_subfield_plane():
    pi = spread.construct_subplane(2)
    ctx = pi.ctx
    sub = {x for x in ctx.elements() if ctx.frob(x, 2) == x}
    rational = {P for P in all_points(ctx, 3) if all(c in sub for c in P)}
    assert spread.b_operator(pi) == rational


def test_ambetant_q2():
    pieces = spread.ambetant_pieces(2)
    pi = pieces.pi
    assert pi.dim == 6 and pi.ctx.n == 9
    pts = points(LinearSetSpec(pi))
    assert len(pts) == 41 == 2**5 + 2**3 + 1
    spectrum = secant_spectrum(pi.ctx, [wp.point for wp in pts])
    assert 3 not in spectrum
    assert max_linearity_modulus(spectrum, 2) == 2
    assert 9 % 2 != 0
    line_part = points(LinearSetSpec(pieces.mu_prime))
    assert len(line_part) == 9
    assert sorted(wp.weight for wp in line_part) == [2] * 8 + [3]
    assert pieces.mu.dim == 6 and pieces.mu_prime.dim == 5


def test_ambetant_other_q():
    with pytest.raises(UnsupportedQ):
        spread.construct_ambetant(3)


def _line_target(ctx, P, Q):
    return spread.line_subspace(ctx, P, Q)


def test_projection_dimension_drop():
    ctx = field_for(2, 3)
    rng = random.Random(1)
    for _ in range(20):
        pi = random_subspace(ctx, 3, rng, arity=3)
        p1 = next(u for u in pi.nonzero() if spread.weight_via_spread(pi, u) == 1)
        w = next(
            t for t in [(0, 1, 0), (0, 0, 1), (1, 0, 0), (0, 1, 1), (1, 1, 0)]
            if t not in spread.spread_element(ctx, p1).as_subspace
        )
        target = next(
            _line_target(ctx, w, s) for s in all_points(ctx, 3)
            if _line_target(ctx, w, s).intersect(spread.spread_element(ctx, p1).as_subspace).dim == 0
            and _line_target(ctx, w, s).dim == 6
        )
        mu = spread.project_from_point(pi, p1, target)
        assert mu.dim == 2
        assert target.contains_subspace(mu)


def test_projection_errors():
    ctx = field_for(2, 3)
    pi = spread.construct_vbvlak(ctx, 3)
    target = _line_target(ctx, (0, 1, 0), (0, 0, 1))
    with pytest.raises(PointNotInSubspace):
        spread.project_from_point(pi, (5, 5, 5), target)
    with pytest.raises(ValueError):
        spread.project_from_point(pi, (0, 1, 0), target)


@pytest.mark.parametrize("q,n,k", [(2, 3, 3), (2, 4, 4), (3, 3, 3)])
def test_projection_replay_on_construction(q, n, k):
    pi = spread.construct_vbvlak(field_for(q, n), k)
    rep = spread.replay_plane_projection(pi)
    assert rep["size_pi"] == rep["size_pi_prime"] == q ** (k - 1) + q ** (k - 2) + 1
    assert rep["dim_mu"] == k - 1
    assert rep["p2_weight_in_mu"] == 1
    assert rep["split_ok"] and rep["mu_bound_ok"]


def test_projection_replay_random():
    ctx = field_for(2, 3)
    rng = random.Random(17)
    replayed = 0
    for _ in range(60):
        pi = random_subspace(ctx, rng.choice([3, 4, 5]), rng, arity=3)
        rep = spread.replay_plane_projection(pi)
        if rep is None:
            continue
        replayed += 1
        assert rep["inequality_ok"] and rep["split_ok"] and rep["mu_bound_ok"]
        assert rep["p2_weight_in_mu"] == 1
    assert replayed > 20


def test_hyperplane_example_r4():
    pi = spread.construct_hyperplane_example(field_for(2, 4), 4, 4)
    assert len(spread.b_operator(pi)) == 15 == 8 + 4 + 2 + 1


@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (2, 4)])
def test_b_operator_size_is_one_mod_q(q, n):
    ctx = field_for(q, n)
    rng = random.Random(q * n)
    for r in (2, 3):
        for _ in range(15):
            mu = random_subspace(ctx, rng.randrange(1, r * n + 1), rng, arity=r)
            assert len(spread.b_operator(mu)) % q == 1


def test_weight_views_on_plane_sets():
    ctx = field_for(3, 2)
    rng = random.Random(4)
    for _ in range(10):
        spec = LinearSetSpec(random_subspace(ctx, 3, rng, arity=3))
        for wp in points(spec):
            assert spread.weight_via_spread(spec.U, wp.point) == weight(spec, wp.point) == wp.weight
