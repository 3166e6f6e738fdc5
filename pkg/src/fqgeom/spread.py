"""Field reduction: the Desarguesian spread, the B-operator and explicit constructions.

A point of PG(rn-1, q) is a nonzero vector of F_{q^n}^r up to F_q-scalars, so
subspaces of PG(rn-1, q) are just `Subspace` objects and a spread element is
the F_q-span of all F_{q^n}-multiples of one vector.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PointNotInSubspace, RankOutOfRange, UnsupportedQ
from .fields import FieldCtx, Subspace, field_for, rank, scalar_span, solve
from .linset import ProjPoint, line_through, secant_lines

# Subspaces of PG(rn-1, q) are F_q-subspaces of F_{q^n}^r.
QSubspace = Subspace


@dataclass(frozen=True)
class SpreadElement:
    base_point: ProjPoint
    as_subspace: Subspace


def spread_element(ctx: FieldCtx, P) -> SpreadElement:
    P = ctx.normalize(tuple(P))
    return SpreadElement(P, scalar_span(ctx, P))


def b_operator(mu: Subspace) -> set[ProjPoint]:
    """Points of PG(r-1, q^n) whose spread element meets mu nontrivially."""
    ctx = mu.ctx
    return {ctx.normalize(u) for u in mu.nonzero()}


def weight_via_spread(mu: Subspace, P) -> int:
    return mu.intersect(spread_element(mu.ctx, P).as_subspace).dim


def _unit(r: int, i: int, value: int = 1) -> tuple:
    v = [0] * r
    v[i] = value
    return tuple(v)


def construct_vbtrace(ctx: FieldCtx, k: int) -> Subspace:
    """A (k-1)-space meeting the spread element of <(1,0)> in a (k-2)-space."""
    if not 2 <= k <= ctx.n:
        raise RankOutOfRange(f"need 2 <= k <= n, got k={k}, n={ctx.n}")
    inside = [(b, 0) for b in ctx.qbasis[: k - 1]]
    return Subspace.span(ctx, inside + [(0, 1)], 2)


def construct_hyperplane_example(ctx: FieldCtx, k: int, r: int) -> Subspace:
    """<mu, ell>: mu of dimension k-r+1 inside the spread element of e_1, ell the
    F_q-span of e_2..e_r.  B(ell) is the F_q-subgeometry of the hyperplane x_1 = 0,
    so that hyperplane meets the set in (q^(r-1)-1)/(q-1) spanning points."""
    if not r <= k <= ctx.n + r - 2 or r < 2:
        raise RankOutOfRange(f"need r <= k <= n + r - 2, got k={k}, r={r}, n={ctx.n}")
    mu = [_unit(r, 0, b) for b in ctx.qbasis[: k - r + 1]]
    ell = [_unit(r, i) for i in range(1, r)]
    return Subspace.span(ctx, mu + ell, r)


def construct_vbvlak(ctx: FieldCtx, k: int) -> Subspace:
    """<mu, ell> in PG(3n-1, q): mu a (k-3)-space of the spread element of
    <(1,0,0)>, ell a line of the (2n-1)-space of the line X_0 = 0 (skew from that
    point).  ell = <(0,1,0), (0,0,1)>_q meets every spread element in at most one
    point, so B(ell) is a (q+1)-secant."""
    if not 3 <= k <= ctx.n:
        raise RankOutOfRange(f"need 3 <= k <= n, got k={k}, n={ctx.n}")
    return construct_hyperplane_example(ctx, k, 3)


def _subfield_basis(ctx: FieldCtx, degree: int) -> list[int]:
    """An F_q-basis of the subfield F_{q^degree} of F_{q^n}."""
    sub = [x for x in ctx.elements() if ctx.frob(x, degree) == x]
    basis: list[int] = []
    span = Subspace.zero(ctx, 1)
    for x in sub:
        if (x,) not in span:
            basis.append(x)
            span = span.extend([(x,)])
        if len(basis) == degree:
            break
    return basis


def subgeometry(ctx: FieldCtx, degree: int, r: int) -> Subspace:
    """F_{q^degree}^r as an F_q-subspace of F_{q^n}^r."""
    basis = _subfield_basis(ctx, degree)
    return Subspace.span(ctx, [_unit(r, i, b) for i in range(r) for b in basis], r)


def construct_subplane(q: int) -> Subspace:
    """Hyperplane of F_{q^2}^3 inside F_{q^4}^3; B of it is the subplane PG(2, q^2)."""
    ctx = field_for(q, 4)
    full = subgeometry(ctx, 2, 3)
    return Subspace.span(ctx, full.basis[:-1], 3)


@dataclass(frozen=True)
class AmbetantPieces:
    mu: Subspace
    mu_prime: Subspace
    pi: Subspace


def ambetant_pieces(q: int) -> AmbetantPieces:
    """Subline PG(1, q^3) of PG(1, q^9) reduced to mu, its echelon-first hyperplane
    mu', embedded in the line X_2 = 0 of PG(2, q^9) and extended by (0,0,1)."""
    if q != 2:
        raise UnsupportedQ("the rank-6 example is only built for q = 2")
    ctx = field_for(q, 9)
    basis = _subfield_basis(ctx, 3)
    mu = Subspace.span(ctx, [(b, 0, 0) for b in basis] + [(0, b, 0) for b in basis], 3)
    mu_prime = Subspace.span(ctx, mu.basis[:-1], 3)
    pi = mu_prime.extend([(0, 0, 1)])
    return AmbetantPieces(mu, mu_prime, pi)


def construct_ambetant(q: int) -> Subspace:
    return ambetant_pieces(q).pi


def _fqn_basis(ctx: FieldCtx, S: Subspace) -> list[tuple]:
    """Vectors of S that are independent over F_{q^n} and span S over F_{q^n}."""
    chosen: list[tuple] = []
    for v in S.basis:
        if rank(ctx, chosen + [v]) > len(chosen):
            chosen.append(v)
    return chosen


def project_from_point(pi: Subspace, p1, target: Subspace) -> Subspace:
    """Project pi from the spread element through p1 onto target.

    target must be F_{q^n}-closed and complementary to <p1>_{q^n}; every x in
    pi splits uniquely as lambda*p1 + m with m in target, and m is the image.
    """
    ctx = pi.ctx
    p1 = tuple(p1)
    if p1 not in pi or not any(p1):
        raise PointNotInSubspace("p1 must be a nonzero vector of pi")
    tb = _fqn_basis(ctx, target)
    if target.dim != ctx.n * len(tb) or len(tb) != pi.arity - 1:
        raise ValueError("target must be an F_{q^n}-hyperplane given as an F_q-subspace")
    cols = [p1] + tb
    matrix = [[c[i] for c in cols] for i in range(pi.arity)]
    if rank(ctx, matrix) != pi.arity:
        raise ValueError("target meets the spread element of p1")
    images = []
    for x in pi.basis:
        coef = solve(ctx, matrix, list(x))
        m = tuple([0] * pi.arity)
        for c, t in zip(coef[1:], tb):
            m = ctx.vadd(m, ctx.vscale(c, t))
        images.append(m)
    return Subspace.span(ctx, images, pi.arity)


def replay_plane_projection(pi: Subspace) -> dict | None:
    """Replay the projection step of the plane bound on a concrete pi.

    Picks a (q+1)-secant T with a weight-one point B(p1), a second point
    B(p2) on T, a line M through B(p2) missing B(p1), and projects.  Returns
    None when no (q+1)-secant carries a weight-one point.
    """
    ctx = pi.ctx
    q = ctx.q
    pts = sorted(b_operator(pi))
    for L, members in sorted(secant_lines(ctx, pts).items()):
        if len(members) != q + 1:
            continue
        members = sorted(members)
        T = scalar_span(ctx, members[0]) + scalar_span(ctx, members[1])
        on_T = pi.intersect(T)
        p1 = next(
            (u for u in on_T.nonzero() if weight_via_spread(pi, u) == 1),
            None,
        )
        if p1 is None:
            continue
        P1 = ctx.normalize(p1)
        p2 = next(u for u in on_T.nonzero() if ctx.normalize(u) != P1)
        w = next(
            _unit(3, i) for i in range(3) if rank(ctx, [p1, p2, _unit(3, i)]) == 3
        )
        M = scalar_span(ctx, p2) + scalar_span(ctx, w)
        mu = project_from_point(pi, p1, M)
        pi_prime = mu.extend([p1])
        size_pi = len(pts)
        size_prime = len(b_operator(pi_prime))
        size_mu = len(b_operator(mu))
        k = pi.dim
        return {
            "secant": L,
            "dim_mu": mu.dim,
            "size_pi": size_pi,
            "size_pi_prime": size_prime,
            "size_mu": size_mu,
            "p2_weight_in_mu": weight_via_spread(mu, p2),
            "split_ok": size_prime == q ** (k - 1) + size_mu,
            "inequality_ok": size_pi >= size_prime,
            "mu_bound_ok": size_mu >= q ** (k - 2) + 1,
        }
    return None


def line_subspace(ctx: FieldCtx, P, Q) -> Subspace:
    """The (2n)-dimensional F_q-space of the line PQ of PG(2, q^n)."""
    return scalar_span(ctx, P) + scalar_span(ctx, Q)


__all__ = [
    "AmbetantPieces",
    "QSubspace",
    "SpreadElement",
    "ambetant_pieces",
    "b_operator",
    "construct_ambetant",
    "construct_hyperplane_example",
    "construct_subplane",
    "construct_vbtrace",
    "construct_vbvlak",
    "line_subspace",
    "line_through",
    "project_from_point",
    "replay_plane_projection",
    "spread_element",
    "subgeometry",
    "weight_via_spread",
]
