"""F_q-linear sets in PG(r-1, q^n): points, weights, directions, secants, bounds."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import AmbientTooLarge, ArityMismatch, NoWeightOnePoint, RankTooLarge
from .fields import (
    FieldCtx,
    Subspace,
    all_subspaces,
    gaussian_binomial,
    rank,
    random_subspace,
    scalar_span,
    trace_kernel_subspace,
)
from .linearized import LinPoly, interpolate, random_linpoly, trace_poly

ProjPoint = tuple  # normalised: first nonzero coordinate is 1


@dataclass(frozen=True)
class WeightedPoint:
    point: ProjPoint
    weight: int


@dataclass(frozen=True)
class DirectionSet:
    slopes: frozenset
    has_infinity: bool = False

    def __len__(self) -> int:
        return len(self.slopes) + int(self.has_infinity)


@dataclass
class LinearSetSpec:
    """L_U for an F_q-subspace U of F_{q^n}^r; V and f are kept when U is a graph."""

    U: Subspace
    V: Subspace | None = None
    f: LinPoly | None = None
    _points: list[WeightedPoint] | None = field(default=None, repr=False, compare=False)

    @property
    def ctx(self) -> FieldCtx:
        return self.U.ctx

    @property
    def r(self) -> int:
        return self.U.arity

    @property
    def k(self) -> int:
        return self.U.dim


def from_graph(V: Subspace, f: LinPoly) -> LinearSetSpec:
    ctx = V.ctx
    if V.arity != 1:
        raise ArityMismatch("V must be a subspace of F_{q^n}")
    if V.dim > ctx.n:
        raise RankTooLarge(f"rank {V.dim} exceeds n = {ctx.n}")
    U = Subspace.span(ctx, [(x, f(x)) for (x,) in V.basis], 2)
    if U.dim != V.dim:
        raise AssertionError("graph of a linear map must have the dimension of its domain")
    return LinearSetSpec(U, V, f)


def linear_set(ctx: FieldCtx, vectors: Iterable, arity: int | None = None) -> LinearSetSpec:
    return LinearSetSpec(Subspace.span(ctx, vectors, arity))


def trace_construction(ctx: FieldCtx, k: int) -> LinearSetSpec:
    """V = {x : Tr(b_i x) = 0, i = 1..n-k} with b_0 = 1, f = Tr."""
    alphas = list(ctx.qbasis[1 : ctx.n - k + 1])
    V = trace_kernel_subspace(ctx, alphas)
    return from_graph(V, trace_poly(ctx))


def points(spec: LinearSetSpec) -> list[WeightedPoint]:
    """Deduplicated points; each point is hit q^wt - 1 times by U*."""
    if spec._points is None:
        ctx = spec.ctx
        counts = Counter(ctx.normalize(u) for u in spec.U.nonzero())
        q = ctx.q
        out = []
        for P, c in sorted(counts.items()):
            w, s = 0, c + 1
            while s > 1:
                s //= q
                w += 1
            out.append(WeightedPoint(P, w))
        spec._points = out
    return spec._points


def point_set(spec: LinearSetSpec) -> set[ProjPoint]:
    return {wp.point for wp in points(spec)}


def weight_histogram(spec: LinearSetSpec) -> dict[int, int]:
    return dict(sorted(Counter(wp.weight for wp in points(spec)).items()))


def weight(spec: LinearSetSpec, P: Sequence[int]) -> int:
    """dim_q(<P>_{q^n} ∩ U); zero for points outside the set."""
    return spec.U.intersect(scalar_span(spec.ctx, P)).dim


def weight_by_lambda(V: Subspace, f: LinPoly, x0: int) -> int:
    """log_q of #{Λ : Λx0 ∈ V and f(Λx0) = Λ f(x0)}."""
    ctx = V.ctx
    fx0 = f(x0)
    count = sum(
        1
        for lam in range(ctx.qn)
        if (ctx.mul(lam, x0),) in V and f(ctx.mul(lam, x0)) == ctx.mul(lam, fx0)
    )
    w = 0
    while count > 1:
        count //= ctx.q
        w += 1
    return w


def slope_of(ctx: FieldCtx, P: ProjPoint) -> int:
    """Slope y of the direction <(0,1,y)> matching the point <(1,y)> of a graph set."""
    return ctx.div(P[1], P[0])


def directions(V: Subspace, f: LinPoly) -> DirectionSet:
    """W = {f(x)/x : x in V*}."""
    ctx = V.ctx
    return DirectionSet(frozenset(ctx.div(f(x), x) for x in V.elements() if x), False)


def determined_directions(ctx: FieldCtx, affine: Sequence[tuple[int, int]]) -> DirectionSet:
    """Slopes of the directions determined by pairs of an affine point set."""
    slopes = set()
    inf = False
    for (x1, y1), (x2, y2) in itertools.combinations(affine, 2):
        dx = ctx.sub(x1, x2)
        if dx:
            slopes.add(ctx.div(ctx.sub(y1, y2), dx))
        else:
            inf = True
    return DirectionSet(frozenset(slopes), inf)


def graph_affine_points(V: Subspace, f: LinPoly) -> list[tuple[int, int]]:
    return [(x, f(x)) for x in V.elements()]


def verify_line_bound(spec: LinearSetSpec) -> dict:
    if spec.r != 2:
        raise ArityMismatch("line bound needs a linear set of PG(1, q^n)")
    q, k = spec.ctx.q, spec.k
    size = len(points(spec))
    hist = weight_histogram(spec)
    has_one = 1 in hist
    # Rank one is a single point; the bound q^(k-1) + 1 needs k >= 2.
    bound = q ** (k - 1) + 1 if k >= 2 else 1
    congruence_ok = size % q == 1 % q
    bound_ok = size >= bound if has_one else None
    return {
        "size": size,
        "weights": hist,
        "has_weight_one": has_one,
        "bound": bound,
        "congruence_ok": congruence_ok,
        "bound_ok": bound_ok,
        "passed": congruence_ok and bound_ok is not False,
    }


def span_of_weight_one(spec: LinearSetSpec) -> bool:
    ctx = spec.ctx
    ones = {wp.point for wp in points(spec) if wp.weight == 1}
    if not ones:
        raise NoWeightOnePoint("linear set has no point of weight one")
    vecs = [u for u in spec.U.nonzero() if ctx.normalize(u) in ones]
    return Subspace.span(ctx, vecs, spec.r) == spec.U


# -- plane geometry --------------------------------------------------------------


def cross(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> tuple[int, int, int]:
    m, s = ctx.mul, ctx.sub
    return (
        s(m(a[1], b[2]), m(a[2], b[1])),
        s(m(a[2], b[0]), m(a[0], b[2])),
        s(m(a[0], b[1]), m(a[1], b[0])),
    )


def line_through(ctx: FieldCtx, P: Sequence[int], Q: Sequence[int]) -> tuple[int, int, int]:
    return ctx.normalize(cross(ctx, P, Q))


def secant_lines(ctx: FieldCtx, pts: Sequence[ProjPoint]) -> dict[tuple, frozenset]:
    """Every line containing at least two of the points, with the points it holds."""
    lines: dict[tuple, set] = {}
    pts = list(pts)
    for i, j in itertools.combinations(range(len(pts)), 2):
        L = line_through(ctx, pts[i], pts[j])
        members = lines.setdefault(L, set())
        members.add(i)
        members.add(j)
    return {L: frozenset(pts[i] for i in ms) for L, ms in lines.items()}


def secant_spectrum(ctx: FieldCtx, pts: Sequence[ProjPoint]) -> dict[int, int]:
    """Intersection size -> number of lines, over lines meeting the set.

    Tangent lines are counted without enumerating the plane: a point lies on
    q^n + 1 lines, and the ones that are not secants are tangents.
    """
    lines = secant_lines(ctx, pts)
    spectrum = Counter(len(ms) for ms in lines.values())
    through = Counter(P for ms in lines.values() for P in ms)
    tangents = sum(ctx.qn + 1 - through[P] for P in pts)
    if tangents:
        spectrum[1] = tangents
    return dict(sorted(spectrum.items()))


def _valuation(x: int, p: int) -> int:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def max_linearity_modulus(spectrum: dict[int, int], p: int) -> int | None:
    """Largest e with every secant size = 1 mod p^e; None if no line has two points."""
    sizes = [s for s in spectrum if s >= 2]
    if not sizes:
        return None
    return min(_valuation(s - 1, p) for s in sizes)


def _lines_through(ctx: FieldCtx, P: ProjPoint) -> Iterator[tuple]:
    """The q^n + 1 lines (as normalised dual vectors) through P."""
    # Two independent vectors orthogonal to P span the pencil.
    i = next(j for j, a in enumerate(P) if a)
    others = [j for j in range(3) if j != i]
    basis = []
    for j in others:
        v = [0, 0, 0]
        v[j] = 1
        v[i] = ctx.neg(ctx.div(P[j], P[i]))
        basis.append(tuple(v))
    a, b = basis
    yield ctx.normalize(b)
    for t in range(ctx.qn):
        yield ctx.normalize(ctx.vadd(a, ctx.vscale(t, b)))


def all_points(ctx: FieldCtx, r: int) -> Iterator[ProjPoint]:
    """Normalised points of PG(r-1, q^n)."""
    for lead in range(r):
        for tail in itertools.product(range(ctx.qn), repeat=r - lead - 1):
            yield (0,) * lead + (1,) + tail


def is_blocking_set(ctx: FieldCtx, pts: Sequence[ProjPoint]) -> dict:
    """Blocking iff every line of PG(2, q^n) meets the set; also trivial/small flags."""
    qn = ctx.qn
    met = set()
    for P in pts:
        met.update(_lines_through(ctx, P))
    total = qn * qn + qn + 1
    blocking = len(met) == total
    spectrum = secant_spectrum(ctx, pts) if len(pts) > 1 else {}
    trivial = max(spectrum, default=1) >= qn + 1
    return {
        "blocking": blocking,
        "trivial": blocking and trivial,
        "small": blocking and 2 * len(pts) < 3 * (qn + 1),
    }


def plane_report(spec: LinearSetSpec, spectrum: dict[int, int] | None = None) -> dict:
    if spec.r != 3:
        raise ArityMismatch("plane bound needs a linear set of PG(2, q^n)")
    ctx, q, k = spec.ctx, spec.ctx.q, spec.k
    pts = [wp.point for wp in points(spec)]
    if spectrum is None:
        spectrum = secant_spectrum(ctx, pts)
    size = len(pts)
    has_secant = spectrum.get(q + 1, 0) > 0
    # Rank two with a (q+1)-secant is that subline alone, so the bound starts at k = 3.
    bound = q ** (k - 1) + q ** (k - 2) + 1 if k >= 3 else None
    bound_ok = size >= bound if has_secant and bound is not None else None
    congruence_ok = size % q == 1 % q
    return {
        "size": size,
        "weights": weight_histogram(spec),
        "spectrum": spectrum,
        "has_q1_secant": has_secant,
        "bound": bound,
        "bound_ok": bound_ok,
        "congruence_ok": congruence_ok,
        "e_modulus": max_linearity_modulus(spectrum, ctx.p),
        "passed": congruence_ok and bound_ok is not False,
    }


def verify_plane_bound(spec: LinearSetSpec) -> dict:
    return plane_report(spec)


HYPERPLANE_CAP = 10**6


def _hyperplane_count(ctx: FieldCtx, r: int) -> int:
    return (ctx.qn**r - 1) // (ctx.qn - 1)


def verify_hyperplane_bound(spec: LinearSetSpec, r: int | None = None, cap: int = HYPERPLANE_CAP) -> dict:
    """Bound q^(k-1) + ... + q^(k-r+1) + 1, asserted when some hyperplane meets the
    set in exactly (q^(r-1)-1)/(q-1) points that span it."""
    ctx, q, k = spec.ctx, spec.ctx.q, spec.k
    r = spec.r if r is None else r
    if r != spec.r:
        raise ArityMismatch("r must match the arity of U")
    if r < 3 or r > 4:
        raise AmbientTooLarge(f"hyperplane enumeration is only supported for r in (3, 4), got {r}")
    target = (q ** (r - 1) - 1) // (q - 1)
    pts = [wp.point for wp in points(spec)]
    bound = sum(q ** (k - i) for i in range(1, r)) + 1
    if r == 3:
        rep = plane_report(spec)
        hypothesis = rep["has_q1_secant"]
    else:
        if _hyperplane_count(ctx, r) > cap:
            raise AmbientTooLarge("too many hyperplanes to enumerate")
        hypothesis = False
        for H in all_points(ctx, r):
            members = [P for P in pts if not ctx.dot(H, P)]
            if len(members) == target and rank(ctx, members) == r - 1:
                hypothesis = True
                break
    spans = rank(ctx, spec.U.basis) == r
    hypothesis = hypothesis and spans
    size = len(pts)
    bound_ok = size >= bound if hypothesis else None
    congruence_ok = size % q == 1 % q
    return {
        "size": size,
        "r": r,
        "spans": spans,
        "hypothesis": hypothesis,
        "bound": bound,
        "bound_ok": bound_ok,
        "congruence_ok": congruence_ok,
        "passed": congruence_ok and bound_ok is not False,
    }


# -- instance generators ---------------------------------------------------------


def all_graph_specs(ctx: FieldCtx, k: int) -> Iterator[LinearSetSpec]:
    """Every (V, f): V a k-dim subspace, f any F_q-linear map V -> F_{q^n}."""
    for V in all_subspaces(ctx, k):
        xs = [x for (x,) in V.basis]
        for ys in itertools.product(range(ctx.qn), repeat=k):
            yield from_graph(V, interpolate(ctx, xs, ys))


def graph_instance_count(ctx: FieldCtx, k: int) -> int:
    return gaussian_binomial(ctx.n, k, ctx.q) * ctx.qn**k


def random_graph_spec(ctx: FieldCtx, k: int, rng) -> LinearSetSpec:
    V = random_subspace(ctx, k, rng)
    return from_graph(V, random_linpoly(ctx, rng))
