"""Linearized polynomials sum c_i X^(q^i) over F_{q^n} and their symbolic algebra.

The symbolic product is composition.  `sym_mul` reduces modulo X^(q^n) - X by
default, which folds the coefficient of X^(q^(n+j)) onto X^(q^j) unchanged
(x^(q^n) = x for every x in the field).  Division works in the unreduced
ring, otherwise X^(q^n) - X itself would collapse to zero.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DivisorZero
from .fields import FieldCtx, Subspace, nullspace, rank, solve, span_elements


class LinPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | None:
        """Symbolic degree; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, LinPoly) and self.coeffs == other.coeffs and self.ctx is other.ctx

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"LinPoly({list(self.coeffs)})"

    def __call__(self, x: int) -> int:
        return eval_poly(self, x)

    def __add__(self, other: "LinPoly") -> "LinPoly":
        ctx = self.ctx
        size = max(len(self.coeffs), len(other.coeffs))
        return LinPoly(ctx, (ctx.add(self[i], other[i]) for i in range(size)))

    def __neg__(self) -> "LinPoly":
        return LinPoly(self.ctx, (self.ctx.neg(c) for c in self.coeffs))

    def __sub__(self, other: "LinPoly") -> "LinPoly":
        return self + (-other)

    def scale(self, a: int) -> "LinPoly":
        """Left scalar multiple a * L(X)."""
        return LinPoly(self.ctx, (self.ctx.mul(a, c) for c in self.coeffs))

    def reduce(self) -> "LinPoly":
        """Fold modulo X^(q^n) - X."""
        n, ctx = self.ctx.n, self.ctx
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i % n] = ctx.add(out[i % n], c)
        return LinPoly(ctx, out)

    def dense(self) -> dict[int, int]:
        """The ordinary polynomial as {exponent: coefficient}."""
        q = self.ctx.q
        return {q**i: c for i, c in enumerate(self.coeffs) if c}

    def dumps(self) -> str:
        return ",".join(str(c) for c in self.coeffs) or "0"

    @classmethod
    def loads(cls, ctx: FieldCtx, text: str) -> "LinPoly":
        return cls(ctx, (int(t) for t in text.split(",") if t.strip()))


def monomial(ctx: FieldCtx, i: int, c: int = 1) -> LinPoly:
    return LinPoly(ctx, [0] * i + [c])


def identity(ctx: FieldCtx) -> LinPoly:
    return LinPoly(ctx, [1])


def x_qn_minus_x(ctx: FieldCtx) -> LinPoly:
    """X^(q^n) - X, kept unreduced."""
    return LinPoly(ctx, [ctx.neg(1)] + [0] * (ctx.n - 1) + [1])


def trace_poly(ctx: FieldCtx) -> LinPoly:
    return LinPoly(ctx, [1] * ctx.n)


def eval_poly(L: LinPoly, x: int) -> int:
    if not x:
        return 0
    ctx = L.ctx
    total, y = 0, x
    for i, c in enumerate(L.coeffs):
        if c:
            total = ctx.add(total, ctx.mul(c, y))
        y = ctx.frob(y, 1)
    return total


def _matrix_of(L: LinPoly) -> list[list[int]]:
    """F_q-matrix of x -> L(x) in the field's fixed F_q-basis (column j = image of b_j)."""
    ctx = L.ctx
    cols = [ctx.coords(eval_poly(L, b)) for b in ctx.qbasis]
    return [[col[i] for col in cols] for i in range(ctx.n)]


def kernel(L: LinPoly) -> Subspace:
    ctx = L.ctx
    null = nullspace(ctx, _matrix_of(L), ctx.n)
    return span_elements(ctx, [ctx.from_coords(c) for c in null]) if null else Subspace.zero(ctx, 1)


def image_dim(L: LinPoly) -> int:
    return rank(L.ctx, _matrix_of(L))


def subspace_poly(V: Subspace) -> LinPoly:
    """The monic polynomial prod_{b in V} (X - b) as a linearized polynomial.

    Built one basis vector at a time: if L vanishes on W and c = L(b) != 0,
    then (X^q - c^(q-1) X) o L vanishes exactly on W + <b>.
    """
    ctx = V.ctx
    L = identity(ctx)
    for (b,) in V.basis:
        c = eval_poly(L, b)
        step = LinPoly(ctx, [ctx.neg(ctx.pow(c, ctx.q - 1)), 1])
        L = sym_mul(step, L, reduce=False)
    return L


def sym_mul(F: LinPoly, G: LinPoly, reduce: bool = True) -> LinPoly:
    """Composition F o G; coefficient k is sum_{i+j=k} F_i * G_j^(q^i)."""
    ctx = F.ctx
    if F.is_zero or G.is_zero:
        return LinPoly(ctx)
    out = [0] * (len(F.coeffs) + len(G.coeffs) - 1)
    for i, a in enumerate(F.coeffs):
        if not a:
            continue
        for j, b in enumerate(G.coeffs):
            if b:
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, ctx.frob(b, i)))
    P = LinPoly(ctx, out)
    return P.reduce() if reduce else P


def sym_divrem(F: LinPoly, G: LinPoly) -> tuple[LinPoly, LinPoly]:
    """Right division F = Q o G + H with deg H < deg G (unreduced ring).

    Cancelling the leading term a X^(q^d) of the running remainder against
    G's leading term b X^(q^e) uses c X^(q^(d-e)) with c = a / b^(q^(d-e)).
    """
    if G.is_zero:
        raise DivisorZero("symbolic division by the zero polynomial")
    ctx = F.ctx
    e, b = G.degree, G.coeffs[-1]
    rem = list(F.coeffs)
    quot = [0] * max(len(rem) - e, 0)
    for d in range(len(rem) - 1, e - 1, -1):
        a = rem[d]
        if not a:
            continue
        s = d - e
        c = ctx.div(a, ctx.frob(b, s))
        quot[s] = c
        for j, g in enumerate(G.coeffs):
            if g:
                rem[s + j] = ctx.sub(rem[s + j], ctx.mul(c, ctx.frob(g, s)))
    return LinPoly(ctx, quot), LinPoly(ctx, rem[:e] if e else [])


def interpolate(ctx: FieldCtx, xs: Sequence[int], ys: Sequence[int]) -> LinPoly:
    """A linearized polynomial of q-degree < n with L(xs[i]) = ys[i].

    xs must be F_q-independent; the map is extended by zero on a complement.
    """
    basis = list(xs)
    vals = list(ys)
    W = span_elements(ctx, basis) if basis else Subspace.zero(ctx, 1)
    for b in ctx.qbasis:
        if len(basis) == ctx.n:
            break
        if (b,) not in W:
            basis.append(b)
            vals.append(0)
            W = W.extend([(b,)])
    moore = [[ctx.frob(x, i) for i in range(ctx.n)] for x in basis]
    coeffs = solve(ctx, moore, vals)
    return LinPoly(ctx, coeffs)


def random_linpoly(ctx: FieldCtx, rng, degree_bound: int | None = None) -> LinPoly:
    """Uniform coefficients c_0..c_{m-1}, m = degree_bound (default n)."""
    m = ctx.n if degree_bound is None else degree_bound
    return LinPoly(ctx, [rng.randrange(ctx.qn) for _ in range(m)])
