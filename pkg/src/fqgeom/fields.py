"""Arithmetic in F_{q^n} with q = p^h, plus F_q-subspaces of F_{q^n}^r.

Elements are plain ints: the base-p digits of an element (little-endian) are
its coefficients with respect to the root of the defining modulus.  The prime
subfield is therefore encoded as 0..p-1, and integer equality is element
equality.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    ArityMismatch,
    DegreeMismatch,
    DependentConstraints,
    NotPrime,
    ReducibleModulus,
)

# Fields up to this order get log/exp tables; larger ones use polynomial arithmetic.
TABLE_LIMIT = 1 << 16

Vector = tuple  # tuple of ints, one per coordinate


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^h; raises NotPrime if q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    h, rest = 0, q
    while rest % p == 0:
        rest //= p
        h += 1
    if rest != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, h


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as ascending coefficient lists ------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b over F_p."""
    r = list(a)
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            shift = i - db
            for j, bj in enumerate(b):
                if bj:
                    r[shift + j] = (r[shift + j] - c * bj) % p
    return _trim([c % p for c in r[:db]])


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = len(poly) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_rem(poly, g, p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    # itertools.product is lexicographic with c_0 most significant, which is
    # exactly the low-degree-first comparison.
    for low in itertools.product(range(p), repeat=m):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("irreducible polynomials exist in every degree")


# -- generic Gaussian elimination over any field given by a FieldCtx -----------


def rref(ctx: "FieldCtx", rows: Iterable[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    if not mat:
        return [], pivots
    ncols = len(mat[0])
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[top], mat[piv] = mat[piv], mat[top]
        row = mat[top]
        if row[col] != 1:
            s = inv(row[col])
            row = mat[top] = [mul(s, x) for x in row]
        for i in range(len(mat)):
            if i != top and mat[i][col]:
                c = neg(mat[i][col])
                other = mat[i]
                mat[i] = [add(a, mul(c, b)) if b else a for a, b in zip(other, row)]
        pivots.append(col)
        top += 1
        if top == len(mat):
            break
    return mat[:top], pivots


def rank(ctx: "FieldCtx", rows: Iterable[Sequence[int]]) -> int:
    return len(rref(ctx, rows)[0])


def nullspace(ctx: "FieldCtx", rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, pivots = rref(ctx, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [0] * ncols
        x[fcol] = 1
        for row, pc in zip(red, pivots):
            x[pc] = ctx.neg(row[fcol])
        basis.append(x)
    return basis


def solve(ctx: "FieldCtx", rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    """One solution of M x = rhs, or None when the system is inconsistent."""
    ncols = len(rows[0])
    red, pivots = rref(ctx, [list(r) + [b] for r, b in zip(rows, rhs)])
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


class FieldCtx:
    """The field F_{q^n}, q = p^h, realised as F_p[X]/(modulus)."""

    def __init__(self, p: int, h: int, n: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if h < 1 or n < 1:
            raise DegreeMismatch("h and n must be positive")
        m = h * n
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise DegreeMismatch(f"modulus must be monic of degree {m}")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")
        self.p, self.h, self.n, self.m = p, h, n, m
        self.q = p**h
        self.qn = p**m
        self.modulus = tuple(modulus)
        self._pw = [p**i for i in range(m + 1)]
        self._setup_addition()
        self._setup_multiplication()
        self.subfield = tuple(x for x in range(self.qn) if self.frob(x, 1) == x)
        self._setup_coordinates()

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, h={self.h}, n={self.n}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (get_field, (self.p, self.h, self.n, self.modulus))

    # -- encoding ---------------------------------------------------------------

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        return sum((d % self.p) * w for d, w in zip(ds, self._pw))

    def elements(self) -> range:
        return range(self.qn)

    # -- additive structure ------------------------------------------------------

    def _setup_addition(self) -> None:
        p, m = self.p, self.m
        if p == 2:
            return
        half = (m + 1) // 2
        B = p**half
        table = [0] * (B * B)
        neg = [0] * B
        pw = self._pw
        for a in range(B):
            da = [(a // pw[i]) % p for i in range(half)]
            neg[a] = sum(((-d) % p) * pw[i] for i, d in enumerate(da))
            for b in range(B):
                db = [(b // pw[i]) % p for i in range(half)]
                table[a * B + b] = sum(((x + y) % p) * pw[i] for i, (x, y) in enumerate(zip(da, db)))
        self._B, self._add_tab, self._neg_tab = B, table, neg

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        B, t = self._B, self._add_tab
        ah, al = divmod(a, B)
        bh, bl = divmod(b, B)
        return t[al * B + bl] + B * t[ah * B + bh]

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        ah, al = divmod(a, self._B)
        return self._neg_tab[al] + self._B * self._neg_tab[ah]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scalar(self, c: int) -> int:
        """Image of the integer c in the prime field."""
        return c % self.p

    # -- multiplicative structure ------------------------------------------------

    def _polymul(self, a: int, b: int) -> int:
        p, m, mod = self.p, self.m, self.modulus
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(2 * m - 1, m - 1, -1):
            c = prod[i]
            if c:
                for j in range(m):
                    if mod[j]:
                        prod[i - m + j] = (prod[i - m + j] - c * mod[j]) % p
                prod[i] = 0
        return self.from_digits(prod[:m])

    def _polypow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._polymul(result, base)
            base = self._polymul(base, base)
            e >>= 1
        return result

    def _setup_multiplication(self) -> None:
        qn = self.qn
        order = qn - 1
        factors = _prime_factors(order)
        gen = 1
        for g in range(1, qn):
            if all(self._polypow(g, order // f) != 1 for f in factors):
                gen = g
                break
        self.generator = gen
        self._tables = qn <= TABLE_LIMIT
        if not self._tables:
            return
        exp = [0] * (2 * order + 1)
        log = [0] * qn
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._polymul(x, gen)
        for i in range(order, 2 * order + 1):
            exp[i] = exp[i - order]
        self._exp, self._log = exp, log

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._polymul(a, b)

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self._tables:
            return self._exp[(self.qn - 1 - self._log[a]) % (self.qn - 1)]
        return self._polypow(a, self.qn - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if not a:
            return 0 if e else 1
        if self._tables:
            return self._exp[(self._log[a] * e) % (self.qn - 1)]
        return self._polypow(a, e % (self.qn - 1))

    def log(self, a: int) -> int:
        """Discrete logarithm to base `generator` (table-backed fields only)."""
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.qn - 1)]

    # -- Frobenius, subfield, trace -----------------------------------------------

    def frob(self, x: int, e: int = 1) -> int:
        """x^(q^e)."""
        if not x:
            return 0
        return self.pow(x, pow(self.q, e % self.n, self.qn - 1) if self.qn > 2 else 1)

    def in_subfield(self, x: int) -> bool:
        return self.frob(x, 1) == x

    def trace(self, x: int) -> int:
        t, y = 0, x
        for _ in range(self.n):
            t = self.add(t, y)
            y = self.frob(y, 1)
        return t

    # -- F_q-coordinates ------------------------------------------------------------

    def _setup_coordinates(self) -> None:
        n = self.n
        if self.h == 1:
            # Polynomial basis: coordinates are the base-p digits themselves.
            self.qbasis = tuple(self._pw[:n])
            self._dual = None
            return
        g = self.generator
        basis = [self.pow(g, i) for i in range(n)]
        gram = [[self.trace(self.mul(bi, bj)) for bj in basis] for bi in basis]
        dual = []
        for i in range(n):
            rhs = [1 if j == i else 0 for j in range(n)]
            coeffs = solve(self, gram, rhs)
            d = 0
            for c, b in zip(coeffs, basis):
                d = self.add(d, self.mul(c, b))
            dual.append(d)
        self.qbasis = tuple(basis)
        self._dual = tuple(dual)
        if self.qn <= TABLE_LIMIT:
            self._coord_tab = [self._coords_slow(x) for x in range(self.qn)]

    def _coords_slow(self, x: int) -> tuple[int, ...]:
        return tuple(self.trace(self.mul(d, x)) for d in self._dual)

    def coords(self, x: int) -> tuple[int, ...]:
        """Coordinates of x over F_q with respect to `qbasis`."""
        if self._dual is None:
            return tuple(self.digits(x)[: self.n])
        if self.qn <= TABLE_LIMIT:
            return self._coord_tab[x]
        return self._coords_slow(x)

    def from_coords(self, cs: Sequence[int]) -> int:
        if self._dual is None:
            return self.from_digits(cs)
        x = 0
        for c, b in zip(cs, self.qbasis):
            if c:
                x = self.add(x, self.mul(c, b))
        return x

    # -- vectors over F_{q^n} -------------------------------------------------------

    def vadd(self, u: Vector, v: Vector) -> Vector:
        if self.p == 2:
            return tuple(a ^ b for a, b in zip(u, v))
        return tuple(self.add(a, b) for a, b in zip(u, v))

    def vscale(self, c: int, v: Vector) -> Vector:
        return tuple(self.mul(c, a) for a in v)

    def normalize(self, v: Vector) -> Vector:
        """Projective representative: first nonzero coordinate scaled to 1."""
        lead = next(a for a in v if a)
        if lead == 1:
            return tuple(v)
        s = self.inv(lead)
        return tuple(self.mul(s, a) for a in v)

    def dot(self, u: Vector, v: Vector) -> int:
        t = 0
        for a, b in zip(u, v):
            if a and b:
                t = self.add(t, self.mul(a, b))
        return t


@lru_cache(maxsize=None)
def get_field(p: int, h: int, n: int, modulus: tuple[int, ...] | None = None) -> FieldCtx:
    return FieldCtx(p, h, n, modulus)


def ctx_new(p: int, h: int, n: int, modulus_override: Sequence[int] | None = None) -> FieldCtx:
    return get_field(p, h, n, None if modulus_override is None else tuple(modulus_override))


def field_for(q: int, n: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    p, h = prime_power(q)
    return ctx_new(p, h, n, modulus)


# -- F_q-subspaces of F_{q^n}^r ---------------------------------------------------


class Subspace:
    """An F_q-subspace of F_{q^n}^r held in canonical echelon form.

    The canonical form is the reduced echelon form of the basis written in
    F_q-coordinates (r*n coordinates per vector), so two subspaces are equal
    iff their echelon rows are equal.
    """

    __slots__ = ("ctx", "arity", "rows", "pivots", "basis")

    def __init__(self, ctx: FieldCtx, arity: int, rows, pivots):
        self.ctx = ctx
        self.arity = arity
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)
        self.basis = tuple(self._lift(r) for r in self.rows)

    @classmethod
    def span(cls, ctx: FieldCtx, vectors: Iterable, arity: int | None = None) -> "Subspace":
        vecs = [as_vector(v) for v in vectors]
        if arity is None:
            if not vecs:
                raise ArityMismatch("arity is required for an empty spanning set")
            arity = len(vecs[0])
        if any(len(v) != arity for v in vecs):
            raise ArityMismatch("all vectors must share the same arity")
        rows, pivots = rref(ctx, [_flatten(ctx, v) for v in vecs])
        return cls(ctx, arity, rows, pivots)

    @classmethod
    def zero(cls, ctx: FieldCtx, arity: int) -> "Subspace":
        return cls(ctx, arity, [], [])

    @classmethod
    def full(cls, ctx: FieldCtx, arity: int) -> "Subspace":
        N = arity * ctx.n
        rows = [[1 if j == i else 0 for j in range(N)] for i in range(N)]
        return cls(ctx, arity, rows, range(N))

    def _lift(self, row) -> Vector:
        n, ctx = self.ctx.n, self.ctx
        return tuple(ctx.from_coords(row[i * n : (i + 1) * n]) for i in range(self.arity))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def proj_dim(self) -> int:
        return self.dim - 1

    def __len__(self) -> int:
        return self.ctx.q ** self.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ctx is other.ctx
            and self.arity == other.arity
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.arity, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(arity={self.arity}, dim={self.dim}, basis={list(self.basis)})"

    def _reduce(self, coords: list[int]) -> list[int]:
        ctx = self.ctx
        for row, pc in zip(self.rows, self.pivots):
            c = coords[pc]
            if c:
                c = ctx.neg(c)
                coords = [ctx.add(a, ctx.mul(c, b)) if b else a for a, b in zip(coords, row)]
        return coords

    def __contains__(self, v) -> bool:
        v = as_vector(v)
        if len(v) != self.arity:
            raise ArityMismatch("vector arity differs from subspace arity")
        return not any(self._reduce(_flatten(self.ctx, v)))

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.vectors())

    def vectors(self) -> list[Vector]:
        """All q^dim vectors, lexicographic in the coefficient tuple."""
        ctx = self.ctx
        out = [tuple([0] * self.arity)]
        for b in self.basis:
            multiples = [ctx.vscale(lam, b) for lam in ctx.subfield]
            out = [ctx.vadd(u, w) for u in out for w in multiples]
        return out

    def elements(self) -> list[int]:
        """Enumeration for arity-1 subspaces as bare field elements."""
        if self.arity != 1:
            raise ArityMismatch("elements() needs an arity-1 subspace")
        return [v[0] for v in self.vectors()]

    def nonzero(self) -> list[Vector]:
        return self.vectors()[1:]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.ctx, self.basis + other.basis, self.arity)

    def sum(self, other: "Subspace") -> "Subspace":
        return self + other

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection on the coordinate rows."""
        self._check(other)
        N = self.arity * self.ctx.n
        if not self.rows or not other.rows:
            return Subspace.zero(self.ctx, self.arity)
        block = [list(r) + list(r) for r in self.rows] + [list(r) + [0] * N for r in other.rows]
        red, pivots = rref(self.ctx, block)
        inter = [row[N:] for row, pc in zip(red, pivots) if pc >= N]
        rows, piv = rref(self.ctx, inter)
        return Subspace(self.ctx, self.arity, rows, piv)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(b in self for b in other.basis)

    def extend(self, vectors: Iterable) -> "Subspace":
        return Subspace.span(self.ctx, self.basis + tuple(as_vector(v) for v in vectors), self.arity)

    def _check(self, other: "Subspace") -> None:
        if other.arity != self.arity:
            raise ArityMismatch("subspaces have different arity")

    # -- text format ----------------------------------------------------------------

    def dumps(self) -> str:
        lines = [str(self.arity)]
        lines += [",".join(str(a) for a in v) for v in self.basis]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, ctx: FieldCtx, text: str) -> "Subspace":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        arity = int(lines[0])
        vecs = [tuple(int(t) for t in ln.split(",")) for ln in lines[1:]]
        return cls.span(ctx, vecs, arity)


def as_vector(v) -> Vector:
    if isinstance(v, int):
        return (v,)
    return tuple(v)


def _flatten(ctx: FieldCtx, v: Vector) -> list[int]:
    out: list[int] = []
    for a in v:
        out.extend(ctx.coords(a))
    return out


def span_elements(ctx: FieldCtx, elems: Iterable[int]) -> Subspace:
    """F_q-span of field elements, as an arity-1 subspace."""
    return Subspace.span(ctx, [(x,) for x in elems], 1)


def qbasis_subspace(ctx: FieldCtx, k: int) -> Subspace:
    """Span of the first k elements of the fixed F_q-basis of F_{q^n}."""
    return span_elements(ctx, ctx.qbasis[:k])


def gaussian_binomial(N: int, k: int, q: int) -> int:
    if k < 0 or k > N:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (N - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def all_subspaces(ctx: FieldCtx, k: int, arity: int = 1) -> Iterator[Subspace]:
    """Every k-dimensional F_q-subspace of F_{q^n}^arity, via echelon forms."""
    N = arity * ctx.n
    F = ctx.subfield
    for pivots in itertools.combinations(range(N), k):
        free = [[c for c in range(pv + 1, N) if c not in pivots] for pv in pivots]
        slots = [(i, c) for i, cols in enumerate(free) for c in cols]
        for fill in itertools.product(F, repeat=len(slots)):
            rows = [[0] * N for _ in range(k)]
            for i, pv in enumerate(pivots):
                rows[i][pv] = 1
            for (i, c), val in zip(slots, fill):
                rows[i][c] = val
            yield Subspace(ctx, arity, rows, pivots)


def random_subspace(ctx: FieldCtx, k: int, rng, arity: int = 1) -> Subspace:
    """Span of k uniformly random vectors, redrawn until they are independent."""
    while True:
        vecs = [tuple(rng.randrange(ctx.qn) for _ in range(arity)) for _ in range(k)]
        S = Subspace.span(ctx, vecs, arity)
        if S.dim == k:
            return S


def trace_kernel_subspace(ctx: FieldCtx, alphas: Sequence[int]) -> Subspace:
    """{x : Tr(alpha * x) = 0 for every alpha in alphas}."""
    n = ctx.n
    # Row i of the constraint matrix holds Tr(alpha_i * b_j) in F_q-coordinates.
    rows = [[ctx.trace(ctx.mul(a, b)) for b in ctx.qbasis] for a in alphas]
    kernel = nullspace(ctx, rows, n) if rows else [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    V = span_elements(ctx, [ctx.from_coords(c) for c in kernel])
    if V.dim != n - len(alphas):
        raise DependentConstraints(f"expected dimension {n - len(alphas)}, got {V.dim}")
    return V


class VecOps:
    """Elementwise field arithmetic on numpy int arrays (table-backed fields only).

    Sums of many elements go through base-p digits: integer sums of digits
    reduced mod p, then re-encoded.
    """

    def __init__(self, ctx: FieldCtx):
        if not ctx._tables:
            raise ValueError("vectorised arithmetic needs a table-backed field")
        import numpy as np

        self.np = np
        self.ctx = ctx
        self.p = ctx.p
        self.order = ctx.qn - 1
        self.exp = np.array(ctx._exp, dtype=np.int64)
        # log[0] is a dummy 0; products touching zero are masked afterwards.
        self.log = np.array(ctx._log, dtype=np.int64)
        self.digits = np.array([ctx.digits(x) for x in range(ctx.qn)], dtype=np.int64).reshape(ctx.qn, ctx.m)
        self.weights = np.array(ctx._pw[: ctx.m], dtype=np.int64)
        self.negtab = np.array([ctx.neg(x) for x in range(ctx.qn)], dtype=np.int64)

    def mul(self, a, b):
        np = self.np
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def scale(self, c: int, a):
        np = self.np
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros_like(a)
        out = self.exp[self.log[a] + self.ctx._log[c]]
        return np.where(a == 0, 0, out)

    def add(self, a, b):
        np = self.np
        if self.p == 2:
            return np.bitwise_xor(a, b)
        d = (self.digits[a] + self.digits[b]) % self.p
        return d @ self.weights

    def neg(self, a):
        return self.negtab[a] if self.p != 2 else a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def sum(self, a, axis: int = 0):
        """Field sum along an axis."""
        np = self.np
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis) if a.shape[axis] else np.zeros(
                a.shape[:axis] + a.shape[axis + 1 :], dtype=np.int64
            )
        d = self.digits[a].sum(axis=axis) % self.p
        return d @ self.weights

    def conv(self, a, b):
        """Product of two polynomials given as ascending coefficient arrays."""
        np = self.np
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = len(a), len(b)
        if not la or not lb:
            return np.zeros(0, dtype=np.int64)
        outer = self.mul(a[:, None], b[None, :])
        shifted = np.zeros((la, la + lb - 1), dtype=np.int64)
        rows = np.arange(la)[:, None]
        shifted[rows, rows + np.arange(lb)[None, :]] = outer
        return self.sum(shifted, axis=0)

    def horner(self, coeffs, xs):
        """Evaluate one polynomial (ascending coefficients) at every entry of xs."""
        np = self.np
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(list(coeffs)):
            acc = self.mul(acc, xs)
            if c:
                acc = self.add(acc, np.full_like(xs, c))
        return acc


@lru_cache(maxsize=None)
def vec_ops(ctx: FieldCtx) -> VecOps:
    return VecOps(ctx)


def scalar_span(ctx: FieldCtx, v) -> Subspace:
    """The F_q-subspace {lambda * v : lambda in F_{q^n}} (F_q-dimension n)."""
    v = as_vector(v)
    return Subspace.span(ctx, [ctx.vscale(b, v) for b in ctx.qbasis], len(v))
