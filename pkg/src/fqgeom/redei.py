"""Rédei polynomials of affine point sets and division of X^(q^n) - X by them.

Bivariate polynomials are kept as dense numpy arrays indexed [x_exp, y_exp];
the public view `by_x_degree` exposes only the nonzero X-slots, which for
graphs of F_q-linear maps are the q-powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeMismatch, DuplicatePoint, NonSplitting, NotMonic
from .fields import FieldCtx, vec_ops
from .linearized import LinPoly, sym_divrem, x_qn_minus_x


def _trim(row: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(row)
    return row[: nz[-1] + 1] if len(nz) else row[:0]


def _deg(row: np.ndarray) -> int:
    nz = np.flatnonzero(row)
    return int(nz[-1]) if len(nz) else -1


class BiPoly:
    """Polynomial in X with coefficients in F_{q^n}[Y]."""

    def __init__(self, ctx: FieldCtx, array: np.ndarray):
        self.ctx = ctx
        self.array = np.asarray(array, dtype=np.int64)

    @classmethod
    def from_dict(cls, ctx: FieldCtx, slots: dict[int, Sequence[int]]) -> "BiPoly":
        rows = max(slots, default=0) + 1
        cols = max((len(v) for v in slots.values()), default=1) or 1
        a = np.zeros((rows, cols), dtype=np.int64)
        for e, ys in slots.items():
            a[e, : len(ys)] = ys
        return cls(ctx, a)

    def coefficient(self, e: int) -> tuple[int, ...]:
        if e < 0 or e >= self.array.shape[0]:
            return ()
        return tuple(int(c) for c in _trim(self.array[e]))

    @property
    def by_x_degree(self) -> dict[int, tuple[int, ...]]:
        return {int(e): self.coefficient(int(e)) for e in np.flatnonzero(self.array.any(axis=1))}

    @property
    def degX(self) -> int | None:
        nz = np.flatnonzero(self.array.any(axis=1))
        return int(nz[-1]) if len(nz) else None

    @property
    def is_zero(self) -> bool:
        return not self.array.any()

    def y_degree(self, e: int) -> int:
        """Degree in Y of the X^e coefficient (-1 if zero)."""
        if e < 0 or e >= self.array.shape[0]:
            return -1
        return _deg(self.array[e])

    @property
    def total_degree(self) -> int:
        return max((e + _deg(self.array[e]) for e in self.by_x_degree), default=-1)

    def specialize(self, y: int) -> list[int]:
        """Substitute Y = y; returns ascending X-coefficients."""
        ops = vec_ops(self.ctx)
        vals = [0] * (self.degX + 1 if self.degX is not None else 0)
        for e, ys in self.by_x_degree.items():
            vals[e] = int(ops.horner(ys, np.array([y]))[0])
        return vals

    def specialize_all(self) -> np.ndarray:
        """out[e, y] = coefficient of X^e after substituting Y = y, for every y."""
        ops = vec_ops(self.ctx)
        ys = np.arange(self.ctx.qn, dtype=np.int64)
        out = np.zeros((self.array.shape[0], self.ctx.qn), dtype=np.int64)
        for e, coeffs in self.by_x_degree.items():
            out[e] = ops.horner(coeffs, ys)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.by_x_degree == other.by_x_degree

    def to_json(self) -> dict[str, list[int]]:
        return {str(e): list(ys) for e, ys in sorted(self.by_x_degree.items())}


class RedeiPoly(BiPoly):
    def __init__(self, ctx: FieldCtx, array: np.ndarray, size: int):
        super().__init__(ctx, array)
        self.size = size

    @property
    def x_degree(self) -> int:
        return self.degX

    def sigma(self, i: int) -> tuple[int, ...]:
        """The i-th elementary symmetric polynomial: coefficient of X^(|S|-i)."""
        return self.coefficient(self.size - i)


def redei_build(ctx: FieldCtx, points: Iterable[tuple[int, int]]) -> RedeiPoly:
    """Expand prod (X - x_i Y + y_i) by multiplying in one factor at a time."""
    pts = [(int(x), int(y)) for x, y in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoint("point set contains duplicates")
    if not pts:
        raise ValueError("empty point set")
    ops = vec_ops(ctx)
    N = len(pts)
    A = np.zeros((N + 1, N + 1), dtype=np.int64)
    A[0, 0] = 1
    for step, (x, y) in enumerate(pts):
        top = step + 1
        cur = A[:top, :top]
        new = np.zeros((top + 1, top + 1), dtype=np.int64)
        new[1:, :top] = cur
        new[:top, :top] = ops.add(new[:top, :top], ops.scale(y, cur))
        new[:top, 1:] = ops.sub(new[:top, 1:], ops.scale(x, cur))
        A[: top + 1, : top + 1] = new
    return RedeiPoly(ctx, A, N)


def specialize(R: BiPoly, y: int) -> list[int]:
    return R.specialize(y)


def _synthetic_div(ctx: FieldCtx, coeffs: list[int], root: int) -> tuple[list[int], int]:
    """Divide by (X - root); returns (quotient, remainder)."""
    out = [0] * (len(coeffs) - 1)
    acc = 0
    for i in range(len(coeffs) - 1, 0, -1):
        acc = ctx.add(ctx.mul(acc, root), coeffs[i])
        out[i - 1] = acc
    rem = ctx.add(ctx.mul(acc, root), coeffs[0])
    return out, rem


def multiplicity_profile(R: BiPoly, y: int) -> dict[int, int]:
    """Root -> multiplicity for R(X, y), found by scanning the whole field."""
    ctx = R.ctx
    poly = R.specialize(y)
    deg = len(poly) - 1
    ops = vec_ops(ctx)
    values = ops.horner(poly, np.arange(ctx.qn))
    profile: dict[int, int] = {}
    for root in np.flatnonzero(values == 0):
        root = int(root)
        cur, mult = poly, 0
        while len(cur) > 1:
            quo, rem = _synthetic_div(ctx, cur, root)
            if rem:
                break
            cur, mult = quo, mult + 1
        profile[root] = mult
    if sum(profile.values()) != deg:
        raise NonSplitting(f"R(X,{y}) does not split over the field")
    return profile


def check_shape(R: RedeiPoly, k: int) -> bool:
    """Nonzero X-slots only at q^j (0 <= j <= k), monic of degree q^k, no constant term."""
    q = R.ctx.q
    allowed = {q**j for j in range(k + 1)}
    slots = R.by_x_degree
    return (
        R.degX == q**k
        and slots.get(q**k) == (1,)
        and set(slots) <= allowed
        and 0 not in slots
    )


def _bimul(ctx: FieldCtx, A: BiPoly, B: BiPoly) -> BiPoly:
    ops = vec_ops(ctx)
    ra, ca = A.array.shape
    rb, cb = B.array.shape
    out = np.zeros((ra + rb - 1, ca + cb - 1), dtype=np.int64)
    for ea, ya in A.by_x_degree.items():
        for eb, yb in B.by_x_degree.items():
            prod = ops.conv(ya, yb)
            seg = out[ea + eb, : len(prod)]
            out[ea + eb, : len(prod)] = ops.add(seg, prod)
    return BiPoly(ctx, out)


def _biadd(ctx: FieldCtx, A: BiPoly, B: BiPoly, negate_b: bool = False) -> BiPoly:
    ops = vec_ops(ctx)
    rows = max(A.array.shape[0], B.array.shape[0])
    cols = max(A.array.shape[1], B.array.shape[1])
    a = np.zeros((rows, cols), dtype=np.int64)
    b = np.zeros((rows, cols), dtype=np.int64)
    a[: A.array.shape[0], : A.array.shape[1]] = A.array
    b[: B.array.shape[0], : B.array.shape[1]] = B.array
    return BiPoly(ctx, ops.sub(a, b) if negate_b else ops.add(a, b))


def _x_qn_minus_x(ctx: FieldCtx) -> BiPoly:
    return BiPoly.from_dict(ctx, {ctx.qn: [1], 1: [ctx.neg(1)]})


@dataclass
class DivisionResult:
    R: BiPoly
    Q: BiPoly
    r: BiPoly
    H: BiPoly
    h_coeffs: dict[int, tuple[int, ...]]
    min_nonzero_h_index: int | None
    degX_H: int | None
    step_violations: list[str] = field(default_factory=list)

    @property
    def i0(self) -> int | None:
        return self.min_nonzero_h_index

    def sigma_star(self, i: int) -> tuple[int, ...]:
        return self.Q.coefficient(self.R.ctx.qn - self.R.degX - i)

    def rho(self, i: int) -> tuple[int, ...]:
        return self.r.coefficient(self.R.ctx.qn - i)

    def to_json(self) -> dict:
        return {
            "R": self.R.to_json(),
            "Q": self.Q.to_json(),
            "r": self.r.to_json(),
            "H": self.H.to_json(),
            "degX_H": self.degX_H,
            "i0": self.min_nonzero_h_index,
        }


def divide_xqn(R: BiPoly) -> DivisionResult:
    """Euclidean division of X^(q^n) - X by R over F_{q^n}[Y], one X-degree per step.

    After every step the degree invariants of the proof are re-checked: the new
    quotient coefficient sigma*_j has Y-degree <= j and the running remainder
    has total degree <= q^n.  Violations are recorded, not raised.
    """
    ctx = R.ctx
    ops = vec_ops(ctx)
    qn = ctx.qn
    K = R.degX
    if K is None or R.coefficient(K) != (1,):
        raise NotMonic("Rédei polynomial must be monic in X")
    if K > qn:
        raise DegreeMismatch("deg_X R exceeds q^n")
    ycols = qn + R.array.shape[1] + 1
    rem = np.zeros((qn + 1, ycols), dtype=np.int64)
    rem[qn, 0] = 1
    rem[1, 0] = ops.sub(rem[1, 0], 1)
    quot = np.zeros((qn - K + 1, ycols), dtype=np.int64)
    slots = [(e, np.array(ys, dtype=np.int64)) for e, ys in R.by_x_degree.items()]
    violations: list[str] = []
    for j in range(qn - K + 1):
        d = qn - j
        lc = _trim(rem[d])
        if not len(lc):
            continue
        quot[qn - K - j, : len(lc)] = lc
        if len(lc) - 1 > j:
            violations.append(f"step {j}: deg sigma*_{j} = {len(lc) - 1} > {j}")
        for e, ys in slots:
            prod = ops.conv(lc, ys)
            row = d - K + e
            rem[row, : len(prod)] = ops.sub(rem[row, : len(prod)], prod)
        if rem[d].any():
            violations.append(f"step {j}: leading term not cancelled")
        tot = BiPoly(ctx, rem).total_degree
        if tot > qn:
            violations.append(f"step {j}: total degree of remainder {tot} > {qn}")
    r = BiPoly(ctx, rem[:K] if K else rem[:0])
    Hn = ops.neg(rem[: max(K, 2)].copy())
    Hn[1, 0] = ops.sub(Hn[1, 0], 1)
    H = BiPoly(ctx, Hn)
    h_coeffs = {qn - e: ys for e, ys in H.by_x_degree.items()}
    degX_H = H.degX
    i0 = qn - degX_H if degX_H is not None else None
    return DivisionResult(R, BiPoly(ctx, quot), r, H, h_coeffs, i0, degX_H, violations)


def division_identity_holds(dr: DivisionResult) -> bool:
    """X^(q^n) - X == R Q + r and == R Q - H - X, coefficient by coefficient."""
    ctx = dr.R.ctx
    target = _x_qn_minus_x(ctx)
    RQ = _bimul(ctx, dr.R, dr.Q)
    first = _biadd(ctx, RQ, dr.r)
    X = BiPoly.from_dict(ctx, {1: [1]})
    second = _biadd(ctx, _biadd(ctx, RQ, dr.H, negate_b=True), X, negate_b=True)
    return first == target and second == target


def degree_ledger(dr: DivisionResult) -> dict[str, bool]:
    """Degree bounds on the division output; every value should be True."""
    ctx = dr.R.ctx
    qn = ctx.qn
    K = dr.R.degX
    R, Q, r, H = dr.R, dr.Q, dr.r, dr.H
    size = getattr(R, "size", K)
    return {
        "total_deg_Q": Q.total_degree <= qn,
        "total_deg_r": r.total_degree <= qn,
        "sigma_star": all(Q.y_degree(qn - K - i) <= i for i in range(qn - K + 1)),
        "rho": all(r.y_degree(qn - i) <= i for i in range(qn + 1)),
        "sigma": all(R.y_degree(size - i) <= i for i in range(size + 1)),
        "h": all(len(ys) - 1 <= i for i, ys in dr.h_coeffs.items()),
        # R = X (rank 0) is the one case where H = -X reaches deg_X R.
        "degX_H_below_degX_R": K == 1 or (dr.degX_H is not None and dr.degX_H <= K - 1),
        "steps": not dr.step_violations,
    }


def _to_linpoly(ctx: FieldCtx, dense: Sequence[int]) -> LinPoly | None:
    """Read a dense univariate polynomial as a linearized one; None if it is not."""
    coeffs: dict[int, int] = {}
    e, i = 1, 0
    for exp, c in enumerate(dense):
        if not c:
            continue
        while e < exp:
            e *= ctx.q
            i += 1
        if e != exp:
            return None
        coeffs[i] = int(c)
    top = max(coeffs, default=-1)
    return LinPoly(ctx, [coeffs.get(j, 0) for j in range(top + 1)])


def is_linearized(ctx: FieldCtx, dense: Sequence[int]) -> bool:
    return _to_linpoly(ctx, dense) is not None


def pointwise_ore_mismatches(dr: DivisionResult) -> list[int]:
    """Slopes y where H(X, y) differs from H'_y = -Htilde_y - X of Ore division."""
    ctx = dr.R.ctx
    Rv = dr.R.specialize_all()
    Hv = dr.H.specialize_all()
    F = x_qn_minus_x(ctx)
    X = LinPoly(ctx, [1])
    bad = []
    for y in range(ctx.qn):
        Ry = _to_linpoly(ctx, Rv[:, y])
        Hy = _to_linpoly(ctx, Hv[:, y])
        if Ry is None or Hy is None:
            bad.append(y)
            continue
        _, Ht = sym_divrem(F, Ry)
        if -Ht - X != Hy:
            bad.append(y)
    return bad


def degH_is_q_power(dr: DivisionResult, cross_check: bool = True) -> tuple[bool, int | None]:
    """Whether deg_X H is q^e for some e < log_q deg_X R; also returns e.

    With cross_check, the answer is only True if every specialisation of H
    also agrees with the Ore-division route.
    """
    q = dr.R.ctx.q
    d, e = dr.degX_H, 0
    if d is None:
        return False, None
    pw = 1
    while pw < d:
        pw *= q
        e += 1
    ok = pw == d and (d < dr.R.degX or dr.R.degX == 1)
    if ok and cross_check:
        ok = not pointwise_ore_mismatches(dr)
    return ok, (e if pw == d else None)
