"""Command-line driver: constructions, per-instance verification and grid sweeps.

    fqgeom verify-line --q 2 --n 3 --k 3 --random 500 --seed 42
    fqgeom verify-plane --construct vbvlak --q 2 --n 3 --k 3
    fqgeom redei --q 2 --n 2 --k 2 --trace

Exit status: 0 when every invariant held, 1 on any violation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import Iterator

from .errors import CapExceeded, FqGeomError, ParseError
from .fields import (
    FieldCtx,
    Subspace,
    all_subspaces,
    field_for,
    gaussian_binomial,
    prime_power,
    random_subspace,
    rank,
    span_elements,
)
from .linearized import LinPoly
from .linset import (
    LinearSetSpec,
    all_graph_specs,
    determined_directions,
    directions,
    from_graph,
    graph_affine_points,
    graph_instance_count,
    is_blocking_set,
    plane_report,
    points,
    random_graph_spec,
    slope_of,
    trace_construction,
    verify_hyperplane_bound,
    verify_line_bound,
    weight,
)
from .redei import (
    check_shape,
    degH_is_q_power,
    degree_ledger,
    divide_xqn,
    division_identity_holds,
    multiplicity_profile,
    pointwise_ore_mismatches,
    redei_build,
)
from . import spread

DEFAULT_CAP = 10**7


def instance_cap() -> int:
    raw = os.environ.get("LINSET_CAP")
    return int(raw) if raw else DEFAULT_CAP


def _hist(h: dict) -> dict[str, int]:
    return {str(k): v for k, v in h.items()}


# -- per-instance checks ---------------------------------------------------------


def redei_checks(spec: LinearSetSpec, ore: bool = True) -> dict:
    """Run the Rédei pipeline on the graph of spec and evaluate every check."""
    ctx, k = spec.ctx, spec.k
    R = redei_build(ctx, graph_affine_points(spec.V, spec.f))
    dr = divide_xqn(R)
    ledger = degree_ledger(dr)
    q_power, _ = degH_is_q_power(dr, cross_check=False)
    has_one = any(wp.weight == 1 for wp in points(spec))
    out = {
        "degX_H": dr.degX_H,
        "i0": dr.i0,
        "shape": check_shape(R, k),
        "identity": division_identity_holds(dr),
        "ledger": all(ledger.values()),
        "degH_q_power": q_power,
        "degH_matches_rank": dr.degX_H == ctx.q ** (k - 1) if has_one else None,
    }
    if ore:
        out["ore_mismatches"] = len(pointwise_ore_mismatches(dr))
    out["_R"] = R
    out["_dr"] = dr
    return out


def profile_checks(spec: LinearSetSpec, R) -> bool:
    """At the slope of every point, each root of R(X, y) has multiplicity q^wt."""
    ctx = spec.ctx
    for wp in points(spec):
        mults = set(multiplicity_profile(R, slope_of(ctx, wp.point)).values())
        if mults != {ctx.q**wp.weight}:
            return False
    return True


def cross_view_checks(spec: LinearSetSpec) -> bool:
    """The spread view of U gives the same points and weights as the direct one."""
    if spread.b_operator(spec.U) != {wp.point for wp in points(spec)}:
        return False
    return all(
        spread.weight_via_spread(spec.U, wp.point) == wp.weight == weight(spec, wp.point)
        for wp in points(spec)
    )


def line_instance(
    spec: LinearSetSpec, ore: bool = True, profiles: bool = False, cross_view: bool = False
) -> dict:
    """Size, directions, weights and the Rédei checks for a graph-form set."""
    rep = verify_line_bound(spec)
    ctx = spec.ctx
    dirs = directions(spec.V, spec.f)
    det = determined_directions(ctx, graph_affine_points(spec.V, spec.f)) if spec.k >= 1 else dirs
    rd = redei_checks(spec, ore=ore)
    R = rd.pop("_R")
    rd.pop("_dr")
    row = {
        "V": [x for (x,) in spec.V.basis],
        "f": list(spec.f.coeffs),
        "size": rep["size"],
        "directions": len(dirs),
        "weights": _hist(rep["weights"]),
        "has_weight_one": rep["has_weight_one"],
        "bound_ok": rep["bound_ok"],
        "congruence_ok": rep["congruence_ok"],
        # A single point determines no direction; the set is then one point.
        "directions_ok": dirs == det if len(spec.V) > 1 else rep["size"] == 1,
        "size_is_directions": rep["size"] == len(dirs),
        **rd,
    }
    if profiles:
        row["profiles_ok"] = profile_checks(spec, R)
    if cross_view:
        row["cross_view_ok"] = cross_view_checks(spec)
    row["passed"] = line_row_passed(row)
    return row


_LINE_FLAGS = (
    "congruence_ok",
    "directions_ok",
    "size_is_directions",
    "shape",
    "identity",
    "ledger",
    "degH_q_power",
    "profiles_ok",
    "cross_view_ok",
)


def line_row_passed(row: dict) -> bool:
    if row.get("bound_ok") is False or row.get("degH_matches_rank") is False:
        return False
    if row.get("ore_mismatches", 0):
        return False
    return all(row.get(key, True) for key in _LINE_FLAGS)


def plane_instance(spec: LinearSetSpec, blocking: bool = False) -> dict:
    rep = plane_report(spec)
    row = {
        "U": [list(v) for v in spec.U.basis],
        "size": rep["size"],
        "weights": _hist(rep["weights"]),
        "spectrum": _hist(rep["spectrum"]),
        "has_q1_secant": rep["has_q1_secant"],
        "bound": rep["bound"],
        "bound_ok": rep["bound_ok"],
        "congruence_ok": rep["congruence_ok"],
        "e_modulus": rep["e_modulus"],
    }
    if blocking:
        row["blocking"] = is_blocking_set(spec.ctx, [wp.point for wp in points(spec)])
    row["passed"] = rep["passed"]
    return row


# -- instance sources ------------------------------------------------------------


def cell_rng(seed: int, q: int, n: int, k: int) -> random.Random:
    return random.Random(f"{seed}:{q}:{n}:{k}")


def line_specs(ctx: FieldCtx, k: int, mode: str, count: int | None, seed: int | None, cap: int) -> Iterator[LinearSetSpec]:
    if mode == "exhaustive":
        total = graph_instance_count(ctx, k)
        if total > cap:
            raise CapExceeded(f"{total} instances exceed the cap of {cap}")
        yield from all_graph_specs(ctx, k)
    else:
        if count > cap:
            raise CapExceeded(f"{count} instances exceed the cap of {cap}")
        rng = cell_rng(seed, ctx.q, ctx.n, k)
        for _ in range(count):
            yield random_graph_spec(ctx, k, rng)


def plane_specs(ctx: FieldCtx, k: int, mode: str, count: int | None, seed: int | None, cap: int) -> Iterator[LinearSetSpec]:
    if mode == "exhaustive":
        total = gaussian_binomial(3 * ctx.n, k, ctx.q)
        if total > cap:
            raise CapExceeded(f"{total} instances exceed the cap of {cap}")
        for U in all_subspaces(ctx, k, arity=3):
            yield LinearSetSpec(U)
    else:
        if count > cap:
            raise CapExceeded(f"{count} instances exceed the cap of {cap}")
        rng = cell_rng(seed, ctx.q, ctx.n, k)
        for _ in range(count):
            yield LinearSetSpec(random_subspace(ctx, k, rng, arity=3))


# -- argument handling -----------------------------------------------------------


def int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _single(values: list[int] | None, name: str) -> int | None:
    if values is None:
        return None
    if len(values) != 1:
        raise ParseError(f"--{name} takes a single value for this command")
    return values[0]


def _mode(args) -> tuple[str, int | None]:
    if args.random is not None:
        if args.exhaustive:
            raise ParseError("--random and --exhaustive are exclusive")
        if args.seed is None:
            raise ParseError("--random needs an explicit --seed")
        return "random", args.random
    return "exhaustive", None


def _ks(args, n: int) -> list[int]:
    return args.k if args.k is not None else list(range(1, n + 1))


def _ctx(q: int, n: int, modulus) -> FieldCtx:
    return field_for(q, n, modulus)


def _params(args, **extra) -> dict:
    out = {}
    for key in ("q", "n", "k", "r", "seed", "random", "modulus"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    if getattr(args, "exhaustive", False):
        out["exhaustive"] = True
    if args.q is not None and len(args.q) == 1:
        out["p"], out["h"] = prime_power(args.q[0])
    out.update(extra)
    return out


def _summary(rows: list[dict]) -> dict:
    sizes = [r["size"] for r in rows if "size" in r]
    failed = [i for i, r in enumerate(rows) if not r.get("passed", True)]
    ones = [r["size"] for r in rows if r.get("has_weight_one") or r.get("weights", {}).get("1")]
    return {
        "instances": len(rows),
        "passed": len(rows) - len(failed),
        "failed": len(failed),
        "failed_indices": failed,
        "min_size": min(sizes) if sizes else None,
        "max_size": max(sizes) if sizes else None,
        "min_size_weight_one": min(ones) if ones else None,
    }


# -- commands --------------------------------------------------------------------


def cmd_verify_line(args) -> dict:
    mode, count = _mode(args)
    cap = instance_cap()
    rows = []
    for q in args.q:
        for n in args.n:
            ctx = _ctx(q, n, args.modulus)
            for k in _ks(args, n):
                if args.trace:
                    specs: Iterator = iter([trace_construction(ctx, k)])
                else:
                    specs = line_specs(ctx, k, mode, count, args.seed, cap)
                for spec in specs:
                    row = line_instance(spec, ore=not args.no_ore)
                    rows.append({"q": q, "n": n, "k": k, **row})
    return {"command": "verify-line", "params": _params(args, mode="trace" if args.trace else mode), "instances": rows}


def _construct(name: str, q: int, n: int | None, k: int | None, r: int | None) -> Subspace:
    if name == "subplane":
        return spread.construct_subplane(q)
    if name == "ambetant":
        return spread.construct_ambetant(q)
    if n is None or k is None:
        raise ParseError(f"construction {name} needs --n and --k")
    ctx = field_for(q, n)
    if name == "vbtrace":
        return spread.construct_vbtrace(ctx, k)
    if name == "vbvlak":
        return spread.construct_vbvlak(ctx, k)
    if name == "hyperplane":
        return spread.construct_hyperplane_example(ctx, k, r or 3)
    raise ParseError(f"unknown construction {name!r}")


def cmd_verify_plane(args) -> dict:
    if args.r not in (None, 3):
        raise ParseError("verify-plane works in PG(2, q^n) only (r = 3)")
    rows = []
    if args.construct:
        q = _single(args.q, "q")
        n = _single(args.n, "n")
        k = _single(args.k, "k")
        pi = _construct(args.construct, q, n, k, 3)
        spec = LinearSetSpec(pi)
        row = plane_instance(spec, blocking=args.blocking or spec.k == spec.ctx.n and spec.ctx.qn <= 64)
        replay = spread.replay_plane_projection(pi) if row["has_q1_secant"] else None
        if replay is not None:
            row["projection"] = replay
            row["passed"] = row["passed"] and replay["inequality_ok"] and replay["split_ok"]
        rows.append({"q": q, "n": spec.ctx.n, "k": spec.k, "construction": args.construct, **row})
        return {"command": "verify-plane", "params": _params(args, construct=args.construct), "instances": rows}
    mode, count = _mode(args)
    cap = instance_cap()
    for q in args.q:
        for n in args.n:
            ctx = _ctx(q, n, args.modulus)
            for k in _ks(args, n):
                for spec in plane_specs(ctx, k, mode, count, args.seed, cap):
                    blocking = args.blocking or k == n
                    rows.append({"q": q, "n": n, "k": k, **plane_instance(spec, blocking=blocking)})
    return {"command": "verify-plane", "params": _params(args, mode=mode), "instances": rows}


def cmd_redei(args) -> dict:
    q = _single(args.q, "q")
    n = _single(args.n, "n")
    k = _single(args.k, "k")
    if None in (q, n, k):
        raise ParseError("redei needs --q, --n and --k")
    ctx = _ctx(q, n, args.modulus)
    if args.trace:
        spec = trace_construction(ctx, k)
    elif args.map is not None:
        f = LinPoly(ctx, args.map)
        if args.basis is not None:
            V = span_elements(ctx, args.basis)
            if V.dim != k:
                raise ParseError(f"--basis spans dimension {V.dim}, not {k}")
        else:
            V = span_elements(ctx, ctx.qbasis[:k])
        spec = from_graph(V, f)
    else:
        raise ParseError("redei needs --trace or --map")
    rd = redei_checks(spec)
    dr = rd.pop("_dr")
    rd.pop("_R")
    row = {
        "V": [x for (x,) in spec.V.basis],
        "f": list(spec.f.coeffs),
        "points": [{"point": list(wp.point), "weight": wp.weight} for wp in points(spec)],
        **rd,
        "degree_ledger": degree_ledger(dr),
        "step_violations": dr.step_violations,
        "division": dr.to_json(),
    }
    row["passed"] = all(
        [rd["shape"], rd["identity"], rd["ledger"], rd["degH_q_power"], rd["degH_matches_rank"] is not False, rd["ore_mismatches"] == 0]
    )
    return {"command": "redei", "params": _params(args, trace=bool(args.trace)), "instances": [row]}


def cmd_construct(args) -> dict:
    q = _single(args.q, "q")
    n = _single(args.n, "n")
    k = _single(args.k, "k")
    pi = _construct(args.name, q, n, k, args.r)
    spec = LinearSetSpec(pi)
    pts = points(spec)
    row = {
        "construction": args.name,
        "arity": pi.arity,
        "dim": pi.dim,
        "basis": [list(v) for v in pi.basis],
        "subspace": pi.dumps(),
        "size": len(pts),
        "weights": _hist({w: sum(1 for wp in pts if wp.weight == w) for w in sorted({wp.weight for wp in pts})}),
    }
    if pi.arity in (3, 4) and args.name == "hyperplane":
        rep = verify_hyperplane_bound(spec)
        row.update(bound=rep["bound"], bound_ok=rep["bound_ok"])
        row["passed"] = rep["passed"]
    return {"command": "construct", "params": _params(args, name=args.name), "instances": [row]}


def _subfield_closure_sets(spec: LinearSetSpec) -> list[int]:
    """Degrees i > 1 (i | n) for which the F_{q^i}-span of U defines the same set."""
    ctx = spec.ctx
    found = []
    for i in range(2, ctx.n + 1):
        if ctx.n % i:
            continue
        basis = spread._subfield_basis(ctx, i)
        vecs = [ctx.vscale(b, u) for u in spec.U.basis for b in basis]
        wider = LinearSetSpec(Subspace.span(ctx, vecs, spec.r))
        if {wp.point for wp in points(wider)} == {wp.point for wp in points(spec)}:
            found.append(i)
    return found


def cmd_explore(args) -> dict:
    mode, count = _mode(args)
    cap = instance_cap()
    search = args.search
    rows, examined, matching = [], 0, 0
    for q in args.q:
        for n in args.n:
            ctx = _ctx(q, n, args.modulus)
            if search == "weights-ge-2":
                ks = args.k if args.k is not None else list(range(2, n + 1))
                for k in ks:
                    for spec in line_specs(ctx, k, mode, count, args.seed, cap):
                        examined += 1
                        if min(wp.weight for wp in points(spec)) < 2:
                            continue
                        matching += 1
                        if not _subfield_closure_sets(spec):
                            rows.append({"q": q, "n": n, "k": k, "V": [x for (x,) in spec.V.basis], "f": list(spec.f.coeffs), "weights": _hist(verify_line_bound(spec)["weights"])})
            elif search == "secants-without-q1":
                # Spanning sets with every secant 1 mod q, not all 1 mod q^2, and no (q+1)-secant.
                ks = args.k if args.k is not None else list(range(2, n))
                for k in ks:
                    for spec in plane_specs(ctx, k, mode, count, args.seed, cap):
                        if rank(ctx, spec.U.basis) < 3:
                            continue  # sets inside a line are outside the question
                        examined += 1
                        rep = plane_report(spec)
                        sizes = [s for s in rep["spectrum"] if s >= 2]
                        if rep["has_q1_secant"] or any((s - 1) % q for s in sizes):
                            continue
                        if all((s - 1) % (q * q) == 0 for s in sizes):
                            continue
                        matching += 1
                        rows.append(
                            {
                                "q": q,
                                "n": n,
                                "k": k,
                                "U": [list(v) for v in spec.U.basis],
                                "size": rep["size"],
                                "spectrum": _hist(rep["spectrum"]),
                                "below_plane_bound": rep["bound"] is not None and rep["size"] < rep["bound"],
                            }
                        )
            else:
                raise ParseError(f"unknown search {search!r}")
    return {
        "command": "explore",
        "params": _params(args, search=search, mode=mode),
        "instances": rows,
        "search": {
            "examined": examined,
            "matching_hypothesis": matching,
            "candidates": len(rows),
            "verdict": "none found in search space" if not rows else "candidates found",
        },
    }


def cmd_fields_info(args) -> dict:
    q = _single(args.q, "q")
    n = _single(args.n, "n") or 1
    ctx = _ctx(q, n, args.modulus)
    p, h = prime_power(q)
    row = {
        "p": p,
        "h": h,
        "n": n,
        "order": ctx.qn,
        "modulus": list(ctx.modulus),
        "generator": ctx.generator,
        "subfield": list(ctx.subfield),
        "qbasis": list(ctx.qbasis),
    }
    return {"command": "fields-info", "params": _params(args), "instances": [row]}


COMMANDS = {
    "verify-line": cmd_verify_line,
    "verify-plane": cmd_verify_plane,
    "redei": cmd_redei,
    "construct": cmd_construct,
    "explore": cmd_explore,
    "fields-info": cmd_fields_info,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int_list, required=True, help="field order q, or a comma list")
    common.add_argument("--n", type=int_list, help="extension degree n, or a comma list")
    common.add_argument("--k", type=int_list, help="rank k, or a comma list (default: all)")
    common.add_argument("--r", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--random", type=int, metavar="N")
    common.add_argument("--exhaustive", action="store_true")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--modulus", type=int_list, help="coefficients of the defining polynomial, constant term first")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="fqgeom", description="Workbench for F_q-linear sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-line", parents=[common], help="lower bound on linear sets of PG(1, q^n)")
    p.add_argument("--trace", action="store_true", help="check the trace construction instead of a sweep")
    p.add_argument("--no-ore", action="store_true", help="skip the pointwise Ore-division cross-check")

    p = sub.add_parser("verify-plane", parents=[common], help="lower bound on linear sets of PG(2, q^n)")
    p.add_argument("--construct", choices=("vbvlak", "subplane", "ambetant", "hyperplane"))
    p.add_argument("--blocking", action="store_true", help="classify blocking sets for every instance")

    p = sub.add_parser("redei", parents=[common], help="dump the Rédei division for one map")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--map", type=int_list, help="coefficients c_0,c_1,... of f = sum c_i X^(q^i)")
    p.add_argument("--basis", type=int_list, help="F_q-basis of V as field elements")

    p = sub.add_parser("construct", parents=[common], help="build one of the explicit subspaces")
    p.add_argument("name", choices=("vbtrace", "vbvlak", "hyperplane", "subplane", "ambetant"))

    p = sub.add_parser("explore", parents=[common], help="bounded searches around open questions")
    p.add_argument("--search", choices=("weights-ge-2", "secants-without-q1"), required=True)

    sub.add_parser("fields-info", parents=[common], help="describe the field model in use")
    return parser


# -- output ----------------------------------------------------------------------


def _tsv_cell(value) -> str:
    if isinstance(value, dict):
        return ";".join(f"{k}:{v}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return ",".join(_tsv_cell(v) for v in value)
    if value is None:
        return "-"
    return str(value)


def to_tsv(report: dict) -> str:
    """One row per instance; nested dicts other than histograms are left out."""
    rows = report["instances"]
    columns: list[str] = []
    for row in rows:
        for key, val in row.items():
            if key in columns:
                continue
            if isinstance(val, dict) and key not in ("weights", "spectrum"):
                continue
            columns.append(key)
    lines = ["\t".join(["index"] + columns)]
    for i, row in enumerate(rows):
        lines.append("\t".join([str(i)] + [_tsv_cell(row.get(c)) for c in columns]))
    return "\n".join(lines) + "\n"


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


_NEEDS_N = ("verify-line", "redei", "explore")


def run(argv: list[str] | None = None) -> tuple[int, dict | None, str, argparse.Namespace]:
    """Parse, execute and render; returns (exit code, report, rendered text, args)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in _NEEDS_N and args.n is None:
        parser.error("--n is required")
    if args.command == "verify-plane" and not args.construct and args.n is None:
        parser.error("--n is required")
    started = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except (FqGeomError, ValueError) as exc:
        return 2, None, f"error: {exc}\n", args
    report["summary"] = _summary(report["instances"])
    report["wall_clock"] = round(time.perf_counter() - started, 6)
    text = to_tsv(report) if args.format == "tsv" else to_json(report)
    code = 0 if report["summary"]["failed"] == 0 else 1
    return code, report, text, args


def main(argv: list[str] | None = None) -> int:
    code, _, text, args = run(argv)
    if code == 2:
        sys.stderr.write(text)
    elif args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
