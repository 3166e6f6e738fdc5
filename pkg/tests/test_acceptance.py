"""End-to-end acceptance checks, one test per criterion, all at exact tolerance.

The line sweep (exhaustive small cells plus 500 seeded random maps per cell)
is built once and shared by the criteria that inspect it.
"""

import random

import pytest

from fqgeom import spread
from fqgeom.cli import cross_view_checks, line_instance, line_specs, plane_instance, plane_specs
from fqgeom.fields import field_for
from fqgeom.linearized import random_linpoly, sym_divrem, sym_mul
from fqgeom.linset import LinearSetSpec, all_graph_specs, points, secant_spectrum, trace_construction

SEED = 2024
RANDOM_PER_CELL = 500
EXHAUSTIVE_CELLS = [(2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 2), (2, 3, 3)]
RANDOM_CELLS = [(q, n, k) for q in (2, 3) for n in range(1, 5) for k in range(1, n + 1)]


@pytest.fixture(scope="session")
def line_sweep():
    rows = []
    for mode, cells in (("exhaustive", EXHAUSTIVE_CELLS), ("random", RANDOM_CELLS)):
        for q, n, k in cells:
            ctx = field_for(q, n)
            for spec in line_specs(ctx, k, mode, RANDOM_PER_CELL, SEED, 10**7):
                row = line_instance(spec, ore=True, profiles=n <= 3)
                rows.append({"q": q, "n": n, "k": k, "mode": mode, **row})
    return rows


@pytest.fixture(scope="session")
def plane_sweep():
    ctx = field_for(2, 3)
    rows = []
    for k in (3, 4, 5, 6):
        for spec in plane_specs(ctx, k, "random", 50, SEED, 10**7):
            rows.append(plane_instance(spec))
    return rows


def test_criterion_01_line_lower_bound(line_sweep, record_property):
    with_one = [r for r in line_sweep if r["has_weight_one"]]
    violations = [r for r in with_one if r["bound_ok"] is False]
    record_property("detail", f"{len(line_sweep)} instances, {len(with_one)} with a weight-one point, {len(violations)} violations")
    assert len(line_sweep) == 16 + 12 + 448 + 512 + 56 + RANDOM_PER_CELL * len(RANDOM_CELLS)
    assert violations == []


def test_criterion_02_trace_tightness(record_property):
    checked = 0
    for q in (2, 3):
        for n in range(2, 5):
            for k in range(2, n + 1):
                spec = trace_construction(field_for(q, n), k)
                assert len(points(spec)) == q ** (k - 1) + 1, (q, n, k)
                checked += 1
    record_property("detail", f"{checked} (q, n, k) cells tight")


def test_criterion_03_size_equals_directions(line_sweep, record_property):
    bad = [r for r in line_sweep if r["size"] != r["directions"] or not r["directions_ok"]]
    record_property("detail", f"{len(line_sweep)} instances, {len(bad)} mismatches")
    assert bad == []


def test_criterion_04_size_one_mod_q(line_sweep, plane_sweep, record_property):
    sizes = [(r["q"], r["size"]) for r in line_sweep]
    sizes += [(2, r["size"]) for r in plane_sweep]
    for q in (2, 3):
        for n in range(2, 5):
            for k in range(2, n + 1):
                ctx = field_for(q, n)
                sizes.append((q, len(points(trace_construction(ctx, k)))))
                if k >= 3:
                    sizes.append((q, len(spread.b_operator(spread.construct_vbvlak(ctx, k)))))
    for q in (2, 3):
        sizes.append((q, len(spread.b_operator(spread.construct_subplane(q)))))
    sizes.append((2, len(spread.b_operator(spread.construct_ambetant(2)))))
    sizes.append((2, len(spread.b_operator(spread.construct_hyperplane_example(field_for(2, 4), 4, 4)))))
    bad = [(q, s) for q, s in sizes if s % q != 1 % q]
    record_property("detail", f"{len(sizes)} sets, {len(bad)} off the congruence")
    assert bad == []
    assert all(r["congruence_ok"] for r in line_sweep + plane_sweep)


def test_criterion_05_redei_machinery(line_sweep, record_property):
    failures = {
        "shape": sum(not r["shape"] for r in line_sweep),
        "identity": sum(not r["identity"] for r in line_sweep),
        "ledger": sum(not r["ledger"] for r in line_sweep),
        "q_power": sum(not r["degH_q_power"] for r in line_sweep),
        "weight_one_degree": sum(r["degH_matches_rank"] is False for r in line_sweep),
        "pointwise": sum(r["ore_mismatches"] != 0 for r in line_sweep),
    }
    record_property("detail", f"{len(line_sweep)} instances, failures {failures}")
    assert not any(failures.values())


def test_criterion_06_multiplicity_profiles(line_sweep, record_property):
    reduced = [r for r in line_sweep if r["n"] <= 3]
    bad = [r for r in reduced if not r["profiles_ok"]]
    record_property("detail", f"{len(reduced)} instances with n <= 3, {len(bad)} failures")
    assert reduced and bad == []


def test_criterion_07_plane_bound(plane_sweep, record_property):
    for q in (2, 3):
        for n in (3, 4):
            for k in range(3, n + 1):
                pi = spread.construct_vbvlak(field_for(q, n), k)
                assert len(spread.b_operator(pi)) == q ** (k - 1) + q ** (k - 2) + 1, (q, n, k)
    with_secant = [r for r in plane_sweep if r["has_q1_secant"]]
    bad = [r for r in with_secant if r["bound_ok"] is False]
    record_property("detail", f"{len(plane_sweep)} random plane sets, {len(with_secant)} with a 3-secant, {len(bad)} below the bound")
    assert len(plane_sweep) == 200 and with_secant and bad == []


def test_criterion_08_small_plane_examples(record_property):
    sub = spread.construct_subplane(2)
    pts = points(LinearSetSpec(sub))
    spectrum = secant_spectrum(sub.ctx, [wp.point for wp in pts])
    assert len(pts) == 21
    assert sum(wp.weight == 1 for wp in pts) == 16
    assert set(spectrum) == {1, 5}
    amb = plane_instance(LinearSetSpec(spread.construct_ambetant(2)))
    assert amb["size"] == 41 == 2**5 + 2**3 + 1
    assert amb["e_modulus"] == 2
    assert "3" not in amb["spectrum"]
    record_property("detail", f"subplane 21 points, 16 of weight one; rank-6 set 41 points, spectrum {amb['spectrum']}")


def test_criterion_09_cross_view(record_property):
    total = 0
    for q in (2, 3):
        for n in (1, 2, 3):
            ctx = field_for(q, n)
            for k in range(1, n + 1):
                for spec in all_graph_specs(ctx, k):
                    assert cross_view_checks(spec), (q, n, k, spec.V.basis, spec.f.coeffs)
                    total += 1
    record_property("detail", f"{total} graph subspaces agree")


def test_criterion_10_ore_division(record_property):
    done = 0
    for q, n in ((2, 6), (3, 3)):
        ctx = field_for(q, n)
        rng = random.Random(f"{SEED}:{q}:{n}:divrem")
        while done < (500 if q == 2 else 1000):
            F = random_linpoly(ctx, rng, rng.randrange(1, 2 * n + 2))
            G = random_linpoly(ctx, rng, rng.randrange(1, n + 2))
            if G.is_zero:
                continue
            Q, H = sym_divrem(F, G)
            assert H.degree is None or H.degree < G.degree
            assert sym_mul(Q, G, reduce=False) + H == F
            for x in ctx.elements():
                assert F(x) == ctx.add(Q(G(x)), H(x))
            done += 1
    record_property("detail", f"{done} divisions checked coefficient-wise and pointwise")
