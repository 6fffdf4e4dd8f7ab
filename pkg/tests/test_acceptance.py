"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

The per-criterion verdicts are also collected by conftest.py and listed at the end
of the pytest run under "acceptance criteria".
"""

import json
import random
import time
from pathlib import Path

import pytest

from oracles import determinantal_invariants, sweep_chi, sympy_invariants
from squaresk import instances as inst
from squaresk.constructible import (
    NotLocallyClosedError,
    cf_complex,
    cf_on_distinguished_square,
    euler_from_homology,
    exactness_report,
    matmul_f2,
)
from squaresk.covering import build_cmin
from squaresk.k0 import diagonal, k0_compare_cmin, smith_normal_form
from squaresk.polygons import area_respects_k0
from squaresk.semilinear import (
    CATALOG_CHI,
    VARIANTS,
    SemilinearSet,
    catalog,
    difference,
    empty_square,
    euler_char,
    inclusion,
    intersection,
    is_closed_in,
    is_locally_closed,
    product,
    random_closed_set,
    random_hyperplanes,
    random_open_set,
    random_set,
    sample_axioms,
    translate,
    union,
)
from squaresk.simplicial import (
    check_functor_identities,
    check_roundtrip_transformations,
    check_simplicial_identities,
)
from squaresk.squares import check_complement_axioms, validate_squares_category

FIX = Path(__file__).resolve().parent.parent / "fixtures"
CAT = catalog()


def line(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.mark.criterion(1)
def test_criterion_1_euler_catalog():
    bad, slowest = [], 0.0
    for name, want in CATALOG_CHI.items():
        X = SemilinearSet.from_json(json.loads((FIX / f"{name}.json").read_text()))
        assert X == CAT[name]
        t = time.perf_counter()
        got = euler_char(X)
        slowest = max(slowest, time.perf_counter() - t)
        if not (got == want == sweep_chi(X)):
            bad.append((name, got, want))
    ok = not bad and slowest < 1.0
    line(1, ok, f"{len(CATALOG_CHI)} sets, slowest {slowest:.3f}s, mismatches {bad}")
    assert ok


@pytest.mark.criterion(2)
def test_criterion_2_chi_invariance():
    rng = random.Random(2024)
    refinements = 0
    for name, X in CAT.items():
        for _ in range(100):
            extra = random_hyperplanes(rng, X.dim, rng.randint(1, 3))
            assert euler_char(X, extra) == CATALOG_CHI[name], name
            refinements += 1
    for _ in range(100):
        X, Y = random_set(rng, 2), random_set(rng, 2)
        Yf = translate(Y, (10, 0)).dst
        assert euler_char(union(X, Yf)) == euler_char(X) + euler_char(Y)
        A = intersection(X, Y)
        assert euler_char(difference(X, A)) == euler_char(X) - euler_char(A)
        P, Q = random_set(rng, 1), random_set(rng, 1)
        assert euler_char(product(P, Q)) == euler_char(P) * euler_char(Q)
    line(2, True, f"{refinements} refinements, 100 random fixtures in R^2")


@pytest.mark.criterion(3)
def test_criterion_3_homology_lift():
    t = time.perf_counter()
    for name, X in CAT.items():
        assert is_locally_closed(X)
        c = cf_complex(X)
        for d in range(2, len(c.boundaries)):
            assert not any(any(r) for r in matmul_f2(c.boundaries[d - 1], c.boundaries[d])), name
        assert euler_from_homology(X) == CATALOG_CHI[name], name
    rejected = 0
    nlc = [SemilinearSet.from_json(json.loads((FIX / "not_locally_closed.json").read_text()))]
    rng = random.Random(3)
    while len(nlc) < 10:
        X = random_set(rng, 2)
        if not is_locally_closed(X):
            nlc.append(X)
    for X in nlc:
        with pytest.raises(NotLocallyClosedError) as exc:
            cf_complex(X)
        assert X.contains(exc.value.witness)
        rejected += 1
    elapsed = time.perf_counter() - t
    ok = elapsed < 5.0
    line(3, ok, f"{len(CAT)} catalog sets, {rejected} rejections with witnesses, {elapsed:.2f}s")
    assert ok


def _tilde_square(rng):
    D = intersection(random_open_set(rng, 2), random_closed_set(rng, 2))
    C = intersection(D, random_closed_set(rng, 2))
    B = union(difference(D, C), intersection(D, random_open_set(rng, 2)))
    A = intersection(B, C)
    return inclusion(A, B), inclusion(A, C), inclusion(B, D), inclusion(C, D)


@pytest.mark.criterion(4)
def test_criterion_4_exactness_and_pushouts():
    rng = random.Random(4)
    for _ in range(50):
        X = intersection(random_open_set(rng, 2), random_closed_set(rng, 2))
        C = intersection(X, random_closed_set(rng, 2))
        assert is_closed_in(C, X)
        v = exactness_report(X, C)
        assert v.ok, v.to_json()
    squares = [_tilde_square(rng) for _ in range(50)]
    for name in ("closed_interval", "closed_square", "square_annulus", "two_closed_intervals"):
        D = CAT[name]
        squares.append(empty_square(inclusion(intersection(D, random_closed_set(rng, D.dim)), D)))
    for sq in squares:
        v = cf_on_distinguished_square(sq)
        assert v.ok, v.to_json()
    line(4, True, f"50 exact sequences, {len(squares)} strict pushouts")


ASSEMBLERS = {k: f for k, f in inst.ASSEMBLERS.items() if len(f().base.objects) <= 6}


@pytest.mark.criterion(5)
def test_criterion_5_k0_equivalence():
    assert len(ASSEMBLERS) == len(inst.ASSEMBLERS) >= 5
    for name, make in ASSEMBLERS.items():
        for bound in (2, 3):
            r = k0_compare_cmin(make(), bound)
            assert r.ok and r.assembler == r.cmin, (name, bound, r)
    rng = random.Random(5)
    for k in range(200):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        m = [[rng.randint(-12, 12) for _ in range(cols)] for _ in range(rows)]
        D, _, _ = smith_normal_form(m)
        mine = [d for d in diagonal(D) if d]
        assert mine == sympy_invariants(m), m
        if rows <= 4 and cols <= 4:
            assert mine == determinantal_invariants(m), m
    line(5, True, f"{len(ASSEMBLERS)} assemblers at bounds 2 and 3, 200 SNF checks")


VIOLATING = {
    "A1": inst.idempotent_squares,
    "A2": inst.broken_complement,
    "A3": inst.thin_vertical,
    "A4": inst.non_pullback_square,
    "A5": inst.wrong_complement_map,
    "A7": inst.missing_square,
}


@pytest.mark.criterion(6)
def test_criterion_6_axiom_suites():
    built = 0
    for make in inst.ASSEMBLERS.values():
        for bound in (2, 3):
            S = build_cmin(make(), bound)
            assert validate_squares_category(S).ok
            rep = check_complement_axioms(S)
            assert rep.ok and all(v.mode == "exhaustive" for v in rep)
            built += 1
    draws = 0
    for v in VARIANTS:
        rep = sample_axioms(v, draws=500, seed=0)
        assert not rep.failed(), rep.to_json()
        draws += sum(x.checked for x in rep)
    for axiom, make in VIOLATING.items():
        rep = check_complement_axioms(make())
        assert rep[axiom].status == "fail" and rep[axiom].witness is not None, axiom
    line(6, True, f"{built} C^min categories, {draws} sampled diagrams, {len(VIOLATING)} violations named")


def _finite_fixtures():
    yield "inj2", inst.finite_sets_injections(2)
    yield "inj3", inst.finite_sets_injections(3)
    for name, make in inst.ASSEMBLERS.items():
        yield f"cmin:{name}", build_cmin(make(), 2)
    yield "cmin:point@3", build_cmin(inst.point_assembler(), 3)


@pytest.mark.criterion(7)
def test_criterion_7_simplicial_roundtrips():
    runs = 0
    for name, S in _finite_fixtures():
        for n in range(4):
            for rep in (check_functor_identities(S, n), check_simplicial_identities(S, n), check_roundtrip_transformations(S, n)):
                assert rep.ok, (name, n, rep.to_json())
            runs += 1
    line(7, True, f"{runs} (fixture, n) pairs with n <= 3")


@pytest.mark.criterion(8)
def test_criterion_8_polygon_invariant():
    t = time.perf_counter()
    rep = area_respects_k0(seed=7, trials=100)
    elapsed = time.perf_counter() - t
    ok = rep.ok and elapsed < 10.0 and all(v.checked == 100 for v in rep)
    line(8, ok, f"100 covers and squares, {elapsed:.2f}s, failed: {rep.failed()}")
    assert ok
