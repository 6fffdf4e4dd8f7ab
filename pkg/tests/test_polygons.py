import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from squaresk.polygons import (
    PolyCover,
    PolyMorphism,
    RationalPolygon,
    area,
    area_respects_k0,
    chord_cut,
    check_polytope_square,
    complement_polytope,
    complement_square,
    compose,
    difference,
    disjoint_translation,
    intersection,
    inverse,
    is_almost_disjoint,
    is_cover,
    is_invertible,
    morphisms_equal,
    overlap_area,
    random_cover,
    same_region,
)

FIX = Path(__file__).resolve().parent.parent / "fixtures"
R = RationalPolygon.rect
H = Fraction(1, 2)
unit = R(0, 0, 1, 1)


def swap():
    left, right = R(0, 0, H, 1), R(H, 0, 1, 1)
    return PolyMorphism.make(unit, unit, [(left, (H, 0)), (right, (-H, 0))])


def test_area_examples():
    assert area(RationalPolygon([[(0, 0), (1, 0), (0, 1)]])) == H
    assert area(RationalPolygon()) == 0
    assert area(unit) == 1 and len(unit.triangles) == 2


def test_almost_disjoint():
    assert is_almost_disjoint(unit, R(1, 0, 2, 1))
    assert not is_almost_disjoint(unit, R(H, H, 2, 2))
    assert overlap_area(unit, R(H, H, 2, 2)) == Fraction(1, 4)


def test_chord_cut_is_a_cover():
    rng = random.Random(1)
    sq = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))]
    l, r = chord_cut(rng, sq)
    pieces = [RationalPolygon.from_convex(p) for p in (l, r) if len(p) >= 3]
    maps = tuple(PolyMorphism.inclusion(P, unit) for P in pieces)
    assert is_cover(PolyCover(unit, maps))


def test_false_cover_flagged():
    maps = (PolyMorphism.inclusion(R(0, 0, Fraction(3, 4), 1), unit), PolyMorphism.inclusion(R(H, 0, 1, 1), unit))
    assert not is_cover(PolyCover(unit, maps))


def test_four_quarters():
    qs = [R(x, y, x + H, y + H) for x in (0, H) for y in (0, H)]
    assert is_cover(PolyCover(unit, tuple(PolyMorphism.inclusion(q, unit) for q in qs)))
    assert all(area(q) == Fraction(1, 4) for q in qs)
    assert sum(map(area, qs)) == area(unit)


def test_translations_compose():
    f = PolyMorphism.inclusion(unit, unit.translate((1, 2)), (1, 2))
    g = PolyMorphism.inclusion(f.codomain, unit.translate((3, 5)), (2, 3))
    gf = compose(g, f)
    assert morphisms_equal(gf, PolyMorphism.inclusion(unit, g.codomain, (3, 5)))


def test_cut_and_swap():
    s = swap()
    assert is_invertible(s)
    assert morphisms_equal(inverse(s), s)
    assert morphisms_equal(compose(inverse(s), s), PolyMorphism.identity(unit))
    assert not morphisms_equal(s, PolyMorphism.identity(unit))


def test_cut_and_swap_fixture():
    m = PolyMorphism.from_json(json.loads((FIX / "cut_and_swap.json").read_text()))
    assert is_invertible(m)
    assert PolyMorphism.from_json(m.to_json()) == m


def test_small_square_not_invertible():
    assert not is_invertible(PolyMorphism.inclusion(R(0, 0, H, H), unit))
    with pytest.raises(ValueError):
        inverse(PolyMorphism.inclusion(R(0, 0, H, H), unit))


def test_not_composable():
    with pytest.raises(ValueError):
        compose(PolyMorphism.identity(unit), PolyMorphism.identity(R(0, 0, 2, 2)))


def test_complements():
    assert complement_polytope(PolyMorphism.identity(unit))[0].empty
    rest, inc = complement_polytope(PolyMorphism.inclusion(R(0, 0, H, 1), unit))
    assert same_region(rest, R(H, 0, 1, 1))
    rest, _ = complement_polytope(PolyMorphism.inclusion(R(0, 0, H, H), unit))
    assert area(rest) == Fraction(3, 4)
    assert same_region(difference(unit, rest), R(0, 0, H, H))
    with pytest.raises(ValueError):
        complement_polytope(PolyMorphism.inclusion(R(0, 0, 2, 2), unit))


def test_squares():
    P, Q, Rr = R(0, 0, H, H), unit, R(0, 0, 2, 1)
    assert check_polytope_square(complement_square(PolyMorphism.inclusion(P, Q)))
    e = RationalPolygon()
    drop = (PolyMorphism.make(e, P, []), PolyMorphism.make(e, e, []), PolyMorphism.inclusion(P, Q), PolyMorphism.make(e, Q, []))
    assert not check_polytope_square(drop)
    # paste the complement squares of P -> Q and Q -> R side by side
    s1 = complement_square(PolyMorphism.inclusion(P, Q))
    QP, RP = s1[2].domain, difference(Rr, P)
    s2 = (PolyMorphism.inclusion(QP, RP), s1[2], PolyMorphism.inclusion(RP, Rr), PolyMorphism.inclusion(Q, Rr))
    assert check_polytope_square(s2)
    pasted = (compose(s2[0], s1[0]), s1[1], s2[2], compose(s2[3], s1[3]))
    assert check_polytope_square(pasted)


def test_square_shape_error():
    e = RationalPolygon()
    bad = (PolyMorphism.make(e, unit, []), PolyMorphism.make(e, e, []), PolyMorphism.identity(R(0, 0, 2, 2)), PolyMorphism.make(e, unit, []))
    with pytest.raises(ValueError):
        check_polytope_square(bad)


def test_area_respects_k0_small():
    rep = area_respects_k0(seed=3, trials=10)
    assert rep.ok and all(v.checked == 10 for v in rep)


def test_disjoint_translation():
    v = disjoint_translation(unit, R(0, 0, 3, 1))
    moved = unit.translate(v)
    assert intersection(moved, R(0, 0, 3, 1)).empty
    assert moved.bbox()[0] > 3


# -- properties ---------------------------------------------------------------------------------

seeds = st.integers(0, 10**6).map(random.Random)


def scrambled(rng, base=None, cuts=3):
    """An invertible piecewise translation from a rectangle onto scattered pieces of it."""
    if base is None:
        D, _ = random_cover(rng, 0)
        base = [tuple(v) for v in (D.bbox()[:2], (D.bbox()[2], D.bbox()[1]), D.bbox()[2:], (D.bbox()[0], D.bbox()[3]))]
    convex = [list(base)]
    for _ in range(cuts):
        l, r = chord_cut(rng, convex.pop(rng.randrange(len(convex))))
        convex += [p for p in (l, r) if len(p) >= 3 and area(RationalPolygon.from_convex(p)) > 0]
    pieces = [RationalPolygon.from_convex(p) for p in convex]
    shifts = [(Fraction(10 * (k + 1)), Fraction(rng.randint(-3, 3))) for k in range(len(pieces))]
    img = RationalPolygon([t for P, v in zip(pieces, shifts) for t in P.translate(v).triangles])
    return PolyMorphism.make(RationalPolygon.from_convex(base), img, list(zip(pieces, shifts))), base


@settings(max_examples=25)
@given(seeds)
def test_scramble_invertible_and_area_preserving(rng):
    f, _ = scrambled(rng)
    f.validate()
    assert is_invertible(f)
    assert area(f.domain) == area(f.codomain)
    assert morphisms_equal(compose(inverse(f), f), PolyMorphism.identity(f.domain))
    assert morphisms_equal(compose(f, inverse(f)), PolyMorphism.identity(f.codomain))


@settings(max_examples=15)
@given(seeds)
def test_compose_associative(rng):
    f, base = scrambled(rng)
    k, _ = scrambled(rng, base)
    g = inverse(f)
    lhs = compose(k, compose(g, f))
    rhs = compose(compose(k, g), f)
    assert morphisms_equal(lhs, rhs)
    assert morphisms_equal(lhs, k)


@settings(max_examples=30)
@given(seeds, seeds)
def test_disjoint_translation_property(r1, r2):
    P, _ = random_cover(r1, 0)
    Q, _ = random_cover(r2, 0)
    Q = Q.translate((r2.randint(-5, 5), r2.randint(-5, 5)))
    v = disjoint_translation(P, Q)
    assert intersection(P.translate(v), Q).empty
    assert isinstance(v[0], Fraction) and isinstance(v[1], Fraction)
