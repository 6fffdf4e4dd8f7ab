from itertools import product

import pytest
from hypothesis import given, strategies as st

from oracles import brute_is_mono, brute_pullback_apexes
from squaresk.cat import (
    FinCategory,
    StructuralError,
    all_pullbacks,
    comparison_isomorphism,
    is_initial,
    is_mono,
    is_strict_initial,
    pullback,
    table_category,
    validate_category,
)
from squaresk.instances import injections_category, non_mono_category, poset_category, subsets_assembler


def monoid(maps, k):
    """One-object category of the transformation monoid on range(k) generated by ``maps``."""
    ident = tuple(range(k))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in maps:
                b = tuple(g[x] for x in a)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    name = {e: "id_X" if e == ident else "m" + "".join(map(str, e)) for e in elems}
    arrows = {name[e]: ("X", "X") for e in elems}
    back = {v: k2 for k2, v in name.items()}

    def compose(g, f):
        return name[tuple(back[g][x] for x in back[f])]

    return table_category(["X"], arrows, compose)


@st.composite
def posets(draw):
    n = draw(st.integers(1, 5))
    objs = [f"p{i}" for i in range(n)]
    pairs = [(objs[i], objs[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return poset_category(objs, chosen)


@st.composite
def monoids(draw):
    k = draw(st.integers(1, 3))
    maps = draw(st.lists(st.tuples(*[st.integers(0, k - 1)] * k), min_size=1, max_size=2))
    return monoid(maps, k)


categories = st.one_of(posets(), monoids())


def test_monoid_table_is_a_category():
    assert validate_category(monoid([(1, 0)], 2)).ok


def test_wrong_source_is_structural():
    c = poset_category(["a", "b"], [("a", "b")])
    comp = dict(c.comp)
    comp["a_b", "id_a"] = "id_b"
    bad = FinCategory(c.objects, c.morphisms, c.identities, comp)
    rep = validate_category(bad)
    assert rep.structural and not rep.violations and not rep.ok


def test_dangling_id_is_structural():
    c = FinCategory(["a"], {"id_a": ("a", "a"), "f": ("a", "zz")}, {"a": "id_a"}, {("id_a", "id_a"): "id_a"})
    assert any("dangling" in s for s in validate_category(c).structural)


def test_associativity_violation_is_a_law_failure():
    # a.(a.a) = a.b = a but (a.a).a = b.a = b
    arrows = {"id_X": ("X", "X"), "a": ("X", "X"), "b": ("X", "X")}
    table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}

    def compose(g, f):
        if g == "id_X":
            return f
        if f == "id_X":
            return g
        return table[g, f]

    rep = validate_category(table_category(["X"], arrows, compose))
    assert not rep.structural and rep.violations
    assert rep.witnesses[0]["law"] == "associativity"


def test_three_object_poset_is_a_category():
    assert validate_category(poset_category(["a", "b", "c"], [("a", "b"), ("b", "c")])).ok


def test_is_mono_examples():
    c = non_mono_category()
    assert is_mono(c, "id_B")
    assert not is_mono(c, "w")
    p = poset_category(["a", "b", "c"], [("a", "b"), ("a", "c")])
    assert all(is_mono(p, m) for m in p.morphisms)


def test_initial_objects():
    p = poset_category(["0", "a", "b"], [("0", "a"), ("0", "b")])
    assert is_initial(p, "0")
    assert not is_initial(non_mono_category(), "A")
    discrete = poset_category(["x", "y"], [])
    assert not is_initial(discrete, "x") and not is_initial(discrete, "y")


def test_strict_initial():
    sub = subsets_assembler(2).base
    assert is_strict_initial(sub, "0")
    zero = poset_category(["z"], [])
    # a one-object category: the only object is both initial and terminal, and trivially strict
    assert is_strict_initial(zero, "z")
    # 0 <-> X isomorphic copies are allowed; a non-iso arrow into 0 is not
    arrows = {"id_0": ("0", "0"), "id_X": ("X", "X"), "0X": ("0", "X"), "X0": ("X", "0"), "e": ("X", "X")}

    def compose(g, f):
        if g.startswith("id_"):
            return f
        if f.startswith("id_"):
            return g
        src, dst = arrows[f][0], arrows[g][1]
        if src == "0":
            return "id_0" if dst == "0" else "0X"
        return "X0" if dst == "0" else "e"

    c = table_category(["0", "X"], arrows, compose)
    assert validate_category(c).ok
    assert is_initial(c, "0")
    # 0 is also terminal here, and X -> 0 is not an isomorphism since e != id_X
    assert not is_strict_initial(c, "0")


def test_pullback_examples():
    p = poset_category(["0", "a", "b", "ab"], [("0", "a"), ("0", "b"), ("a", "ab"), ("b", "ab")])
    cone = pullback(p, "id_ab", "id_ab")
    assert (cone.apex, cone.left, cone.right) == ("ab", "id_ab", "id_ab")
    assert pullback(p, "a_ab", "b_ab").apex == "0"
    no_meet = poset_category(["a", "b", "c"], [("a", "c"), ("b", "c")])
    assert pullback(no_meet, "a_c", "b_c") is None


def test_pullback_of_non_cospan_is_structural():
    p = poset_category(["a", "b", "c"], [("a", "b")])
    with pytest.raises(StructuralError):
        pullback(p, "a_b", "id_c")


@given(categories)
def test_is_mono_matches_brute_force(c):
    assert len(c.morphisms) <= 30
    for m in c.morphisms:
        assert is_mono(c, m) == brute_is_mono(c, m)


@given(categories)
def test_pullbacks_are_universal_and_unique(c):
    assert validate_category(c).ok
    for f, g in product(sorted(c.morphisms), repeat=2):
        if c.dst(f) != c.dst(g):
            continue
        cones = all_pullbacks(c, f, g)
        apexes = brute_pullback_apexes(c, f, g)
        assert sorted(k.apex for k in cones) == sorted(apexes)
        if cones:
            assert pullback(c, f, g) == cones[0]
        for k1, k2 in product(cones, repeat=2):
            assert comparison_isomorphism(c, k1, k2) is not None


def test_injections_pullback_is_intersection():
    c = injections_category(2)
    cone = pullback(c, "1>2:0", "1>2:1")
    assert cone.apex == "0"
