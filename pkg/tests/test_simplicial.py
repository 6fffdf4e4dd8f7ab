from collections import defaultdict

import pytest

from squaresk import instances as inst
from squaresk.covering import build_cmin
from squaresk.simplicial import (
    SQUARE,
    TPLUS,
    ChainObject,
    CertificationError,
    check_functor_identities,
    check_roundtrip_transformations,
    check_simplicial_identities,
    compose_chain_morphisms,
    enumerate_chains,
    enumerate_staircases,
    enumerate_staircases_brute,
    functor_F,
    functor_F_morphism,
    functor_G,
    functor_H,
    functor_U,
    functor_U_morphism,
    is_valid_diagram,
    iter_chain_morphisms,
    morphism_violation,
    roundtrip_morphism,
)


@pytest.fixture(scope="module")
def cmin_partition():
    return build_cmin(inst.partition_assembler(), 2)


@pytest.fixture(scope="module")
def cmin_point3():
    return build_cmin(inst.point_assembler(), 3)


def test_n0_conventions(cmin_partition):
    S = cmin_partition
    sq = enumerate_staircases(S, 0, SQUARE)
    assert len(sq) == 1 and sq[0].entries == (((0, 0), S.O),)
    tp = enumerate_staircases(S, 0, TPLUS)
    assert len(tp) == len(S.ambient.objects)
    assert all(functor_U(d).n == 0 for d in tp)


def test_n1_tplus_are_maps_with_complement_columns(cmin_partition):
    S = cmin_partition
    ds = enumerate_staircases(S, 1, TPLUS)
    for d in ds:
        assert is_valid_diagram(S, d) is None
        assert d.h((-1, 0)) in S.M
    assert len({functor_U(d) for d in ds}) == len(enumerate_chains(S, 1))


def test_four_object_cmin_count_matches_brute_force(cmin_point3):
    S = cmin_point3
    assert len(S.ambient.objects) == 4
    for variant in (TPLUS, SQUARE):
        fast = enumerate_staircases(S, 2, variant)
        slow = enumerate_staircases_brute(S, 2, variant)
        assert fast == slow


def test_F_of_constant_chain(cmin_partition):
    S = cmin_partition
    c = S.ambient
    x = c.name_of[("U", "V")]
    ch = ChainObject((x, x, x), (c.identity(x), c.identity(x)))
    d = functor_F(S, ch)
    assert functor_U(d) == ch
    for i in range(3):
        for j in range(i, 3):
            assert d.entry((i, j)) == S.O


def test_F_complement_entry(cmin_partition):
    S = cmin_partition
    c = S.ambient
    u, uv = c.name_of[("U",)], c.name_of[("U", "V")]
    m = next(m for m in c.hom(u, uv) if m in S.M)
    d = functor_F(S, ChainObject((u, uv), (m,)))
    assert c.tuple_of[d.entry((0, 1))] == ("V",)


def test_F_three_chain_certified(cmin_point3):
    S = cmin_point3
    for ch in enumerate_chains(S, 3):
        d = functor_F(S, ch)
        assert is_valid_diagram(S, d) is None


def test_G_H_examples(cmin_partition):
    S = cmin_partition
    for s in enumerate_staircases(S, 2, SQUARE):
        assert functor_G(functor_H(S, s)) == s
    empty = enumerate_staircases(S, 0, SQUARE)[0]
    h = functor_H(S, empty)
    assert h.variant == TPLUS and h.entry((-1, 0)) == h.entry((0, 0))


def test_roundtrip_components_iso_on_complement_form(cmin_partition):
    S = cmin_partition
    c = S.ambient
    for ch in enumerate_chains(S, 2):
        m = roundtrip_morphism(S, functor_F(S, ch))
        assert morphism_violation(S, m) is None
        assert all(c.is_iso(x) for _, x in m.components)


def test_roundtrip_all_found_n2(cmin_partition):
    assert check_roundtrip_transformations(cmin_partition, 2).ok


def test_removed_square_localized():
    S = inst.removed_complement_square()
    assert check_roundtrip_transformations(S, 1).ok
    v = check_roundtrip_transformations(S, 2)["roundtrip_n2"]
    assert v.status == "fail"
    assert v.witness["position"] == [1, 1]


def test_wrong_complement_breaks_F():
    S = inst.wrong_complement_map()
    with pytest.raises(CertificationError) as exc:
        for ch in enumerate_chains(S, 1):
            functor_F(S, ch)
    assert exc.value.position is not None
    assert check_functor_identities(S, 1)["UF_n1"].status == "fail"


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_identities_inj2(n):
    S = inst.finite_sets_injections(2)
    rep = check_functor_identities(S, n)
    assert rep.ok
    assert check_simplicial_identities(S, n).ok


def _composable(morphisms):
    by_src = defaultdict(list)
    for m in morphisms:
        by_src[m.source].append(m)
    for f in morphisms:
        for g in by_src[f.target]:
            yield f, g


@pytest.mark.parametrize("n", [0, 1, 2])
def test_F_functorial_and_UF_on_morphisms(cmin_partition, n):
    S = cmin_partition
    ms = list(iter_chain_morphisms(S, n))
    for m in ms:
        Fm = functor_F_morphism(S, m)
        assert morphism_violation(S, Fm) is None
        assert functor_U_morphism(Fm) == m
    for f, g in _composable(ms):
        lhs = functor_F_morphism(S, compose_chain_morphisms(S, g, f))
        Ff, Fg = functor_F_morphism(S, f), functor_F_morphism(S, g)
        c = S.ambient
        comp = {p: c.comp[dict(Fg.components)[p], x] for p, x in Ff.components}
        assert dict(lhs.components) == comp


def test_n_bound_enforced(cmin_partition):
    with pytest.raises(ValueError):
        check_roundtrip_transformations(cmin_partition, 4)
