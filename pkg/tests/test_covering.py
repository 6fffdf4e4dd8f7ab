from collections import Counter
from itertools import product

import pytest

from squaresk import instances as inst
from squaresk.covering import (
    CovCategory,
    build_cmin,
    check_B_conditions,
    check_C_conditions,
    is_assembler,
    validate_covering,
    wcat_compose,
    wcat_enumerate,
)
from squaresk.k0 import k0_invariants, k0_presentation_squares
from squaresk.squares import check_complement_axioms, validate_squares_category

FIXTURES = {name: make for name, make in inst.ASSEMBLERS.items()}


def test_trivial_covering_passes():
    assert validate_covering(inst.trivial_assembler()).ok


def test_missing_composite_family():
    A = inst.chain_assembler()
    fams = [(t, list(f)) for t, f in A.families if not (t == "X" and len(f) == 3)]
    B = CovCategory(A.base, "0", fams, A.coproducts)
    rep = validate_covering(B)
    assert not rep.ok and rep.witnesses


def test_missing_identity_family():
    A = inst.partition_assembler()
    fams = [(t, list(f)) for t, f in A.families if f != ("id_U",)]
    rep = validate_covering(CovCategory(A.base, "0", fams, A.coproducts))
    assert not rep.ok
    assert any("U" in str(w) for w in rep.witnesses)


def test_subsets_is_assembler():
    rep = is_assembler(inst.subsets_assembler(3))
    assert rep.ok, rep.to_json()


def test_non_mono_is_not_assembler():
    rep = is_assembler(inst.non_mono_assembler())
    assert rep["mono"].status == "fail" and rep["mono"].witness


def test_refinement_beyond_bound_is_inconclusive():
    rep = is_assembler(inst.subsets_assembler(3), refinement_bound=2)
    assert rep["refinement"].status == "inconclusive"
    assert rep.status == "inconclusive"


def test_c_conditions():
    assert check_C_conditions(inst.subsets_assembler(3)).ok
    assert check_C_conditions(inst.overlapping_cover())["C3"].status == "fail"
    assert check_C_conditions(inst.no_coproduct_assembler())["C1"].status == "fail"


def test_cmin_of_point():
    S = build_cmin(inst.point_assembler(), 2)
    c = S.ambient
    assert sorted(c.tuple_of[o] for o in c.objects) == [(), ("X",), ("X", "X")]
    inv = k0_invariants(k0_presentation_squares(S))
    assert (inv.rank, inv.torsion) == (1, ())


def test_cmin_witnesses_cover_relation():
    S = build_cmin(inst.partition_assembler(), 2)
    c = S.ambient
    X, U, V = (c.name_of[(x,)] for x in "XUV")
    uv = c.name_of[("U", "V")]
    # a distinguished square O -> [U,V] over the cover collapse [U,V] -> [X]
    collapse = [m for m in c.hom(uv, X) if c.is_cover_collapse(m)]
    assert collapse
    assert (S.o_to(uv), c.identity(S.O), collapse[0], S.o_to(X)) in S.distinguished
    p = k0_presentation_squares(S)
    vec = p.vector({X: 1, U: -1, V: -1})
    assert p.lattice().contains(vec)


def test_bound_one_horizontals():
    S = build_cmin(inst.partition_assembler(), 1)
    c = S.ambient
    for m in S.M:
        assert c.src(m) == S.O or m == c.identity(c.src(m))


def _oracle_w_morphisms(A, k):
    """Independent enumeration: index maps and components, covering condition read off A.families."""
    objs = {()}
    for n in range(1, k + 1):
        for t in product(sorted(A.nonempty), repeat=n):
            objs.add(tuple(sorted(t)))
    fams = {(t, tuple(sorted(f))) for t, f in A.families}
    c = A.base
    count = 0
    for I in objs:
        for J in objs:
            for alpha in product(range(len(J)), repeat=len(I)):
                for comps in product(*[c.hom(I[i], J[alpha[i]]) for i in range(len(I))]):
                    ok = all((J[x], tuple(sorted(comps[i] for i in range(len(I)) if alpha[i] == x))) in fams
                             for x in range(len(J)))
                    count += ok
    return len(objs), count


def test_wcat_examples():
    objs, mors = wcat_enumerate(inst.partition_assembler(), 0)
    assert objs == [()] and mors == [((), (), (), ())]
    objs, _ = wcat_enumerate(inst.point_assembler(), 2)
    assert objs == [(), ("X",), ("X", "X")]
    A = inst.partition_assembler()
    objs, mors = wcat_enumerate(A, 2)
    assert (len(objs), len(mors)) == _oracle_w_morphisms(A, 2)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_wcat_composition_is_associative(name):
    A = FIXTURES[name]()
    _, mors = wcat_enumerate(A, 2)
    by_src = {}
    for m in mors:
        by_src.setdefault(m[0], []).append(m)
    for f in mors:
        for g in by_src.get(f[1], []):
            for h in by_src.get(g[1], []):
                assert wcat_compose(A, h, wcat_compose(A, g, f)) == wcat_compose(A, wcat_compose(A, h, g), f)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_b_conditions_on_cmin(name):
    A = FIXTURES[name]()
    rep = check_B_conditions(build_cmin(A, 2), A)
    assert rep.ok, rep.to_json()


def test_b2_fails_when_only_isos_are_weak_equivalences():
    A = inst.partition_assembler()
    S = build_cmin(A, 2)
    c = S.ambient
    keep = {s for s in S.distinguished
            if not (s[0] == S.o_to(c.src(s[2])) and s[1] == c.identity(S.O) and not c.is_iso(s[2]))}
    rep = check_B_conditions(S.with_distinguished(keep), A)
    assert rep["B2"].status == "fail"


def test_b_conditions_sampling_is_deterministic():
    A = inst.chain_assembler()
    S = build_cmin(A, 3)
    r1 = check_B_conditions(S, A, samples=50, seed=3).to_json()
    r2 = check_B_conditions(S, A, samples=50, seed=3).to_json()
    assert r1 == r2
    assert any(v["mode"] == "sampled" for v in r1)


@pytest.mark.parametrize("bound", [1, 2, 3])
@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_cmin_passes_axioms(name, bound):
    A = FIXTURES[name]()
    assert check_C_conditions(A).ok
    S = build_cmin(A, bound)
    assert validate_squares_category(S).ok
    assert check_complement_axioms(S).ok


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_map_and_complement_cover_target(name):
    S = build_cmin(FIXTURES[name](), 2)
    c = S.ambient
    for m in S.M:
        obj, eps = S.complements[m]
        _, J, a, _ = c.data[m]
        _, J2, b, _ = c.data[eps]
        assert J == J2
        assert sorted(list(a) + list(b)) == list(range(len(J)))
        assert Counter(c.tuple_of[c.src(m)]) + Counter(c.tuple_of[obj]) == Counter(J)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_k0_stabilizes(name):
    A = FIXTURES[name]()
    invs = [k0_invariants(k0_presentation_squares(build_cmin(A, b))) for b in (2, 3)]
    assert invs[0] == invs[1]
