import random

import pytest
from hypothesis import given, settings, strategies as st

from squaresk.constructible import (
    NotLocallyClosedError,
    cf_complex,
    cf_on_distinguished_square,
    check_open_closed_exactness,
    compose_chain_maps,
    euler_from_homology,
    exactness_report,
    homology_dims,
    pullback_open,
    pushforward_closed,
    rank_f2,
)
from squaresk.semilinear import (
    CATALOG_CHI,
    SemilinearSet,
    catalog,
    difference,
    empty_square,
    euler_char,
    inclusion,
    intersection,
    not_locally_closed_example,
    random_closed_set,
    random_hyperplanes,
    random_open_set,
    union,
)

S = SemilinearSet
CAT = catalog()


def test_open_interval_has_zero_boundary():
    c = cf_complex(CAT["open_interval"])
    assert c.dims == [0, 1]
    assert homology_dims(c) == [0, 1]


def test_closed_interval_boundary():
    c = cf_complex(CAT["closed_interval"])
    assert c.dims == [2, 1]
    assert c.boundaries[1] == [[1], [1]]
    assert homology_dims(c) == [1, 0]


def test_square_boundary():
    c = cf_complex(CAT["square_boundary"])
    assert rank_f2(c.boundaries[1]) == 3
    assert homology_dims(c) == [1, 1]


@pytest.mark.parametrize("name", sorted(CATALOG_CHI))
def test_euler_from_homology(name):
    X = CAT[name]
    assert euler_from_homology(X) == euler_char(X) == CATALOG_CHI[name]


def test_not_locally_closed_rejected():
    with pytest.raises(NotLocallyClosedError) as exc:
        cf_complex(not_locally_closed_example())
    assert exc.value.witness is not None


def test_identity_pushforward():
    X = CAT["closed_square"]
    m = pushforward_closed(inclusion(X, X))
    for d in range(3):
        n = len(m.mat(d))
        assert m.mat(d) == [[int(r == c) for c in range(n)] for r in range(n)]


def test_point_into_interval():
    m = pushforward_closed(inclusion(S.point((0,)), CAT["closed_interval"]))
    assert m.mat(0) == [[1], [0]]


def test_open_interval_restriction():
    m = pullback_open(inclusion(CAT["open_interval"], CAT["closed_interval"]))
    assert m.mat(1) == [[1]]
    assert m.mat(0) == []  # no 0-cells in the open interval
    assert m.source.dims[0] == 2


def test_wrong_embedding_kind():
    with pytest.raises(ValueError):
        pushforward_closed(inclusion(CAT["open_interval"], CAT["closed_interval"]))
    with pytest.raises(ValueError):
        pullback_open(inclusion(S.point((0,)), CAT["closed_interval"]))


def test_exactness_examples():
    assert check_open_closed_exactness(CAT["closed_interval"], S.point((0,)))
    assert check_open_closed_exactness(CAT["closed_square"], CAT["square_boundary"])
    assert check_open_closed_exactness(CAT["closed_square"], S.empty(2))
    with pytest.raises(ValueError):
        exactness_report(CAT["closed_interval"], CAT["open_interval"])


def test_cf_on_complement_square():
    D = CAT["closed_interval"]
    sq = empty_square(inclusion(S.point((0,)), D))
    assert cf_on_distinguished_square(sq).ok


def test_cf_on_overlapping_square():
    D = S.interval(0, 3)
    C = S.interval(1, 3)
    B = S.interval(0, 2, True, False)
    A = intersection(B, C)
    sq = (inclusion(A, B), inclusion(A, C), inclusion(B, D), inclusion(C, D))
    assert cf_on_distinguished_square(sq).ok


def test_cf_rejects_non_distinguished():
    D = S.interval(0, 3)
    sq = (inclusion(S.empty(1), S.interval(0, 1, True, False)), inclusion(S.empty(1), S.interval(2, 3)),
          inclusion(S.interval(0, 1, True, False), D), inclusion(S.interval(2, 3), D))
    with pytest.raises(ValueError):
        cf_on_distinguished_square(sq)


def test_pushforward_functorial():
    X = CAT["closed_square"]
    C1 = CAT["square_boundary"]
    C0 = S.point((0, 0))
    p1 = pushforward_closed(inclusion(C0, C1), [X])
    p2 = pushforward_closed(inclusion(C1, X), [C0])
    p = pushforward_closed(inclusion(C0, X), [C1])
    assert compose_chain_maps(p2, p1).mats == p.mats


def test_pullback_functorial():
    X = S.box([(0, 2, True, True), (0, 2, True, True)])
    U1 = S.box([(0, 2, False, True), (0, 2, True, True)])
    U0 = S.box([(0, 2, False, False), (0, 2, False, True)])
    r1 = pullback_open(inclusion(U1, X), [U0])
    r0 = pullback_open(inclusion(U0, U1), [X])
    r = pullback_open(inclusion(U0, X), [U1])
    assert compose_chain_maps(r0, r1).mats == r.mats


# -- properties ---------------------------------------------------------------------------------

seeds = st.integers(0, 10**6).map(random.Random)


def lc_pair(rng):
    X = intersection(random_open_set(rng, 2), random_closed_set(rng, 2))
    C = intersection(X, random_closed_set(rng, 2))
    return X, C


@settings(max_examples=30)
@given(st.sampled_from(sorted(CAT)), seeds)
def test_homology_refinement_invariant(name, rng):
    X = CAT[name]
    extra = random_hyperplanes(rng, X.dim, 2)
    assert homology_dims(cf_complex(X, extra)) == homology_dims(cf_complex(X))


@settings(max_examples=30)
@given(seeds)
def test_boundary_squares_to_zero_and_chi(rng):
    X, _ = lc_pair(rng)
    c = cf_complex(X)
    for d in range(2, len(c.dims)):
        prod = [[sum(a & b for a, b in zip(r, col)) % 2 for col in zip(*c.boundaries[d])] for r in c.boundaries[d - 1]]
        assert not any(any(r) for r in prod)
    assert all(h >= 0 for h in homology_dims(c))
    assert euler_from_homology(X) == euler_char(X)


@settings(max_examples=30)
@given(seeds)
def test_random_exactness(rng):
    X, C = lc_pair(rng)
    assert check_open_closed_exactness(X, C)


@settings(max_examples=20)
@given(seeds)
def test_random_tilde_squares_give_pushouts(rng):
    D = intersection(random_open_set(rng, 2), random_closed_set(rng, 2))
    C = intersection(D, random_closed_set(rng, 2))
    B = union(difference(D, C), intersection(D, random_open_set(rng, 2)))
    A = intersection(B, C)
    sq = (inclusion(A, B), inclusion(A, C), inclusion(B, D), inclusion(C, D))
    assert cf_on_distinguished_square(sq).ok


def test_pushout_when_a_has_no_vertices():
    # A = (1,2) sits inside B = [0,3] minus {1, 2}, so CF_0(A) = 0
    D = S.interval(0, 3)
    C = S.interval(1, 2)
    B = difference(D, union(S.point((1,)), S.point((2,))))
    A = intersection(B, C)
    sq = (inclusion(A, B), inclusion(A, C), inclusion(B, D), inclusion(C, D))
    assert cf_on_distinguished_square(sq).ok
