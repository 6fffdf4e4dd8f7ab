"""Mod 2 constructible-function complexes CF_*(X) of locally closed semilinear sets.

CF_i(X) has the indicators of the i-dimensional cells of X as basis and the differential
sends 1_C to the sum of the (i-1)-cells in the frontier of C taken inside X.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .report import Verdict
from .semilinear import (
    CellComplex,
    DefMap,
    SemilinearSet,
    cell_decomposition,
    compose,
    image,
    is_closed_embedding,
    is_closed_in,
    is_locally_closed,
    is_open_embedding,
    squares_instance_check,
)


class NotLocallyClosedError(ValueError):
    def __init__(self, witness, frontier_point):
        self.witness = witness
        self.frontier_point = frontier_point
        super().__init__(
            "set is not locally closed: the point "
            f"{[str(c) for c in witness]} lies in the closure of the frontier cell through "
            f"{[str(c) for c in frontier_point]}"
        )


# -- F2 linear algebra on 0/1 matrices ---------------------------------------------------------


def rank_f2(mat) -> int:
    rows = [int("".join(str(b) for b in r) or "0", 2) for r in mat]
    rank = 0
    while rows:
        piv = max(rows)
        rows.remove(piv)
        if piv == 0:
            break
        rank += 1
        top = piv.bit_length() - 1
        rows = [r ^ piv if r >> top & 1 else r for r in rows]
    return rank


def matmul_f2(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    cols = list(zip(*B))
    return [[sum(a & b for a, b in zip(row, col)) & 1 for col in cols] for row in A]


def _zeros(r, c):
    return [[0] * c for _ in range(r)]


@dataclass
class CFComplex:
    """Cell bases per degree (face indices of ``cx``) and boundary matrices over F2.

    ``boundaries[i]`` is the matrix of d_i : CF_i -> CF_(i-1), rows indexed by (i-1)-cells.
    """

    cx: CellComplex
    basis: list
    boundaries: list

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    def to_json(self) -> dict:
        return {"dims": self.dims, "boundaries": [[list(r) for r in m] for m in self.boundaries[1:]]}


def _complex_on(cx: CellComplex, cells: Iterable[int]) -> CFComplex:
    cells = set(cells)
    top = max((cx.faces[i].dim for i in cells), default=-1)
    basis = [sorted(i for i in cells if cx.faces[i].dim == d) for d in range(top + 1)]
    bds = [_zeros(0, len(basis[0])) if basis else []]
    for d in range(1, top + 1):
        pos = {f: r for r, f in enumerate(basis[d - 1])}
        m = _zeros(len(basis[d - 1]), len(basis[d]))
        for c, f in enumerate(basis[d]):
            for g in cx.below(f):
                if g in pos:
                    m[pos[g]][c] = 1
        bds.append(m)
    return CFComplex(cx, basis, bds)


def _lc_check(cx: CellComplex, inside: frozenset) -> None:
    fr = cx.closure_of(inside) - inside
    for g in sorted(fr):
        for e in cx.below(g):
            if e in inside:
                raise NotLocallyClosedError(cx.faces[e].point, cx.faces[g].point)


def _assert_d2(c: CFComplex) -> None:
    for d in range(2, len(c.boundaries)):
        sq = matmul_f2(c.boundaries[d - 1], c.boundaries[d])
        if any(any(r) for r in sq):
            raise RuntimeError(f"boundary squares to a nonzero map in degree {d}")


def cf_complex(X: SemilinearSet, extra: Iterable = ()) -> CFComplex:
    """CF_*(X) on the arrangement adapted to X (plus optional extra hyperplanes)."""
    cx = cell_decomposition([X], extra)
    _lc_check(cx, cx.members[0])
    c = _complex_on(cx, cx.members[0])
    _assert_d2(c)
    return c


def homology_dims(c: CFComplex) -> list[int]:
    n = c.dims
    ranks = [0] + [rank_f2(m) if m and m[0] else 0 for m in c.boundaries[1:]] + [0]
    return [n[i] - ranks[i] - ranks[i + 1] for i in range(len(n))]


def euler_from_homology(X: SemilinearSet, extra: Iterable = ()) -> int:
    return sum((-1) ** i * h for i, h in enumerate(homology_dims(cf_complex(X, extra))))


# -- chain maps ------------------------------------------------------------------------------------


def _dim(c: CFComplex, d: int) -> int:
    return c.dims[d] if 0 <= d < len(c.dims) else 0


def _bd(c: CFComplex, d: int):
    """d_d as a full (possibly empty) matrix."""
    if 1 <= d < len(c.boundaries):
        return c.boundaries[d]
    return _zeros(_dim(c, d - 1), _dim(c, d))


@dataclass
class ChainMapF2:
    source: CFComplex
    target: CFComplex
    mats: list

    @property
    def top(self) -> int:
        return max(len(self.source.dims), len(self.target.dims))

    def mat(self, d: int):
        if d < len(self.mats):
            return self.mats[d]
        return _zeros(_dim(self.target, d), _dim(self.source, d))

    def commutes(self) -> bool:
        s, t = self.source, self.target
        for d in range(1, self.top):
            lhs = matmul_f2(_bd(t, d), self.mat(d))
            rhs = matmul_f2(self.mat(d - 1), _bd(s, d))
            # a product through an empty inner dimension loses its column count
            if lhs != rhs and (_nonzero(lhs) or _nonzero(rhs)):
                return False
        return True

    def injective(self) -> bool:
        return all(rank_f2(_transpose(self.mat(d))) == _dim(self.source, d) for d in range(self.top))

    def surjective(self) -> bool:
        return all(rank_f2(self.mat(d)) == _dim(self.target, d) for d in range(self.top))

    def to_json(self) -> dict:
        return {"mats": [[list(r) for r in self.mat(d)] for d in range(self.top)]}


def _nonzero(m) -> bool:
    return any(any(r) for r in m)


def _transpose(m):
    return [list(r) for r in zip(*m)] if m else []


def _map_by_cells(source: CFComplex, target: CFComplex) -> ChainMapF2:
    """1_C -> 1_C when the cell C lies in both complexes, 0 otherwise (same arrangement)."""
    mats = []
    for d in range(len(source.dims)):
        tb = target.basis[d] if d < len(target.basis) else []
        pos = {f: r for r, f in enumerate(tb)}
        m = _zeros(len(tb), len(source.basis[d]))
        for c, f in enumerate(source.basis[d]):
            if f in pos:
                m[pos[f]][c] = 1
        mats.append(m)
    return ChainMapF2(source, target, mats)


def pushforward_closed(j: DefMap, extra_sets: Iterable[SemilinearSet] = ()) -> ChainMapF2:
    """j_! : CF_*(C) -> CF_*(X), 1_C -> 1_j(C), with CF(C) carried over to j(C)."""
    if not is_closed_embedding(j.fn, j.src, j.dst):
        raise ValueError("map is not a definable closed embedding")
    X = j.dst
    jC = image(j.fn, j.src)
    cx = cell_decomposition([X, jC, *extra_sets])
    _lc_check(cx, cx.members[0])
    tgt = _complex_on(cx, cx.members[0])
    src = _complex_on(cx, cx.members[1])
    _assert_d2(src)
    m = _map_by_cells(src, tgt)
    if not m.commutes():
        raise RuntimeError("pushforward does not commute with the differential")
    return m


def pullback_open(i: DefMap, extra_sets: Iterable[SemilinearSet] = ()) -> ChainMapF2:
    """i^* : CF_*(X) -> CF_*(U), 1_C -> 1_(i^-1 C), with CF(U) carried over to i(U)."""
    if not is_open_embedding(i.fn, i.src, i.dst):
        raise ValueError("map is not a definable open embedding")
    X = i.dst
    iU = image(i.fn, i.src)
    cx = cell_decomposition([X, iU, *extra_sets])
    _lc_check(cx, cx.members[0])
    src = _complex_on(cx, cx.members[0])
    tgt = _complex_on(cx, cx.members[1])
    _assert_d2(tgt)
    m = _map_by_cells(src, tgt)
    if not m.commutes():
        raise RuntimeError("restriction does not commute with the differential")
    return m


def compose_chain_maps(g: ChainMapF2, f: ChainMapF2) -> ChainMapF2:
    if g.source.basis != f.target.basis or g.source.cx.hyperplanes != f.target.cx.hyperplanes:
        raise ValueError("chain maps are not composable (different bases)")
    return ChainMapF2(f.source, g.target, [matmul_f2(a, b) for a, b in zip(g.mats, f.mats)])


def exactness_report(X: SemilinearSet, C: SemilinearSet) -> Verdict:
    """0 -> CF(C) -> CF(X) -> CF(X \\ C) -> 0, degree by degree."""
    if not is_closed_in(C, X):
        raise ValueError("C is not a closed subset of X")
    if not is_locally_closed(X):
        raise ValueError("X is not locally closed")
    cx = cell_decomposition([X, C])
    _lc_check(cx, cx.members[0])
    cX = _complex_on(cx, cx.members[0])
    cC = _complex_on(cx, cx.members[1])
    cU = _complex_on(cx, cx.members[0] - cx.members[1])
    j = _map_by_cells(cC, cX)
    i = _map_by_cells(cX, cU)
    v = Verdict("exactness")
    for name, m in (("j_!", j), ("i^*", i)):
        if not m.commutes():
            v.fail({"map": name}, f"{name} does not commute with the differential")
    if not j.injective():
        v.fail({"map": "j_!"}, "j_! is not injective")
    if not i.surjective():
        v.fail({"map": "i^*"}, "i^* is not surjective")
    for d in range(len(cX.dims)):
        v.checked += 1
        jm = j.mat(d)
        im = i.mat(d)
        comp = matmul_f2(im, jm)
        if any(any(r) for r in comp):
            v.fail({"degree": d}, "i^* j_! is not zero")
        ker_i = cX.dims[d] - rank_f2(im)
        if rank_f2(jm) != ker_i:
            v.fail({"degree": d}, "kernel of i^* differs from the image of j_!")
    return v


def check_open_closed_exactness(X: SemilinearSet, C: SemilinearSet) -> bool:
    return exactness_report(X, C).ok


def cf_on_distinguished_square(square) -> Verdict:
    """Apply CF_* to a distinguished square of the tilde category and certify a strict pushout.

    With (f, h, j, g) : A -> B, A -> C, B -> D, C -> D, the span CF(A) <- CF(C) -> CF(D)
    is (h^*, g_!) and the induced map CF(A) + CF(D) -> CF(B) is f_! + j^*.
    """
    res = squares_instance_check("tilde_Def_lc", square)
    if not res:
        raise ValueError(f"square is not distinguished in the tilde category: {res.reason}")
    f, h, j, g = square
    D = g.dst
    gC = image(g.fn, g.src)
    jB = image(j.fn, j.src)
    jfA = image(compose(j, f).fn, f.src)
    cx = cell_decomposition([D, gC, jB, jfA])
    cD, cC, cB, cA = (_complex_on(cx, cx.members[k]) for k in range(4))
    g_push = _map_by_cells(cC, cD)
    f_push = _map_by_cells(cA, cB)
    j_pull = _map_by_cells(cD, cB)
    h_pull = _map_by_cells(cC, cA)
    v = Verdict("cf_pushout")
    for name, m in (("g_!", g_push), ("f_!", f_push), ("j^*", j_pull), ("h^*", h_pull)):
        if not m.commutes():
            v.fail({"map": name}, f"{name} is not a chain map")
    if not (g_push.injective() and f_push.injective()):
        v.fail({"map": "horizontal"}, "a horizontal leg is not monic")
    top = max(len(c.dims) for c in (cA, cB, cC, cD))
    for d in range(top):
        v.checked += 1
        nA, nB, nC, nD = (_dim(c, d) for c in (cA, cB, cC, cD))
        fm, jm = f_push.mat(d), j_pull.mat(d)
        phi = [list(fr) + list(jr) for fr, jr in zip(fm, jm)]
        psi = [list(r) for r in h_pull.mat(d)] + [list(r) for r in g_push.mat(d)]
        if nB and nC and any(any(r) for r in matmul_f2(phi, psi)):
            v.fail({"degree": d}, "square of chain maps does not commute")
            continue
        if rank_f2(phi) != nB:
            v.fail({"degree": d}, "induced map to CF(B) is not surjective")
        elif nA + nD - nB != rank_f2(psi):
            v.fail({"degree": d}, "induced map to CF(B) is not injective on the pushout")
    return v
