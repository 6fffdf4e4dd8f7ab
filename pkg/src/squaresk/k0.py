"""K_0 as a finitely presented abelian group, computed with an exact Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .covering import CovCategory, build_cmin
from .report import FAIL, INCONCLUSIVE, PASS
from .squares import SquaresCategory

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, L, R)`` with ``L @ m @ R == D``, ``L`` and ``R`` unimodular.

    ``D`` is diagonal with non-negative entries ``d1 | d2 | ...``; zeros come last.
    """
    A = [[int(x) for x in row] for row in m]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    L = _identity(rows)
    R = _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for M in (A, R):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        for M in (A, L):
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                if rs[k]:
                    rd[k] += q * rs[k]

    def add_col(dst, src, q):  # col dst += q * col src
        for M in (A, R):
            for row in M:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # move the smallest remainder in row/column t to the pivot and repeat
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, rows) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, cols) if A[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            for M in (A, L):
                M[t] = [-x for x in M[t]]
        t += 1
    return A, L, R


def diagonal(D: Matrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [list(map(int, r)) for r in m]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


# -- lattices -------------------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class RowLattice:
    """The integer row span of a relation matrix, with a membership test.

    Rows are folded one at a time into an echelon basis using sparse rows, so
    tall matrices with few non-zeros per row stay cheap.
    """

    def __init__(self, rows: Sequence[Sequence[int]], width: int):
        self.width = width
        self.pivots: dict[int, dict[int, int]] = {}
        for r in rows:
            self._insert({k: int(v) for k, v in enumerate(r) if v})
        basis = [[row.get(k, 0) for k in range(width)] for _, row in sorted(self.pivots.items())]
        if basis:
            D, _, R = smith_normal_form(basis)
            self.diag = [d for d in diagonal(D) if d]
        else:
            R = _identity(width)
            self.diag = []
        self.R = R

    def _insert(self, v: dict[int, int]) -> None:
        while v:
            c = min(v)
            p = self.pivots.get(c)
            if p is None:
                if v[c] < 0:
                    v = {k: -x for k, x in v.items()}
                self.pivots[c] = v
                return
            a, b = p[c], v[c]
            if b % a == 0:
                v = _axpy(v, p, -(b // a))
                continue
            g, x, y = _xgcd(a, b)
            new_pivot = _axpy(_scale(p, x), v, y)
            rest = _axpy(_scale(p, b // g), v, -(a // g))
            self.pivots[c] = new_pivot
            v = rest

    @property
    def rank(self) -> int:
        return len(self.diag)

    def contains(self, vec: Sequence[int]) -> bool:
        w = [sum(vec[k] * self.R[k][j] for k in range(self.width) if vec[k]) for j in range(self.width)]
        for j, x in enumerate(w):
            if j < len(self.diag):
                if x % self.diag[j]:
                    return False
            elif x:
                return False
        return True


def _scale(v: dict, s: int) -> dict:
    return {k: x * s for k, x in v.items() if x * s}


def _axpy(v: dict, p: dict, q: int) -> dict:
    out = dict(v)
    for k, x in p.items():
        y = out.get(k, 0) + q * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


# -- presentations ---------------------------------------------------------------------


@dataclass
class AbelianGroupPresentation:
    generators: list[str]
    relations: Matrix = field(default_factory=list)

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relations:
            if len(r) != n:
                raise ValueError(f"relation of width {len(r)} on {n} generators")

    def vector(self, coeffs: Mapping[str, int]) -> list[int]:
        idx = {g: i for i, g in enumerate(self.generators)}
        v = [0] * len(self.generators)
        for g, k in coeffs.items():
            v[idx[g]] += k
        return v

    def lattice(self) -> RowLattice:
        return RowLattice(self.relations, len(self.generators))

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbelianGroupPresentation":
        return cls([str(g) for g in data["generators"]], [[int(x) for x in r] for r in data["relations"]])


@dataclass(frozen=True)
class AbelianGroupInvariants:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion factors must form a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion factors are at least 2")

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = ["Z"] * min(self.rank, 1)
        if self.rank > 1:
            parts = [f"Z^{self.rank}"]
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def k0_presentation_squares(S: SquaresCategory) -> AbelianGroupPresentation:
    """Generators are objects; relations ``[O] = 0`` and ``[A] + [D] = [B] + [C]`` per distinguished square."""
    c = S.ambient
    gens = list(c.objects)
    idx = {g: i for i, g in enumerate(gens)}
    rows = []
    o = [0] * len(gens)
    o[idx[S.basepoint]] = 1
    rows.append(o)
    for sq in sorted(S.distinguished):
        a, b, cc, d = S.square_objects(sq)
        r = [0] * len(gens)
        r[idx[a]] += 1
        r[idx[d]] += 1
        r[idx[b]] -= 1
        r[idx[cc]] -= 1
        rows.append(r)
    return AbelianGroupPresentation(gens, rows)


def k0_presentation_assembler(A: CovCategory) -> AbelianGroupPresentation:
    """Generators are non-initial objects; ``[A] = sum [A_i]`` per covering family."""
    gens = list(A.nonempty)
    idx = {g: i for i, g in enumerate(gens)}
    rows = []
    for target, fam in A.families:
        if target not in idx:
            continue
        r = [0] * len(gens)
        r[idx[target]] += 1
        for f in fam:
            r[idx[A.base.src(f)]] -= 1
        rows.append(r)
    return AbelianGroupPresentation(gens, rows)


def k0_invariants(p: AbelianGroupPresentation) -> AbelianGroupInvariants:
    lat = p.lattice()
    return AbelianGroupInvariants(len(p.generators) - lat.rank, tuple(d for d in lat.diag if d > 1))


@dataclass
class K0Comparison:
    status: str
    assembler: AbelianGroupInvariants | None = None
    cmin: AbelianGroupInvariants | None = None
    detail: str = ""
    witness: object = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out = {"name": "k0_compare", "status": self.status}
        if self.assembler is not None:
            out["assembler"] = self.assembler.to_json()
        if self.cmin is not None:
            out["cmin"] = self.cmin.to_json()
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def k0_compare_cmin(A: CovCategory, bound: int = 2) -> K0Comparison:
    """Certify that ``[A] -> [singleton A]`` is an isomorphism from K_0(A) to K_0(C^min).

    The inverse sends a multiset to the sum of its entries; both maps are checked
    to respect relations, and the two composites are checked to be identities
    modulo relations.
    """
    if bound < 2:
        return K0Comparison(INCONCLUSIVE, detail="bound below 2 leaves no coproduct relations")
    pa = k0_presentation_assembler(A)
    S = build_cmin(A, bound)
    pc = k0_presentation_squares(S)
    la, lc = pa.lattice(), pc.lattice()
    inv_a, inv_c = k0_invariants(pa), k0_invariants(pc)
    cmin = S.ambient
    cidx = {g: i for i, g in enumerate(pc.generators)}
    aidx = {g: i for i, g in enumerate(pa.generators)}
    largest = max((len(f) for _, f in A.families), default=1)

    def phi(v):
        out = [0] * len(pc.generators)
        for g, k in zip(pa.generators, v):
            if k:
                out[cidx[cmin.name_of[(g,)]]] += k
        return out

    def psi(v):
        out = [0] * len(pa.generators)
        for g, k in zip(pc.generators, v):
            if k:
                for x in cmin.tuple_of[g]:
                    out[aidx[x]] += k
        return out

    for r in pa.relations:
        if not lc.contains(phi(r)):
            status = INCONCLUSIVE if largest > bound else FAIL
            return K0Comparison(status, inv_a, inv_c, "an assembler relation does not hold in C^min", {"relation": r})
    for r in pc.relations:
        if not la.contains(psi(r)):
            return K0Comparison(FAIL, inv_a, inv_c, "a C^min relation does not hold in the assembler group", {"relation": r})
    for i in range(len(pa.generators)):
        e = [int(i == j) for j in range(len(pa.generators))]
        if psi(phi(e)) != e:
            return K0Comparison(FAIL, inv_a, inv_c, "psi . phi is not the identity", {"generator": pa.generators[i]})
    for i, g in enumerate(pc.generators):
        e = [int(i == j) for j in range(len(pc.generators))]
        back = phi(psi(e))
        diff = [x - y for x, y in zip(e, back)]
        if not lc.contains(diff):
            status = INCONCLUSIVE if largest > bound else FAIL
            return K0Comparison(status, inv_a, inv_c, "phi . psi is not the identity modulo relations", {"generator": g})
    if inv_a != inv_c:
        return K0Comparison(FAIL, inv_a, inv_c, "invariants differ although maps are inverse")
    return K0Comparison(PASS, inv_a, inv_c, "isomorphic")
