"""Semilinear sets over Q: boolean algebra, arrangement cell complexes, Euler characteristic,
piecewise-affine maps and the three squares categories of definable sets.

Every decision is exact.  Feasibility of a system of linear (in)equalities is decided by
Fourier-Motzkin elimination with strictness tracking, which also yields a witness point.
Cells are the relatively open faces of the hyperplane arrangement of all constraints, so
each input set is a union of cells and the closure of a cell is a union of cells.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

from .report import INCONCLUSIVE, AxiomReport, Verdict

RELS = ("<", "<=", "=", "!=", ">", ">=")
_FLIP = {"<": ">", "<=": ">=", "=": "=", "!=": "!=", ">": "<", ">=": "<="}
_NEG = {"<": ">=", "<=": ">", "=": "!=", "!=": "=", ">": "<=", ">=": "<"}
DEFAULT_CAP = 64
MAX_DIM = 3

VARIANTS = ("Def", "Def_lc", "tilde_Def_lc")


class CapExceeded(ValueError):
    pass


class NotTotalError(ValueError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"map is not defined at {[str(c) for c in point]}")


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _holds(v: Fraction, rel: str) -> bool:
    if rel == "<":
        return v < 0
    if rel == "<=":
        return v <= 0
    if rel == "=":
        return v == 0
    if rel == "!=":
        return v != 0
    if rel == ">":
        return v > 0
    return v >= 0


def _dot(a, x) -> Fraction:
    return sum((ai * xi for ai, xi in zip(a, x)), Fraction(0))


@dataclass(frozen=True, order=True)
class LinConstraint:
    """``a . x rel b``, stored with the first nonzero coefficient equal to 1."""

    a: tuple
    b: Fraction
    rel: str

    @classmethod
    def make(cls, a, b, rel: str) -> "LinConstraint":
        if rel not in RELS:
            raise ValueError(f"unknown relation {rel!r}")
        a = tuple(frac(x) for x in a)
        b = frac(b)
        lead = next((x for x in a if x != 0), None)
        if lead is None:
            ok = _holds(-b, rel)
            return cls(a, Fraction(0), "=" if ok else "!=")
        if lead < 0:
            rel = _FLIP[rel]
        return cls(tuple(x / lead for x in a), b / lead, rel)

    @property
    def dim(self) -> int:
        return len(self.a)

    @property
    def constant(self) -> bool:
        return all(x == 0 for x in self.a)

    def holds(self, x) -> bool:
        return _holds(_dot(self.a, x) - self.b, self.rel)

    def negate(self) -> "LinConstraint":
        return LinConstraint.make(self.a, self.b, _NEG[self.rel])

    def to_json(self) -> dict:
        return {"a": [frac_str(x) for x in self.a], "b": frac_str(self.b), "rel": self.rel}

    @classmethod
    def from_json(cls, d) -> "LinConstraint":
        return cls.make([Fraction(x) for x in d["a"]], Fraction(d["b"]), d["rel"])


class SemilinearSet:
    """A finite union of conjunctions of linear constraints in R^dim."""

    __slots__ = ("dim", "dnf")

    def __init__(self, dim: int, dnf: Iterable[Iterable[LinConstraint]] = ()):
        conjs = set()
        for conj in dnf:
            cs = set()
            dead = False
            for c in conj:
                if c.dim != dim:
                    raise ValueError(f"constraint of dimension {c.dim} in a set of dimension {dim}")
                c = LinConstraint.make(c.a, c.b, c.rel)
                if c.constant:
                    if c.rel == "!=":
                        dead = True
                        break
                    continue
                cs.add(c)
            if not dead:
                conjs.add(tuple(sorted(cs)))
        self.dim = dim
        self.dnf = tuple(sorted(conjs))

    def __eq__(self, other):
        return isinstance(other, SemilinearSet) and (self.dim, self.dnf) == (other.dim, other.dnf)

    def __hash__(self):
        return hash((self.dim, self.dnf))

    def __repr__(self):
        return f"SemilinearSet(dim={self.dim}, conjunctions={len(self.dnf)})"

    def contains(self, x) -> bool:
        x = tuple(frac(v) for v in x)
        return any(all(c.holds(x) for c in conj) for conj in self.dnf)

    def hyperplanes(self) -> set:
        return {(c.a, c.b) for conj in self.dnf for c in conj}

    def to_json(self) -> dict:
        return {"dim": self.dim, "dnf": [[c.to_json() for c in conj] for conj in self.dnf]}

    @classmethod
    def from_json(cls, d) -> "SemilinearSet":
        return cls(int(d["dim"]), [[LinConstraint.from_json(c) for c in conj] for conj in d["dnf"]])

    # constructors
    @classmethod
    def empty(cls, dim: int) -> "SemilinearSet":
        return cls(dim, [])

    @classmethod
    def full(cls, dim: int) -> "SemilinearSet":
        return cls(dim, [()])

    @classmethod
    def point(cls, p) -> "SemilinearSet":
        n = len(p)
        return cls(n, [[LinConstraint.make(_unit(n, i), p[i], "=") for i in range(n)]])

    @classmethod
    def box(cls, ranges) -> "SemilinearSet":
        """``ranges`` holds ``(lo, hi, lo_closed, hi_closed)`` per axis; ``None`` bounds are infinite."""
        n = len(ranges)
        conj = []
        for i, (lo, hi, lc, hc) in enumerate(ranges):
            if lo is not None:
                conj.append(LinConstraint.make(_unit(n, i), lo, ">=" if lc else ">"))
            if hi is not None:
                conj.append(LinConstraint.make(_unit(n, i), hi, "<=" if hc else "<"))
        return cls(n, [conj])

    @classmethod
    def interval(cls, lo, hi, lo_closed=True, hi_closed=True) -> "SemilinearSet":
        return cls.box([(lo, hi, lo_closed, hi_closed)])


def _unit(n: int, i: int) -> tuple:
    return tuple(Fraction(int(k == i)) for k in range(n))


# -- exact linear feasibility -------------------------------------------------------------
# rows are (a, b, kind) meaning a . x kind b with kind in "<", "<=", "="


def _norm_row(a, b, kind):
    """Scale to a primitive integer normal vector; ``b`` stays a Fraction."""
    if any(isinstance(x, Fraction) and x.denominator != 1 for x in a):
        m = math.lcm(*(Fraction(x).denominator for x in a))
        a = [int(x * m) for x in a]
        b = b * m
    else:
        a = [int(x) for x in a]
    g = math.gcd(*a)
    if g == 0:
        return None, _holds(-frac(b), kind)
    if kind == "=":
        lead = next(x for x in a if x != 0)
        if lead < 0:
            g = -g
    return (tuple(x // g for x in a), frac(b) / g, kind), True


def _prune(rows):
    eqs = {}
    ineq = {}
    for a, b, kind in rows:
        r, ok = _norm_row(a, b, kind)
        if r is None:
            if not ok:
                return None
            continue
        a, b, kind = r
        if kind == "=":
            if a in eqs and eqs[a] != b:
                return None
            eqs[a] = b
            continue
        cur = ineq.get(a)
        if cur is None or b < cur[0] or (b == cur[0] and kind == "<"):
            ineq[a] = (b, kind)
    for a, b in eqs.items():
        # an equality together with an inequality on the same normal is decided at once
        for sgn in (1, -1):
            key = a if sgn == 1 else tuple(-x for x in a)
            if key in ineq:
                bound, kind = ineq.pop(key)
                if not _holds(sgn * b - bound, kind):
                    return None
    out = [(a, b, "=") for a, b in eqs.items()]
    out += [(a, b, kind) for a, (b, kind) in ineq.items()]
    return out


def _eliminate(rows, k):
    eq = next((r for r in rows if r[2] == "=" and r[0][k] != 0), None)
    out = []
    if eq is not None:
        a0, b0, _ = eq
        c = a0[k]
        sc = 1 if c > 0 else -1
        for r in rows:
            if r is eq:
                continue
            a, b, kind = r
            t = a[k]
            if t:
                a = tuple(ai * abs(c) - t * sc * aj for ai, aj in zip(a, a0))
                b = b * abs(c) - t * sc * b0
            out.append((a, b, kind))
        return _prune(out)
    pos, neg = [], []
    for r in rows:
        t = r[0][k]
        if t > 0:
            pos.append(r)
        elif t < 0:
            neg.append(r)
        else:
            out.append(r)
    for pa, pb, pk in pos:
        for qa, qb, qk in neg:
            s, t = pa[k], -qa[k]
            a = tuple(x * t + y * s for x, y in zip(pa, qa))
            kind = "<" if "<" in (pk, qk) else "<="
            out.append((a, pb * t + qb * s, kind))
    return _prune(out)


def _choose(lo, lo_strict, hi, hi_strict) -> Fraction:
    def ok(v):
        if lo is not None and (v < lo or (lo_strict and v == lo)):
            return False
        if hi is not None and (v > hi or (hi_strict and v == hi)):
            return False
        return True

    if ok(Fraction(0)):
        return Fraction(0)
    if lo is not None and ok(Fraction(math.floor(lo) + 1)):
        return Fraction(math.floor(lo) + 1)
    if hi is not None and ok(Fraction(math.ceil(hi) - 1)):
        return Fraction(math.ceil(hi) - 1)
    if lo is not None and hi is not None:
        return lo if lo == hi else (lo + hi) / 2
    raise AssertionError("empty interval after projection")


def find_point(n: int, rows) -> tuple | None:
    """A point satisfying every row, or ``None`` if the system is infeasible."""
    cur = _prune(rows)
    if cur is None:
        return None
    systems = [cur]
    for k in reversed(range(n)):
        cur = _eliminate(cur, k)
        if cur is None:
            return None
        systems.append(cur)
    x = [Fraction(0)] * n
    for k in range(n):
        lo = hi = fixed = None
        los = his = False
        for a, b, kind in systems[n - 1 - k]:
            c = a[k]
            if c == 0:
                continue
            rest = (b - sum((a[i] * x[i] for i in range(k)), Fraction(0))) / c
            if kind == "=":
                fixed = rest
            elif c > 0:
                if hi is None or rest < hi or (rest == hi and kind == "<"):
                    hi, his = rest, kind == "<"
            else:
                if lo is None or rest > lo or (rest == lo and kind == "<"):
                    lo, los = rest, kind == "<"
        x[k] = fixed if fixed is not None else _choose(lo, los, hi, his)
    return tuple(x)


def project_rows(rows, n: int, keep: int):
    """Eliminate variables ``keep..n-1``; the result mentions only the first ``keep`` coordinates."""
    cur = _prune(rows)
    if cur is None:
        return None
    for k in reversed(range(keep, n)):
        cur = _eliminate(cur, k)
        if cur is None:
            return None
    return [(a[:keep], b, kind) for a, b, kind in cur]


def _constraint_rows(c: LinConstraint):
    """Rows for a constraint without ``!=``."""
    a, b, rel = c.a, c.b, c.rel
    neg = tuple(-x for x in a)
    return {
        "<": [(a, b, "<")],
        "<=": [(a, b, "<=")],
        "=": [(a, b, "=")],
        ">": [(neg, -b, "<")],
        ">=": [(neg, -b, "<=")],
    }[rel]


def conj_point(n: int, conj, extra_rows=()) -> tuple | None:
    """A point of a conjunction (``!=`` is split into ``<`` or ``>``), or ``None``."""
    rows = list(extra_rows)
    splits = []
    for c in conj:
        if c.rel == "!=":
            splits.append(c)
        else:
            rows += _constraint_rows(c)
    for choice in iproduct(("<", ">"), repeat=len(splits)):
        extra = []
        for c, r in zip(splits, choice):
            extra += _constraint_rows(LinConstraint.make(c.a, c.b, r))
        p = find_point(n, rows + extra)
        if p is not None:
            return p
    return None


def _rank(vectors) -> int:
    rows = [list(v) for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                t = rows[i][col] / rows[r][col]
                rows[i] = [x - t * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def _nullspace(vectors, n: int) -> list[tuple]:
    """Basis of {d : v . d = 0 for all v}."""
    rows = [list(v) for v in vectors]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                t = rows[i][col]
                rows[i] = [x - t * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        d = [Fraction(0)] * n
        d[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            d[pc] = -rows[i][fc]
        basis.append(tuple(d))
    return basis


# -- arrangements and cell complexes ---------------------------------------------------------


@dataclass(frozen=True)
class Face:
    signs: tuple
    dim: int
    point: tuple


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _sign_row(h, s):
    a, b = h
    if s < 0:
        return (a, b, "<")
    if s == 0:
        return (a, b, "=")
    return (tuple(-x for x in a), -b, "<")


@lru_cache(maxsize=512)
def _arrangement(n: int, hyps: tuple) -> tuple:
    faces = [((), tuple(Fraction(0) for _ in range(n)))]
    for k, h in enumerate(hyps):
        nxt = []
        for signs, pt in faces:
            rows = [_sign_row(hyps[i], s) for i, s in enumerate(signs)]
            s0 = _sign(_dot(h[0], pt) - h[1])
            for s in (-1, 0, 1):
                if s == s0:
                    nxt.append((signs + (s,), pt))
                    continue
                p = find_point(n, rows + [_sign_row(h, s)])
                if p is not None:
                    nxt.append((signs + (s,), p))
        faces = nxt
    out = []
    for signs, pt in sorted(faces):
        zero = [hyps[i][0] for i, s in enumerate(signs) if s == 0]
        out.append(Face(signs, n - (_rank(zero) if zero else 0), pt))
    return tuple(out)


class CellComplex:
    """Faces of a hyperplane arrangement with the membership of each input set."""

    def __init__(self, dim: int, hyperplanes: Sequence, faces: Sequence[Face], sets: Sequence[SemilinearSet]):
        self.dim = dim
        self.hyperplanes = tuple(hyperplanes)
        self.faces = tuple(faces)
        self.sets = tuple(sets)
        self._index = {h: k for k, h in enumerate(self.hyperplanes)}
        self.members = [self._member_faces(s) for s in sets]
        self._below = None

    def _member_faces(self, X: SemilinearSet) -> frozenset:
        """Faces inside X, read off the sign vectors (every constraint of X is a hyperplane here)."""
        conjs = [[(self._index[(c.a, c.b)], c.rel) for c in conj] for conj in X.dnf]
        out = []
        for i, f in enumerate(self.faces):
            sg = f.signs
            if any(all(_holds(sg[k], rel) for k, rel in conj) for conj in conjs):
                out.append(i)
        return frozenset(out)

    def __len__(self):
        return len(self.faces)

    def leq(self, g: int, f: int) -> bool:
        """Face g lies in the closure of face f."""
        fs, gs = self.faces[f].signs, self.faces[g].signs
        return all(y == 0 or y == x for x, y in zip(fs, gs))

    def below(self, f: int) -> list[int]:
        if self._below is None:
            n = len(self.faces)
            self._below = [[g for g in range(n) if self.leq(g, i)] for i in range(n)]
        return self._below[f]

    def face_rows(self, i: int):
        return [_sign_row(h, s) for h, s in zip(self.hyperplanes, self.faces[i].signs)]

    def directions(self, i: int) -> list[tuple]:
        zero = [h[0] for h, s in zip(self.hyperplanes, self.faces[i].signs) if s == 0]
        return _nullspace(zero, self.dim)

    def closure_of(self, idxs) -> frozenset:
        out = set()
        for i in idxs:
            out.update(self.below(i))
        return frozenset(out)

    def face_conj(self, i: int) -> tuple:
        rel = {-1: "<", 0: "=", 1: ">"}
        return tuple(LinConstraint.make(h[0], h[1], rel[s]) for h, s in zip(self.hyperplanes, self.faces[i].signs))

    def to_set(self, idxs) -> SemilinearSet:
        return SemilinearSet(self.dim, [self.face_conj(i) for i in sorted(idxs)])


def _norm_hyperplane(a, b):
    c = LinConstraint.make(a, b, "=")
    return None if c.constant else (c.a, c.b)


def cell_decomposition(sets: Sequence[SemilinearSet], extra: Iterable = (), cap: int = DEFAULT_CAP) -> CellComplex:
    """Faces of the arrangement of every constraint hyperplane of ``sets`` (plus ``extra``)."""
    sets = list(sets)
    if not sets:
        raise ValueError("need at least one set")
    n = sets[0].dim
    if any(s.dim != n for s in sets):
        raise ValueError("sets live in different ambient dimensions")
    if n > MAX_DIM + 4:
        raise ValueError(f"ambient dimension {n} is too large")
    hyps = set()
    for s in sets:
        hyps |= s.hyperplanes()
    for a, b in extra:
        h = _norm_hyperplane(a, b)
        if h is not None:
            hyps.add(h)
    if len(hyps) > cap:
        raise CapExceeded(f"{len(hyps)} hyperplanes exceed the cap of {cap}")
    hyps = tuple(sorted(hyps))
    return CellComplex(n, hyps, _arrangement(n, hyps), sets)


def random_hyperplanes(rng: random.Random, dim: int, k: int, spread: int = 4) -> list[tuple]:
    out = []
    while len(out) < k:
        a = tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim))
        if all(x == 0 for x in a):
            continue
        out.append((a, Fraction(rng.randint(-4 * spread, 4 * spread), rng.randint(1, 4))))
    return out


# -- invariants of a single set ------------------------------------------------------------


def euler_char(X: SemilinearSet, extra: Iterable = ()) -> int:
    cx = cell_decomposition([X], extra)
    return sum((-1) ** cx.faces[i].dim for i in cx.members[0])


def dimension(X: SemilinearSet) -> int:
    cx = cell_decomposition([X])
    return max((cx.faces[i].dim for i in cx.members[0]), default=-1)


def is_empty(X: SemilinearSet) -> bool:
    return all(conj_point(X.dim, conj) is None for conj in X.dnf)


def sample_point(X: SemilinearSet) -> tuple | None:
    for conj in X.dnf:
        p = conj_point(X.dim, conj)
        if p is not None:
            return p
    return None


def union(X: SemilinearSet, Y: SemilinearSet) -> SemilinearSet:
    _same_dim(X, Y)
    return SemilinearSet(X.dim, X.dnf + Y.dnf)


def intersection(X: SemilinearSet, Y: SemilinearSet) -> SemilinearSet:
    _same_dim(X, Y)
    return SemilinearSet(X.dim, [p + q for p in X.dnf for q in Y.dnf])


def complement(X: SemilinearSet) -> SemilinearSet:
    cx = cell_decomposition([X])
    return cx.to_set(set(range(len(cx))) - cx.members[0])


def difference(X: SemilinearSet, Y: SemilinearSet) -> SemilinearSet:
    _same_dim(X, Y)
    cx = cell_decomposition([X, Y])
    return cx.to_set(cx.members[0] - cx.members[1])


def is_subset(X: SemilinearSet, Y: SemilinearSet) -> bool:
    _same_dim(X, Y)
    cx = cell_decomposition([X, Y])
    return cx.members[0] <= cx.members[1]


def set_equal(X: SemilinearSet, Y: SemilinearSet) -> bool:
    if X.dim != Y.dim:
        return False
    cx = cell_decomposition([X, Y])
    return cx.members[0] == cx.members[1]


def _same_dim(X, Y):
    if X.dim != Y.dim:
        raise ValueError(f"dimension mismatch: {X.dim} vs {Y.dim}")


def _pad(c: LinConstraint, before: int, after: int) -> LinConstraint:
    z = Fraction(0)
    return LinConstraint.make((z,) * before + c.a + (z,) * after, c.b, c.rel)


def product(X: SemilinearSet, Y: SemilinearSet) -> SemilinearSet:
    n, m = X.dim, Y.dim
    dnf = []
    for p in X.dnf:
        for q in Y.dnf:
            dnf.append(tuple(_pad(c, 0, m) for c in p) + tuple(_pad(c, n, 0) for c in q))
    return SemilinearSet(n + m, dnf)


def coproduct(X: SemilinearSet, Y: SemilinearSet):
    """``X x {0}^m x {0}  u  {0}^n x Y x {1}`` in R^(n+m+1), with both inclusions."""
    n, m = X.dim, Y.dim
    N = n + m + 1

    def pin(i, v):
        return LinConstraint.make(_unit(N, i), v, "=")

    left = [tuple(_pad(c, 0, m + 1) for c in p) + tuple(pin(n + i, 0) for i in range(m)) + (pin(N - 1, 0),) for p in X.dnf]
    right = [tuple(pin(i, 0) for i in range(n)) + tuple(_pad(c, n, 1) for c in q) + (pin(N - 1, 1),) for q in Y.dnf]
    Z = SemilinearSet(N, left + right)
    z = Fraction(0)
    ml = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(N))
    mr = tuple(tuple(Fraction(int(i == n + j)) for j in range(m)) for i in range(N))
    off_l = (z,) * N
    off_r = (z,) * (N - 1) + (Fraction(1),)
    il = DefMap(X, Z, PiecewiseAffineMap([(SemilinearSet.full(n), ml, off_l)], n, N))
    ir = DefMap(Y, Z, PiecewiseAffineMap([(SemilinearSet.full(m), mr, off_r)], m, N))
    return Z, il, ir


def closure(X: SemilinearSet) -> SemilinearSet:
    cx = cell_decomposition([X])
    return cx.to_set(cx.closure_of(cx.members[0]))


def frontier(X: SemilinearSet) -> SemilinearSet:
    cx = cell_decomposition([X])
    return cx.to_set(cx.closure_of(cx.members[0]) - cx.members[0])


def locally_closed_witness(X: SemilinearSet) -> tuple | None:
    """A point of X in the closure of its frontier, or ``None`` when X is locally closed."""
    cx = cell_decomposition([X])
    inside = cx.members[0]
    fr = cx.closure_of(inside) - inside
    for g in sorted(fr):
        for e in cx.below(g):
            if e in inside:
                return cx.faces[e].point
    return None


def is_locally_closed(X: SemilinearSet) -> bool:
    return locally_closed_witness(X) is None


def is_closed_in(X: SemilinearSet, Y: SemilinearSet) -> bool:
    """X is a closed subset of Y."""
    cx = cell_decomposition([X, Y])
    x, y = cx.members
    return x <= y and (cx.closure_of(x) & y) <= x


def is_open_in(X: SemilinearSet, Y: SemilinearSet) -> bool:
    cx = cell_decomposition([X, Y])
    x, y = cx.members
    rest = y - x
    return x <= y and not (cx.closure_of(rest) & x)


# -- catalog ----------------------------------------------------------------------------------


def catalog() -> dict[str, SemilinearSet]:
    """Named test sets with known Euler characteristic."""
    S = SemilinearSet
    closed_sq = S.box([(0, 1, True, True), (0, 1, True, True)])
    open_sq = S.box([(0, 1, False, False), (0, 1, False, False)])
    big = S.box([(0, 3, True, True), (0, 3, True, True)])
    hole = S.box([(1, 2, False, False), (1, 2, False, False)])
    return {
        "point": S.point((0,)),
        "open_interval": S.interval(0, 1, False, False),
        "closed_interval": S.interval(0, 1),
        "half_open_interval": S.interval(0, 1, True, False),
        "open_square": open_sq,
        "closed_square": closed_sq,
        "square_boundary": difference(closed_sq, open_sq),
        "square_annulus": difference(big, hole),
        "two_closed_intervals": union(S.interval(0, 1), S.interval(2, 3)),
    }


CATALOG_CHI = {
    "point": 1,
    "open_interval": -1,
    "closed_interval": 1,
    "half_open_interval": 0,
    "open_square": 1,
    "closed_square": 1,
    "square_boundary": 0,
    "square_annulus": 0,
    "two_closed_intervals": 2,
}


def not_locally_closed_example() -> SemilinearSet:
    """Closed unit square minus the open bottom edge."""
    sq = SemilinearSet.box([(0, 1, True, True), (0, 1, True, True)])
    edge = SemilinearSet.box([(0, 1, False, False), (0, 0, True, True)])
    return difference(sq, edge)


def random_set(rng: random.Random, dim: int = 2, pieces: int = 3, size: int = 4) -> SemilinearSet:
    """Union of random boxes with random open/closed sides (degenerate boxes give segments and points)."""
    out = SemilinearSet.empty(dim)
    for _ in range(rng.randint(1, pieces)):
        ranges = []
        for _ in range(dim):
            lo = rng.randint(0, size - 1)
            hi = lo + rng.randint(0, 2)
            if lo == hi:
                ranges.append((lo, hi, True, True))
            else:
                ranges.append((lo, hi, rng.random() < 0.5, rng.random() < 0.5))
        out = union(out, SemilinearSet.box(ranges))
    return out


def random_closed_set(rng: random.Random, dim: int = 2, pieces: int = 3, size: int = 4) -> SemilinearSet:
    out = SemilinearSet.empty(dim)
    for _ in range(rng.randint(1, pieces)):
        ranges = []
        for _ in range(dim):
            lo = rng.randint(0, size - 1)
            ranges.append((lo, lo + rng.randint(0, 2), True, True))
        out = union(out, SemilinearSet.box(ranges))
    return out


def random_open_set(rng: random.Random, dim: int = 2, pieces: int = 3, size: int = 4) -> SemilinearSet:
    out = SemilinearSet.empty(dim)
    for _ in range(rng.randint(1, pieces)):
        ranges = []
        for _ in range(dim):
            lo = rng.randint(-1, size - 1)
            ranges.append((lo, lo + rng.randint(1, 3), False, False))
        out = union(out, SemilinearSet.box(ranges))
    return out


# -- piecewise-affine maps -------------------------------------------------------------------------


def _matvec(M, x):
    return tuple(_dot(row, x) for row in M)


class PiecewiseAffineMap:
    """Pieces ``(domain, matrix, offset)``; on a piece, ``x -> matrix . x + offset``."""

    def __init__(self, pieces, dom_dim: int | None = None, codim: int | None = None):
        norm = []
        for dom, M, c in pieces:
            M = tuple(tuple(frac(v) for v in row) for row in M)
            c = tuple(frac(v) for v in c)
            norm.append((dom, M, c))
        if dom_dim is None:
            dom_dim = norm[0][0].dim
        if codim is None:
            codim = len(norm[0][2])
        for dom, M, c in norm:
            if dom.dim != dom_dim or len(c) != codim or len(M) != codim or any(len(r) != dom_dim for r in M):
                raise ValueError("piece shapes do not match the declared dimensions")
        self.pieces = tuple(norm)
        self.dom_dim = dom_dim
        self.codim = codim

    def __repr__(self):
        return f"PiecewiseAffineMap({self.dom_dim}->{self.codim}, pieces={len(self.pieces)})"

    def __call__(self, x):
        x = tuple(frac(v) for v in x)
        for dom, M, c in self.pieces:
            if dom.contains(x):
                return tuple(v + o for v, o in zip(_matvec(M, x), c))
        raise NotTotalError(x)

    @classmethod
    def affine(cls, M, c, domain: SemilinearSet | None = None) -> "PiecewiseAffineMap":
        n = len(M[0]) if M and len(M[0]) else (domain.dim if domain is not None else 0)
        dom = domain if domain is not None else SemilinearSet.full(n)
        return cls([(dom, M, c)], dom.dim, len(c))

    @classmethod
    def identity(cls, n: int) -> "PiecewiseAffineMap":
        M = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        return cls([(SemilinearSet.full(n), M, (Fraction(0),) * n)], n, n)

    @classmethod
    def translation(cls, v) -> "PiecewiseAffineMap":
        n = len(v)
        M = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        return cls([(SemilinearSet.full(n), M, tuple(frac(x) for x in v))], n, n)

    def to_json(self) -> dict:
        return {
            "dom_dim": self.dom_dim,
            "codim": self.codim,
            "pieces": [
                {"domain": d.to_json(), "matrix": [[frac_str(v) for v in row] for row in M], "offset": [frac_str(v) for v in c]}
                for d, M, c in self.pieces
            ],
        }

    @classmethod
    def from_json(cls, d) -> "PiecewiseAffineMap":
        pieces = [
            (SemilinearSet.from_json(p["domain"]), [[Fraction(v) for v in row] for row in p["matrix"]], [Fraction(v) for v in p["offset"]])
            for p in d["pieces"]
        ]
        return cls(pieces, d.get("dom_dim"), d.get("codim"))


def _substitute(c: LinConstraint, M, off, n: int) -> LinConstraint:
    """The constraint ``c`` evaluated at ``M x + off``, as a constraint on x."""
    a = tuple(sum((c.a[i] * M[i][j] for i in range(len(M))), Fraction(0)) for j in range(n))
    return LinConstraint.make(a, c.b - _dot(c.a, off), c.rel)


def preimage_piece(Y: SemilinearSet, M, off, n: int) -> SemilinearSet:
    return SemilinearSet(n, [[_substitute(c, M, off, n) for c in conj] for conj in Y.dnf])


def preimage(f: PiecewiseAffineMap, Y: SemilinearSet) -> SemilinearSet:
    if Y.dim != f.codim:
        raise ValueError("codomain dimension mismatch")
    out = SemilinearSet.empty(f.dom_dim)
    for dom, M, c in f.pieces:
        out = union(out, intersection(dom, preimage_piece(Y, M, c, f.dom_dim)))
    return out


def compose_maps(g: PiecewiseAffineMap, f: PiecewiseAffineMap) -> PiecewiseAffineMap:
    """``g . f``."""
    if f.codim != g.dom_dim:
        raise ValueError("maps are not composable")
    pieces = []
    for dom_f, Mf, cf in f.pieces:
        for dom_g, Mg, cg in g.pieces:
            dom = intersection(dom_f, preimage_piece(dom_g, Mf, cf, f.dom_dim))
            if not dom.dnf:
                continue
            M = tuple(tuple(_dot(row, [Mf[k][j] for k in range(len(Mf))]) for j in range(f.dom_dim)) for row in Mg)
            c = tuple(v + o for v, o in zip(_matvec(Mg, cf), cg))
            pieces.append((dom, M, c))
    if not pieces:
        z = tuple(tuple(Fraction(0) for _ in range(f.dom_dim)) for _ in range(g.codim))
        pieces = [(SemilinearSet.empty(f.dom_dim), z, (Fraction(0),) * g.codim)]
    return PiecewiseAffineMap(pieces, f.dom_dim, g.codim)


class _Adapted:
    """Faces of X in a complex adapted to X and to every piece domain of f."""

    def __init__(self, f: PiecewiseAffineMap, X: SemilinearSet, extra_sets=()):
        if X.dim != f.dom_dim:
            raise ValueError("domain dimension mismatch")
        self.f, self.X = f, X
        self.cx = cell_decomposition([X] + [p[0] for p in f.pieces] + list(extra_sets))
        self.piece_of = {}
        for i in sorted(self.cx.members[0]):
            owners = [k for k in range(len(f.pieces)) if i in self.cx.members[1 + k]]
            if not owners:
                raise NotTotalError(self.cx.faces[i].point)
            if len(owners) > 1:
                raise ValueError("map pieces overlap")
            self.piece_of[i] = owners[0]
        self.faces = sorted(self.piece_of)
        self._img = {}

    def formula(self, i):
        _, M, c = self.f.pieces[self.piece_of[i]]
        return M, c

    def image_rows(self, i):
        if i not in self._img:
            n, m = self.f.dom_dim, self.f.codim
            M, c = self.formula(i)
            rows = [(tuple([Fraction(0)] * m) + a, b, kind) for a, b, kind in self.cx.face_rows(i)]
            for r in range(m):
                a = [Fraction(0)] * (m + n)
                a[r] = Fraction(1)
                for j in range(n):
                    a[m + j] = -M[r][j]
                rows.append((tuple(a), c[r], "="))
            self._img[i] = project_rows(rows, m + n, m) or []
        return self._img[i]

    def image_set(self, faces=None) -> SemilinearSet:
        m = self.f.codim
        conjs = []
        for i in self.faces if faces is None else faces:
            conj = []
            for a, b, kind in self.image_rows(i):
                conj.append(LinConstraint.make(a, b, kind))
            conjs.append(conj)
        return SemilinearSet(m, conjs)


def image(f: PiecewiseAffineMap, X: SemilinearSet) -> SemilinearSet:
    return _Adapted(f, X).image_set()


def is_total(f: PiecewiseAffineMap, X: SemilinearSet) -> bool:
    try:
        _Adapted(f, X)
    except NotTotalError:
        return False
    return True


def maps_agree(f: PiecewiseAffineMap, g: PiecewiseAffineMap, X: SemilinearSet) -> bool:
    """f and g coincide pointwise on X."""
    if f.codim != g.codim:
        return False
    ad = _Adapted(f, X, [p[0] for p in g.pieces])
    cx = ad.cx
    k0 = 1 + len(f.pieces)
    for i in ad.faces:
        owners = [k for k in range(len(g.pieces)) if i in cx.members[k0 + k]]
        if len(owners) != 1:
            raise NotTotalError(cx.faces[i].point)
        _, Mg, cg = g.pieces[owners[0]]
        Mf, cf = ad.formula(i)
        if not _agree_on_face(cx, i, Mf, cf, Mg, cg):
            return False
    return True


def _agree_on_face(cx: CellComplex, i, M1, c1, M2, c2) -> bool:
    p = cx.faces[i].point
    v1 = tuple(a + b for a, b in zip(_matvec(M1, p), c1))
    v2 = tuple(a + b for a, b in zip(_matvec(M2, p), c2))
    if v1 != v2:
        return False
    return all(_matvec(M1, d) == _matvec(M2, d) for d in cx.directions(i))


def _injective_witness(ad: _Adapted):
    cx = ad.cx
    m = ad.f.codim
    for i in ad.faces:
        M, _ = ad.formula(i)
        dirs = cx.directions(i)
        if dirs and _rank([_matvec(M, d) for d in dirs]) < len(dirs):
            return cx.faces[i].point
    for x, i in enumerate(ad.faces):
        for k in ad.faces[x + 1:]:
            if find_point(m, ad.image_rows(i) + ad.image_rows(k)) is not None:
                return cx.faces[i].point
    return None


def is_injective(f: PiecewiseAffineMap, X: SemilinearSet) -> bool:
    return _injective_witness(_Adapted(f, X)) is None


def _continuity_witness(ad: _Adapted):
    cx = ad.cx
    inside = set(ad.faces)
    for F in ad.faces:
        MF, cF = ad.formula(F)
        for G in cx.below(F):
            if G == F or G not in inside:
                continue
            MG, cG = ad.formula(G)
            if not _agree_on_face(cx, G, MF, cF, MG, cG):
                return cx.faces[G].point
    return None


def is_continuous(f: PiecewiseAffineMap, X: SemilinearSet) -> bool:
    return _continuity_witness(_Adapted(f, X)) is None


def _relax(rows):
    return [(a, b, "<=" if kind == "<" else kind) for a, b, kind in rows]


def _inverse_continuity_witness(ad: _Adapted):
    """For continuous injective f: the inverse is continuous unless some f(G) meets cl f(F) with G not below F."""
    cx = ad.cx
    m = ad.f.codim
    for F in ad.faces:
        clF = _relax(ad.image_rows(F))
        for G in ad.faces:
            if G == F or cx.leq(G, F):
                continue
            if find_point(m, ad.image_rows(G) + clF) is not None:
                return cx.faces[G].point
    return None


def is_definable_injection(f: PiecewiseAffineMap, X: SemilinearSet, Y: SemilinearSet | None = None) -> bool:
    try:
        ad = _Adapted(f, X)
    except NotTotalError:
        return False
    if _injective_witness(ad) is not None:
        return False
    return Y is None or is_subset(ad.image_set(), Y)


def is_bijection_onto(f: PiecewiseAffineMap, X: SemilinearSet, Y: SemilinearSet) -> bool:
    try:
        ad = _Adapted(f, X)
    except NotTotalError:
        return False
    return _injective_witness(ad) is None and set_equal(ad.image_set(), Y)


def _embedding(f, X, Y, kind):
    try:
        ad = _Adapted(f, X)
    except NotTotalError:
        return False
    if _injective_witness(ad) is not None or _continuity_witness(ad) is not None:
        return False
    if _inverse_continuity_witness(ad) is not None:
        return False
    img = ad.image_set()
    if kind == "homeo":
        return set_equal(img, Y)
    if kind == "open":
        return is_open_in(img, Y)
    return is_closed_in(img, Y)


def is_definable_homeomorphism(f: PiecewiseAffineMap, X: SemilinearSet, Y: SemilinearSet) -> bool:
    return _embedding(f, X, Y, "homeo")


def is_open_embedding(f: PiecewiseAffineMap, X: SemilinearSet, Y: SemilinearSet) -> bool:
    return _embedding(f, X, Y, "open")


def is_closed_embedding(f: PiecewiseAffineMap, X: SemilinearSet, Y: SemilinearSet) -> bool:
    return _embedding(f, X, Y, "closed")


# -- the squares categories of definable sets -----------------------------------------------------


@dataclass(frozen=True)
class DefMap:
    src: SemilinearSet
    dst: SemilinearSet
    fn: PiecewiseAffineMap

    def to_json(self) -> dict:
        return {"src": self.src.to_json(), "dst": self.dst.to_json(), "map": self.fn.to_json()}

    @classmethod
    def from_json(cls, d) -> "DefMap":
        return cls(SemilinearSet.from_json(d["src"]), SemilinearSet.from_json(d["dst"]), PiecewiseAffineMap.from_json(d["map"]))


def inclusion(X: SemilinearSet, Y: SemilinearSet) -> DefMap:
    return DefMap(X, Y, PiecewiseAffineMap.identity(X.dim))


def translate(X: SemilinearSet, v) -> DefMap:
    f = PiecewiseAffineMap.translation(v)
    return DefMap(X, image(f, X), f)


def compose(g: DefMap, f: DefMap) -> DefMap:
    return DefMap(f.src, g.dst, compose_maps(g.fn, f.fn))


def complement_map(f: DefMap) -> DefMap:
    """The inclusion ``B \\ f(A) -> B``."""
    return inclusion(difference(f.dst, image(f.fn, f.src)), f.dst)


def image_of(m: DefMap) -> SemilinearSet:
    return image(m.fn, m.src)


def in_M(variant: str, m: DefMap) -> tuple[bool, str]:
    _check_variant(variant)
    if variant != "Def":
        for name, X in (("source", m.src), ("target", m.dst)):
            if not is_locally_closed(X):
                return False, f"{name} is not locally closed"
        return (True, "") if is_closed_embedding(m.fn, m.src, m.dst) else (False, "not a definable closed embedding")
    return (True, "") if is_definable_injection(m.fn, m.src, m.dst) else (False, "not a definable injection")


def in_E(variant: str, m: DefMap) -> tuple[bool, str]:
    _check_variant(variant)
    if variant == "Def":
        return (True, "") if is_definable_injection(m.fn, m.src, m.dst) else (False, "not a definable injection")
    for name, X in (("source", m.src), ("target", m.dst)):
        if not is_locally_closed(X):
            return False, f"{name} is not locally closed"
    if variant == "Def_lc":
        try:
            ok = is_subset(image(m.fn, m.src), m.dst)
        except NotTotalError:
            ok = False
        return (True, "") if ok else (False, "not a definable map into the target")
    return (True, "") if is_open_embedding(m.fn, m.src, m.dst) else (False, "not a definable open embedding")


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


@dataclass(frozen=True)
class SquareCheck:
    ok: bool
    reason: str = ""
    leg: str | None = None

    def __bool__(self):
        return self.ok


def is_pullback_square(f: DefMap, h: DefMap, j: DefMap, g: DefMap) -> bool:
    """Commutes and f(A) = j^-1(g(C)) inside B; with f, g injective this is the set-level pullback."""
    A, B = f.src, f.dst
    if not maps_agree(compose(j, f).fn, compose(g, h).fn, A):
        return False
    back = intersection(B, preimage(j.fn, image_of(g)))
    return set_equal(image_of(f), back)


def squares_instance_check(variant: str, square) -> SquareCheck:
    """Is ``(f, h, j, g)`` a distinguished square of C_Def, C_Def^lc or the tilde variant?"""
    _check_variant(variant)
    f, h, j, g = square
    pairs = (("f.src", f.src, "h.src", h.src), ("f.dst", f.dst, "j.src", j.src),
             ("h.dst", h.dst, "g.src", g.src), ("j.dst", j.dst, "g.dst", g.dst))
    for n1, x, n2, y in pairs:
        if not set_equal(x, y):
            raise ValueError(f"square shape mismatch: {n1} differs from {n2}")
    for leg, m, test in (("f", f, in_M), ("g", g, in_M), ("h", h, in_E), ("j", j, in_E)):
        ok, why = test(variant, m)
        if not ok:
            return SquareCheck(False, why, leg)
    if not is_pullback_square(f, h, j, g):
        return SquareCheck(False, "not a pullback square")
    D = g.dst
    if variant == "tilde_Def_lc":
        if not set_equal(union(image_of(j), image_of(g)), D):
            return SquareCheck(False, "j(B) and g(C) do not cover D")
        return SquareCheck(True)
    Bc = difference(f.dst, image_of(f))
    Dc = difference(D, image_of(g))
    if not is_injective(j.fn, Bc) or not set_equal(image(j.fn, Bc), Dc):
        return SquareCheck(False, "complement map is not a definable bijection")
    return SquareCheck(True)


def empty_square(f: DefMap) -> tuple:
    """The complement square ``(0 -> B \\ A, 0 -> A, B \\ A -> B, f)``."""
    comp = complement_map(f)
    n = f.src.dim
    nB = f.dst.dim
    e_top = DefMap(SemilinearSet.empty(nB), comp.src, PiecewiseAffineMap.identity(nB))
    e_left = DefMap(SemilinearSet.empty(nB), f.src, _zero_map(nB, n))
    return (e_top, e_left, comp, f)


def _zero_map(n, m):
    z = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(m))
    return PiecewiseAffineMap([(SemilinearSet.full(n), z, (Fraction(0),) * m)], n, m)


# -- sampled (A1)-(A8) checks ------------------------------------------------------------------------


def _rand_object(rng, dim):
    return random_set(rng, dim, pieces=2, size=3)


def _closed_part(rng, D, dim):
    """A random closed subset of D (D intersected with a closed set)."""
    return intersection(D, random_closed_set(rng, dim, pieces=2, size=3))


def _vertical_part(rng, variant, D, dim):
    if variant == "tilde_Def_lc":
        return intersection(D, random_open_set(rng, dim, pieces=2, size=3))
    if variant == "Def":
        return intersection(D, random_set(rng, dim, pieces=2, size=3))
    # Def_lc: any locally closed subset; intersect with an open or a closed set
    K = random_open_set(rng, dim, 2, 3) if rng.random() < 0.5 else random_closed_set(rng, dim, 2, 3)
    return intersection(D, K)


def _horizontal_part(rng, variant, D, dim):
    if variant == "Def":
        return intersection(D, random_set(rng, dim, pieces=2, size=3))
    return _closed_part(rng, D, dim)


def sample_axioms(variant: str, draws: int = 500, seed: int = 0, dim: int = 1) -> AxiomReport:
    """Seeded random diagrams of inclusions and translations; one verdict per axiom."""
    _check_variant(variant)
    rng = random.Random(seed)
    rep = AxiomReport()
    vs = {a: rep.add(Verdict(a, mode="sampled")) for a in ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8")}
    for t in range(draws):
        ax = f"A{t % 8 + 1}"
        v = vs[ax]
        ok, wit = _SAMPLERS[ax](rng, variant, dim)
        if ok is None:
            continue  # preconditions of the axiom did not hold for this draw
        v.checked += 1
        if not ok and not v.witness:
            v.fail(wit, f"violation in draw {t}")
    for v in vs.values():
        if v.checked == 0 and v.status == "pass":
            v.status = INCONCLUSIVE
            v.detail = "no draw met the preconditions"
    return rep


def _shifted(rng, X, dim):
    v = tuple(Fraction(rng.randint(-3, 3), rng.choice((1, 2))) for _ in range(dim))
    return translate(X, v)


def _s_a1(rng, variant, dim):
    B = _rand_object(rng, dim)
    A = _horizontal_part(rng, variant, B, dim)
    t = _shifted(rng, A, dim)
    ok = is_definable_injection(t.fn, t.src, t.dst)
    return ok, {"map": t.to_json()}


def _s_a2(rng, variant, dim):
    B = _rand_object(rng, dim)
    A = _horizontal_part(rng, variant, B, dim)
    f = inclusion(A, B)
    if not in_M(variant, f)[0]:
        return None, None
    sq = empty_square(f)
    if not in_E(variant, sq[2])[0]:
        return False, {"map": f.to_json(), "reason": "complement inclusion is not vertical"}
    res = squares_instance_check(variant, sq)
    ident = inclusion(A, A)
    if not is_bijection_onto(ident.fn, difference(A, SemilinearSet.empty(dim)), A):
        return False, {"object": A.to_json()}
    return res.ok, {"map": f.to_json(), "reason": res.reason}


def _s_a3(rng, variant, dim):
    B = _rand_object(rng, dim)
    A = _horizontal_part(rng, variant, B, dim)
    Bp = _vertical_part(rng, variant, B, dim)
    f, e = inclusion(A, B), inclusion(Bp, B)
    if not (in_M(variant, f)[0] and in_E(variant, e)[0]):
        return None, None
    P = intersection(Bp, A)
    m_leg = inclusion(P, Bp)
    e_leg = inclusion(P, A)
    okm = in_M(variant, m_leg)[0]
    oke = in_E(variant, e_leg)[0]
    return okm and oke, {"M": f.to_json(), "E": e.to_json()}


def _random_pullback(rng, variant, dim, cover=False):
    D = _rand_object(rng, dim)
    C = _horizontal_part(rng, variant, D, dim)
    if cover:
        # B must contain D \ C
        B = union(difference(D, C), _vertical_part(rng, variant, D, dim))
    else:
        B = _vertical_part(rng, variant, D, dim)
    A = intersection(B, C)
    return inclusion(A, B), inclusion(A, C), inclusion(B, D), inclusion(C, D)


def _s_a4(rng, variant, dim):
    sq = _random_pullback(rng, variant, dim, cover=rng.random() < 0.7)
    if squares_instance_check(variant, sq).ok:
        return is_pullback_square(*sq), {"square": [m.to_json() for m in sq]}
    return None, None


def _s_a5(rng, variant, dim):
    f, h, j, g = _random_pullback(rng, variant, dim)
    if not (in_M(variant, f)[0] and in_M(variant, g)[0] and in_E(variant, h)[0] and in_E(variant, j)[0]):
        return None, None
    Bc = difference(f.dst, image_of(f))
    Dc = difference(g.dst, image_of(g))
    jp = DefMap(Bc, Dc, j.fn)
    ok = is_subset(image_of(jp), Dc) and set_equal(Bc, intersection(j.src, preimage(j.fn, Dc)))
    return ok, {"square": [m.to_json() for m in (f, h, j, g)]}


def _s_a6(rng, variant, dim):
    A2 = _rand_object(rng, dim)
    A1 = _horizontal_part(rng, variant, A2, dim)
    A0 = _horizontal_part(rng, variant, A1, dim)
    lhs = difference(difference(A2, A0), difference(A1, A0))
    rhs = difference(A2, A1)
    return set_equal(lhs, rhs), {"chain": [A0.to_json(), A1.to_json(), A2.to_json()]}


def _s_a7(rng, variant, dim):
    sq = _random_pullback(rng, variant, dim, cover=True)
    f, h, j, g = sq
    if not (in_M(variant, f)[0] and in_M(variant, g)[0] and in_E(variant, h)[0] and in_E(variant, j)[0]):
        return None, None
    Bc = difference(f.dst, image_of(f))
    Dc = difference(g.dst, image_of(g))
    if is_bijection_onto(j.fn, Bc, Dc):
        res = squares_instance_check(variant, sq)
        return res.ok, {"square": [m.to_json() for m in sq], "reason": res.reason}
    return None, None


def _s_a8(rng, variant, dim):
    sq = _random_pullback(rng, variant, dim, cover=True)
    if not squares_instance_check(variant, sq).ok:
        return None, None
    f, h, j, g = sq
    A, C = f.src, g.src
    C0 = _closed_part(rng, C, dim)
    A0 = intersection(A, C0)
    B, D = f.dst, g.dst
    ind = (
        inclusion(difference(A, A0), difference(B, A0)),
        inclusion(difference(A, A0), difference(C, C0)),
        inclusion(difference(B, A0), difference(D, C0)),
        inclusion(difference(C, C0), difference(D, C0)),
    )
    res = squares_instance_check(variant, ind)
    return res.ok, {"square": [m.to_json() for m in sq], "inner": C0.to_json(), "reason": res.reason}


_SAMPLERS = {"A1": _s_a1, "A2": _s_a2, "A3": _s_a3, "A4": _s_a4, "A5": _s_a5, "A6": _s_a6, "A7": _s_a7, "A8": _s_a8}
