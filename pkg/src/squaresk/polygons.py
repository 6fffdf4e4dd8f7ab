"""Rational polygons under rational translations: covers, piecewise translations,
closure complements, distinguished squares and the area invariant.

Polygons are finite sets of closed rational triangles with pairwise intersections of
measure zero.  All boolean operations clip convex pieces exactly over Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .report import AxiomReport, Verdict

Pt = tuple


def _pt(p) -> tuple:
    return (Fraction(p[0]), Fraction(p[1]))


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _poly_area2(poly) -> Fraction:
    s = Fraction(0)
    for i in range(len(poly)):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % len(poly)]
        s += x1 * y2 - x2 * y1
    return s


def _clip(poly, a, b):
    """Part of a convex polygon on the left of (or on) the directed line a -> b."""
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    side = [dx * (p[1] - ay) - dy * (p[0] - ax) for p in poly]
    if all(c >= 0 for c in side):
        return list(poly)
    if all(c <= 0 for c in side):
        return []
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        cp, cq = side[i], side[(i + 1) % n]
        if cp >= 0:
            out.append(p)
        if (cp > 0 and cq < 0) or (cp < 0 and cq > 0):
            t = cp / (cp - cq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _convex_inter(P, Q):
    out = list(P)
    for i in range(len(Q)):
        if len(out) < 3:
            return []
        out = _clip(out, Q[i], Q[(i + 1) % len(Q)])
    return out if len(out) >= 3 else []


def _fan(poly) -> list:
    tris = []
    for i in range(1, len(poly) - 1):
        t = (poly[0], poly[i], poly[i + 1])
        if _cross(*t) != 0:
            tris.append(t)
    return tris


def _ccw(t):
    return t if _cross(*t) > 0 else (t[0], t[2], t[1])


def _canon_tri(t):
    t = _ccw(tuple(_pt(p) for p in t))
    k = min(range(3), key=lambda i: t[i])
    return t[k:] + t[:k]


class RationalPolygon:
    """Closed triangles with rational vertices, pairwise almost disjoint."""

    __slots__ = ("triangles",)

    def __init__(self, triangles: Iterable = (), check: bool = False):
        tris = []
        for t in triangles:
            t = tuple(_pt(p) for p in t)
            if len(t) != 3:
                raise ValueError("triangles need three vertices")
            if _cross(*t) == 0:
                continue
            tris.append(_canon_tri(t))
        self.triangles = tuple(sorted(tris))
        if check:
            for i, s in enumerate(self.triangles):
                for u in self.triangles[i + 1:]:
                    if _tri_overlap_area(s, u) != 0:
                        raise ValueError("triangles overlap in positive area")

    def __repr__(self):
        return f"RationalPolygon({len(self.triangles)} triangles, area={area(self)})"

    def __eq__(self, other):
        return isinstance(other, RationalPolygon) and self.triangles == other.triangles

    def __hash__(self):
        return hash(self.triangles)

    @property
    def empty(self) -> bool:
        return not self.triangles

    def translate(self, v) -> "RationalPolygon":
        v = _pt(v)
        return RationalPolygon([[(p[0] + v[0], p[1] + v[1]) for p in t] for t in self.triangles])

    def bbox(self):
        xs = [p[0] for t in self.triangles for p in t]
        ys = [p[1] for t in self.triangles for p in t]
        return min(xs), min(ys), max(xs), max(ys)

    def to_json(self) -> dict:
        return {"triangles": [[[_fs(p[0]), _fs(p[1])] for p in t] for t in self.triangles]}

    @classmethod
    def from_json(cls, d) -> "RationalPolygon":
        return cls([[(Fraction(p[0]), Fraction(p[1])) for p in t] for t in d["triangles"]], check=True)

    @classmethod
    def rect(cls, x0, y0, x1, y1) -> "RationalPolygon":
        a, b, c, d = (x0, y0), (x1, y0), (x1, y1), (x0, y1)
        return cls([(a, b, c), (a, c, d)])

    @classmethod
    def from_convex(cls, poly) -> "RationalPolygon":
        return cls(_fan([_pt(p) for p in poly]))


def _fs(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _tri_overlap_area(s, t) -> Fraction:
    if (max(p[0] for p in s) <= min(p[0] for p in t) or max(p[0] for p in t) <= min(p[0] for p in s)
            or max(p[1] for p in s) <= min(p[1] for p in t) or max(p[1] for p in t) <= min(p[1] for p in s)):
        return Fraction(0)
    inter = _convex_inter(list(s), list(t))
    return abs(_poly_area2(inter)) / 2 if inter else Fraction(0)


def area(P: RationalPolygon) -> Fraction:
    return sum((abs(_cross(*t)) / 2 for t in P.triangles), Fraction(0))


def overlap_area(P: RationalPolygon, Q: RationalPolygon) -> Fraction:
    return sum((_tri_overlap_area(s, t) for s in P.triangles for t in Q.triangles), Fraction(0))


def intersection(P: RationalPolygon, Q: RationalPolygon) -> RationalPolygon:
    tris = []
    for s in P.triangles:
        for t in Q.triangles:
            tris += _fan(_convex_inter(list(s), list(t)))
    return RationalPolygon(tris)


def _convex_minus(piece, q):
    """Convex pieces covering the closure of piece \\ q (q a ccw triangle)."""
    out = []
    rest = list(piece)
    for i in range(3):
        a, b = q[i], q[(i + 1) % 3]
        outside = _clip(rest, b, a)
        if len(outside) >= 3 and _poly_area2(outside) != 0:
            out.append(outside)
        rest = _clip(rest, a, b)
        if len(rest) < 3:
            break
    return out


def difference(P: RationalPolygon, Q: RationalPolygon) -> RationalPolygon:
    """The closure of P \\ Q."""
    pieces = [list(t) for t in P.triangles]
    for q in Q.triangles:
        nxt = []
        for piece in pieces:
            if _convex_inter(piece, list(q)) and _poly_area2(_convex_inter(piece, list(q))) != 0:
                nxt += _convex_minus(piece, q)
            else:
                nxt.append(piece)
        pieces = nxt
    tris = []
    for piece in pieces:
        tris += _fan(piece)
    return RationalPolygon(tris)


def union_disjoint(polys: Iterable[RationalPolygon]) -> RationalPolygon:
    return RationalPolygon([t for P in polys for t in P.triangles])


def contained(P: RationalPolygon, Q: RationalPolygon) -> bool:
    """P is inside Q up to measure zero."""
    # both are interior-disjoint soups, so the overlap sum is the area of P & Q
    return overlap_area(P, Q) == area(P)


def same_region(P: RationalPolygon, Q: RationalPolygon) -> bool:
    if P == Q:
        return True
    return area(P) == area(Q) and contained(P, Q)


def is_almost_disjoint(P: RationalPolygon, Q: RationalPolygon) -> bool:
    return overlap_area(P, Q) == 0


def disjoint_translation(P: RationalPolygon, Q: RationalPolygon) -> tuple:
    """A rational shift v with P + v and Q disjoint (not just almost disjoint)."""
    if P.empty or Q.empty:
        return (Fraction(0), Fraction(0))
    px0, _, _, _ = P.bbox()
    _, _, qx1, _ = Q.bbox()
    return (qx1 - px0 + 1, Fraction(0))


# -- covers and morphisms ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyMorphism:
    """A piecewise translation: pieces of the domain with one shift each."""

    domain: RationalPolygon
    codomain: RationalPolygon
    pieces: tuple

    @classmethod
    def make(cls, domain, codomain, pieces) -> "PolyMorphism":
        return cls(domain, codomain, tuple((P, _pt(v)) for P, v in pieces))

    @classmethod
    def inclusion(cls, P: RationalPolygon, Q: RationalPolygon, shift=(0, 0)) -> "PolyMorphism":
        return cls.make(P, Q, [(P, shift)])

    @classmethod
    def identity(cls, P: RationalPolygon) -> "PolyMorphism":
        return cls.inclusion(P, P)

    @property
    def single(self) -> bool:
        return len({v for _, v in self.pieces}) <= 1

    def images(self) -> list[RationalPolygon]:
        return [P.translate(v) for P, v in self.pieces]

    def validate(self) -> None:
        ps = [P for P, _ in self.pieces]
        if not _is_cover_of(ps, self.domain):
            raise ValueError("pieces do not form a covering family of the domain")
        for img in self.images():
            if not contained(img, self.codomain):
                raise ValueError("a translated piece leaves the codomain")

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "pieces": [{"polygon": P.to_json(), "shift": [_fs(v[0]), _fs(v[1])]} for P, v in self.pieces],
        }

    @classmethod
    def from_json(cls, d) -> "PolyMorphism":
        pieces = [(RationalPolygon.from_json(p["polygon"]), (Fraction(p["shift"][0]), Fraction(p["shift"][1]))) for p in d["pieces"]]
        # the bare {"pieces": ...} form means domain = union of pieces, codomain = union of images
        dom = RationalPolygon.from_json(d["domain"]) if "domain" in d else union_disjoint(P for P, _ in pieces)
        cod = RationalPolygon.from_json(d["codomain"]) if "codomain" in d else union_disjoint(P.translate(v) for P, v in pieces)
        return cls.make(dom, cod, pieces)


def _is_cover_of(pieces: Sequence[RationalPolygon], target: RationalPolygon) -> bool:
    for i, P in enumerate(pieces):
        if not contained(P, target):
            return False
        for Q in pieces[i + 1:]:
            if not is_almost_disjoint(P, Q):
                return False
    return sum((area(P) for P in pieces), Fraction(0)) == area(target)


@dataclass(frozen=True)
class PolyCover:
    target: RationalPolygon
    maps: tuple


def is_cover(c: PolyCover) -> bool:
    """Images of the single-piece maps are pairwise almost disjoint and fill the target."""
    imgs = []
    for m in c.maps:
        if not m.single:
            return False
        if not same_region(m.codomain, c.target):
            return False
        imgs += m.images()
    return _is_cover_of(imgs, c.target)


def compose(g: PolyMorphism, f: PolyMorphism) -> PolyMorphism:
    """``g . f`` on the common refinement of the decompositions."""
    if not same_region(f.codomain, g.domain):
        raise ValueError("morphisms are not composable")
    pieces = []
    for A, u in f.pieces:
        for B, w in g.pieces:
            part = intersection(A, B.translate((-u[0], -u[1])))
            if area(part) > 0:
                pieces.append((part, (u[0] + w[0], u[1] + w[1])))
    return PolyMorphism.make(f.domain, g.codomain, pieces)


def morphisms_equal(f: PolyMorphism, g: PolyMorphism) -> bool:
    """Equal shifts wherever the two decompositions overlap in positive area."""
    if not (same_region(f.domain, g.domain) and same_region(f.codomain, g.codomain)):
        return False
    for A, u in f.pieces:
        for B, w in g.pieces:
            if u != w and overlap_area(A, B) > 0:
                return False
    return True


def is_invertible(f: PolyMorphism) -> bool:
    return _is_cover_of(f.images(), f.codomain)


def inverse(f: PolyMorphism) -> PolyMorphism:
    if not is_invertible(f):
        raise ValueError("morphism is not invertible")
    pieces = [(P.translate(v), (-v[0], -v[1])) for P, v in f.pieces]
    return PolyMorphism.make(f.codomain, f.domain, pieces)


def complement_polytope(g: PolyMorphism) -> tuple[RationalPolygon, PolyMorphism]:
    """closure(Q \\ gP) with its inclusion into Q."""
    if not g.single:
        raise ValueError("complements are taken of polytope inclusions only")
    img = union_disjoint(g.images())
    if not contained(img, g.codomain):
        raise ValueError("image is not contained in the codomain")
    rest = difference(g.codomain, img)
    return rest, PolyMorphism.inclusion(rest, g.codomain)


def _preimage(j: PolyMorphism, S: RationalPolygon) -> RationalPolygon:
    return union_disjoint(intersection(B, S.translate((-w[0], -w[1]))) for B, w in j.pieces)


def _restrict(j: PolyMorphism, sub: RationalPolygon, codomain: RationalPolygon) -> PolyMorphism:
    pieces = []
    for B, w in j.pieces:
        part = intersection(B, sub)
        if area(part) > 0:
            pieces.append((part, w))
    return PolyMorphism.make(sub, codomain, pieces)


def check_polytope_square(square) -> bool:
    """``(f, h, j, g)`` with f, g polytope inclusions: pullback and invertible complement map."""
    f, h, j, g = square
    if not (f.single and g.single):
        raise ValueError("horizontal legs must be polytope inclusions")
    for a, b, what in ((f.domain, h.domain, "A"), (f.codomain, j.domain, "B"), (h.codomain, g.domain, "C"), (j.codomain, g.codomain, "D")):
        if not same_region(a, b):
            raise ValueError(f"square shape mismatch at {what}")
    if not morphisms_equal(compose(j, f), compose(g, h)):
        return False
    fA = union_disjoint(f.images())
    gC = union_disjoint(g.images())
    if not same_region(fA, _preimage(j, gC)):
        return False
    Bc, _ = complement_polytope(f)
    Dc, _ = complement_polytope(g)
    jc = _restrict(j, Bc, Dc)
    if not all(contained(img, Dc) for img in jc.images()):
        return False
    return is_invertible(jc)


def complement_square(g: PolyMorphism) -> tuple:
    """The square (0 -> Q \\ P, 0 -> P, Q \\ P -> Q, g)."""
    rest, inc = complement_polytope(g)
    e = RationalPolygon()
    return (PolyMorphism.make(e, rest, []), PolyMorphism.make(e, g.domain, []), inc, g)


# -- random covers and the area invariant --------------------------------------------------------------


def _rand_q(rng, lo=0, hi=1, den=8) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def chord_cut(rng: random.Random, piece: Sequence) -> tuple[list, list]:
    """Split a convex polygon by a random line through two interior points."""
    tri = _fan(list(piece))
    while True:
        pts = []
        for _ in range(2):
            t = tri[rng.randrange(len(tri))]
            w = [Fraction(rng.randint(1, 6)) for _ in range(3)]
            s = sum(w)
            pts.append((sum(w[k] * t[k][0] for k in range(3)) / s, sum(w[k] * t[k][1] for k in range(3)) / s))
        if pts[0] != pts[1]:
            break
    a, b = pts
    left, right = _clip(list(piece), a, b), _clip(list(piece), b, a)
    return left, right


def random_cover(rng: random.Random, cuts: int = 3) -> tuple[RationalPolygon, list[list]]:
    """Nested chord cuts of a random rectangle; returns the rectangle and convex pieces."""
    w = Fraction(rng.randint(1, 4), rng.randint(1, 2))
    h = Fraction(rng.randint(1, 4), rng.randint(1, 2))
    base = [(Fraction(0), Fraction(0)), (w, Fraction(0)), (w, h), (Fraction(0), h)]
    pieces = [base]
    for _ in range(cuts):
        k = rng.randrange(len(pieces))
        l, r = chord_cut(rng, pieces.pop(k))
        pieces += [p for p in (l, r) if len(p) >= 3 and _poly_area2(p) != 0]
    return RationalPolygon.from_convex(base), pieces


def _scatter(rng, polys: Sequence[RationalPolygon], avoid: RationalPolygon):
    """Translate each polygon far apart; returns shifted polygons and the shifts used."""
    out, shifts = [], []
    x = avoid.bbox()[2] + 2 if not avoid.empty else Fraction(0)
    for P in polys:
        x0, y0, x1, _ = P.bbox()
        v = (x - x0, Fraction(rng.randint(-3, 3)) - y0)
        out.append(P.translate(v))
        shifts.append(v)
        x += x1 - x0 + 1
    return out, shifts


def random_square(rng: random.Random, D: RationalPolygon, pieces: Sequence[RationalPolygon]) -> tuple:
    """A distinguished square built from a cover of D; vertical maps scatter and reassemble pieces."""
    n = len(pieces)
    idx = list(range(n))
    rng.shuffle(idx)
    k = rng.randint(0, n)
    in_C = set(idx[:k])
    in_B = set(range(n)) - in_C | {i for i in in_C if rng.random() < 0.5}
    in_A = in_B & in_C
    C = union_disjoint(pieces[i] for i in sorted(in_C))
    Bl = sorted(in_B)
    moved, shifts = _scatter(rng, [pieces[i] for i in Bl], D)
    B = union_disjoint(moved)
    sh = dict(zip(Bl, shifts))
    A = union_disjoint(pieces[i].translate(sh[i]) for i in sorted(in_A))
    f = PolyMorphism.inclusion(A, B)
    j = PolyMorphism.make(B, D, [(pieces[i].translate(sh[i]), (-sh[i][0], -sh[i][1])) for i in Bl])
    h = PolyMorphism.make(A, C, [(pieces[i].translate(sh[i]), (-sh[i][0], -sh[i][1])) for i in sorted(in_A)])
    g = PolyMorphism.inclusion(C, D)
    return f, h, j, g


def area_respects_k0(seed: int = 7, trials: int = 100, cuts: int = 3) -> AxiomReport:
    """Random nested chord-cut covers: cover relations and square relations respect area."""
    rng = random.Random(seed)
    rep = AxiomReport()
    vc = rep.add(Verdict("cover_area", mode="sampled"))
    vs = rep.add(Verdict("square_area", mode="sampled"))
    vd = rep.add(Verdict("square_distinguished", mode="sampled"))
    for t in range(trials):
        D, convex = random_cover(rng, cuts)
        polys = [RationalPolygon.from_convex(p) for p in convex]
        moved, shifts = _scatter(rng, polys, D)
        maps = tuple(PolyMorphism.inclusion(P, D, (-v[0], -v[1])) for P, v in zip(moved, shifts))
        vc.checked += 1
        if not is_cover(PolyCover(D, maps)):
            vc.fail({"trial": t, "target": D.to_json()}, "generated family is not a cover")
        elif area(D) != sum((area(P) for P in moved), Fraction(0)):
            vc.fail({"trial": t, "target": D.to_json()}, "area is not additive on the cover")
        sq = random_square(rng, D, polys)
        vd.checked += 1
        vs.checked += 1
        if not check_polytope_square(sq):
            vd.fail({"trial": t, "square": [m.to_json() for m in sq]}, "generated square is not distinguished")
        f, h, j, g = sq
        if area(f.domain) + area(g.codomain) != area(f.codomain) + area(g.domain):
            vs.fail({"trial": t, "square": [m.to_json() for m in sq]}, "area(A) + area(D) differs from area(B) + area(C)")
    return rep
