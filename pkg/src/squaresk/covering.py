"""Categories with covering families, assemblers, W(A) and the minimal squares category C^min.

C^min is built over formal multisets of non-initial objects.  A multiset is a
sorted tuple of object ids; a morphism between two of them is an index map
``alpha`` plus one base morphism per source position.  The ambient category of
C^min is its vertical category E itself, so no concrete coproducts are needed.
"""

from __future__ import annotations

import random
from collections import defaultdict
from collections.abc import Mapping
from itertools import combinations, combinations_with_replacement, product
from typing import Iterable

from .cat import (
    FinCategory,
    PullbackCone,
    StructuralError,
    ValidationReport,
    enumerate_pullback,
    is_initial,
    is_mono,
    is_strict_initial,
)
from .report import FAIL, INCONCLUSIVE, AxiomReport, Verdict
from .squares import (
    ComplementMapError,
    SquaresCategory,
    induced_complement_map,
    is_weak_equivalence,
    pullback_squares,
)

Family = tuple[str, ...]


class CovCategory:
    """A finite category with a list of covering families.

    Families are stored per target as sorted tuples of morphism ids; maps out of
    objects isomorphic to the initial object are dropped, since the family
    ``{empty -> empty}_I`` is covering for every ``I`` by the ``initial_covers`` flag.
    """

    def __init__(
        self,
        base: FinCategory,
        initial: str,
        families: Iterable[tuple[str, Iterable[str]]],
        coproducts: Iterable[tuple[str, str, str, str, str]] | None = None,
        initial_covers: bool = True,
    ):
        self.base = base
        self.initial = initial
        self.initial_covers = initial_covers
        self.coproducts = [tuple(r) for r in coproducts] if coproducts is not None else None
        if initial not in base.objects:
            raise StructuralError(f"initial object {initial} is not an object")
        self.nonempty = tuple(x for x in base.objects if not base.isomorphic(x, initial))
        seen = set()
        self.families: list[tuple[str, Family]] = []
        for target, maps in families:
            maps = list(maps)
            for m in maps:
                if m not in base.morphisms:
                    raise StructuralError(f"family on {target} mentions unknown morphism {m}")
                if base.dst(m) != target:
                    raise StructuralError(f"family on {target} contains {m} with target {base.dst(m)}")
            key = (target, self._normalize(maps))
            if key not in seen:
                seen.add(key)
                self.families.append(key)
        self.families.sort()
        self.by_target: dict[str, list[Family]] = defaultdict(list)
        for t, fam in self.families:
            self.by_target[t].append(fam)
        self._family_sets = {t: set(fs) for t, fs in self.by_target.items()}

    def _normalize(self, maps) -> Family:
        return tuple(sorted(m for m in maps if self.base.src(m) in self.nonempty))

    def is_covering(self, target: str, maps: Iterable[str]) -> bool:
        fam = self._normalize(maps)
        if target not in self.nonempty:
            return self.initial_covers and not fam
        return fam in self._family_sets.get(target, ())

    def __repr__(self) -> str:
        return f"CovCategory({len(self.base.objects)} objects, {len(self.families)} families)"

    def to_json(self) -> dict:
        out = self.base.to_json()
        out["initial"] = self.initial
        out["families"] = [{"target": t, "maps": list(f)} for t, f in self.families]
        if self.coproducts is not None:
            out["coproducts"] = [list(r) for r in self.coproducts]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "CovCategory":
        base = FinCategory.from_json(data)
        try:
            fams = [(str(f["target"]), [str(m) for m in f["maps"]]) for f in data["families"]]
            cop = None
            if "coproducts" in data:
                cop = [tuple(str(x) for x in r) for r in data["coproducts"]]
                if any(len(r) != 5 for r in cop):
                    raise ValueError("coproduct rows have five entries")
            return cls(base, str(data["initial"]), fams, cop)
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed covering-family JSON: {exc!r}") from exc


# -- validation -----------------------------------------------------------------


def validate_covering(A: CovCategory) -> ValidationReport:
    c = A.base
    rep = ValidationReport()
    if not is_initial(c, A.initial) or not is_strict_initial(c, A.initial):
        rep.structural.append(f"{A.initial} is not a strict initial object")
        return rep
    for x in A.nonempty:
        fam = (c.identity(x),)
        if not A.is_covering(x, fam):
            rep.violations.append(f"identity family of {x} is not covering")
            rep.witnesses.append({"rule": "identity family", "object": x})
    if not A.initial_covers:
        rep.violations.append("families {empty -> empty}_I are not declared covering")
        rep.witnesses.append({"rule": "initial covers"})
    for target, fam in A.families:
        choices = [A.by_target.get(c.src(f), []) for f in fam]
        for pick in product(*choices):
            comp = [c.comp[f, g] for f, sub in zip(fam, pick) for g in sub]
            if not A.is_covering(target, comp):
                rep.violations.append(f"composite of family {list(fam)} with {[list(p) for p in pick]} missing")
                rep.witnesses.append({"rule": "composition", "target": target, "family": sorted(comp)})
    return rep


# -- assemblers ---------------------------------------------------------------


def _disjoint_pair(A: CovCategory, f: str, g: str) -> bool:
    pb = A.base.pullback(f, g)
    return pb is not None and A.base.isomorphic(pb.apex, A.initial)


def _factors(c: FinCategory, h: str, fam: Family) -> bool:
    x = c.src(h)
    return any(c.comp[f, u] == h for f in fam for u in c.hom(x, c.src(f)))


def is_assembler(A: CovCategory, refinement_bound: int = 4) -> AxiomReport:
    """Assembler axioms, with the common-refinement search bounded by family size."""
    c = A.base
    rep = AxiomReport()
    v = rep.add(Verdict("empty_cover"))
    v.checked = 1
    if not A.initial_covers:
        v.fail({"object": A.initial}, "the empty family does not cover the initial object")
    v = rep.add(Verdict("mono"))
    for m in sorted(c.morphisms):
        v.checked += 1
        if not is_mono(c, m):
            v.fail({"morphism": m}, f"{m} is not a monomorphism")
            break
    v = rep.add(Verdict("disjoint"))
    for t, fam in A.families:
        for a, b in combinations(range(len(fam)), 2):
            v.checked += 1
            if not _disjoint_pair(A, fam[a], fam[b]):
                v.fail({"target": t, "maps": [fam[a], fam[b]]}, "covering maps overlap")
                break
    v = rep.add(Verdict("refinement"))
    for t in sorted(A.by_target):
        fams = A.by_target[t]
        for b1, b2 in combinations(fams, 2):
            v.checked += 1
            refs = [r for r in fams if all(_factors(c, h, b1) and _factors(c, h, b2) for h in r)]
            if not refs:
                v.fail({"target": t, "families": [list(b1), list(b2)]}, "no listed common refinement")
            elif min(len(r) for r in refs) > refinement_bound and v.status != FAIL:
                v.status = INCONCLUSIVE
                v.witness = {"target": t, "families": [list(b1), list(b2)]}
                v.detail = f"common refinements exist only above size {refinement_bound}"
    return rep


# -- coproducts and (C1)-(C5) -----------------------------------------------------


def _disjoint_cocones(A: CovCategory, pieces: tuple[str, ...]):
    c = A.base
    for y in c.objects:
        for legs in product(*[c.hom(p, y) for p in pieces]):
            if all(_disjoint_pair(A, legs[a], legs[b]) for a, b in combinations(range(len(legs)), 2)):
                yield y, legs


def _is_initial_cocone(A: CovCategory, cone, cocones) -> bool:
    c = A.base
    y, legs = cone
    for y2, legs2 in cocones:
        n = sum(1 for u in c.hom(y, y2) if all(c.comp[u, l] == l2 for l, l2 in zip(legs, legs2)))
        if n != 1:
            return False
    return True


def restricted_coproduct(A: CovCategory, pieces: Iterable[str]):
    """Restricted coproduct of the given objects over the initial object, or ``None``."""
    pieces = tuple(pieces)
    cocones = sorted(_disjoint_cocones(A, pieces))
    for cone in cocones:
        if _is_initial_cocone(A, cone, cocones):
            return cone
    return None


def _cover_coproducts(A: CovCategory):
    """Restricted coproduct of the sources of each family with two or more pieces."""
    c = A.base
    out = {}
    for t, fam in A.families:
        if len(fam) >= 2:
            out[t, fam] = restricted_coproduct(A, [c.src(f) for f in fam])
    return out


def _refines_w(A: CovCategory, fine: Family, coarse: Family) -> bool:
    """Is there a W(A)-morphism ``{src(fine)} -> {src(coarse)}`` over the common target?"""
    c = A.base
    options = []
    for h in fine:
        opts = [(i, u) for i, f in enumerate(coarse) for u in c.hom(c.src(h), c.src(f)) if c.comp[f, u] == h]
        if not opts:
            return False
        options.append(opts)
    for pick in product(*options):
        fibers = defaultdict(list)
        for i, u in pick:
            fibers[i].append(u)
        if all(A.is_covering(c.src(f), fibers.get(i, [])) for i, f in enumerate(coarse)):
            return True
    return False


def common_refinement(A: CovCategory, target: str, f1: Family, f2: Family) -> Family | None:
    for r in A.by_target.get(target, []):
        if _refines_w(A, r, f1) and _refines_w(A, r, f2):
            return r
    return None


def check_C_conditions(A: CovCategory) -> AxiomReport:
    c = A.base
    rep = AxiomReport()
    found = _cover_coproducts(A)

    v1 = rep.add(Verdict("C1"))
    v2 = rep.add(Verdict("C2"))
    rows = list(A.coproducts or [])
    for a, b, ab, inl, inr in rows:
        v1.checked += 1
        if any(m not in c.morphisms for m in (inl, inr)) or c.morphisms[inl] != (a, ab) or c.morphisms[inr] != (b, ab):
            v1.fail({"row": [a, b, ab, inl, inr]}, "coproduct row has malformed inclusions")
            continue
        cocones = sorted(_disjoint_cocones(A, (a, b)))
        if (ab, (inl, inr)) not in cocones or not _is_initial_cocone(A, (ab, (inl, inr)), cocones):
            v1.fail({"row": [a, b, ab, inl, inr]}, "row is not a restricted coproduct")
            continue
        if a in A.nonempty and b in A.nonempty:
            v2.checked += 1
            if not A.is_covering(ab, (inl, inr)):
                v2.fail({"row": [a, b, ab, inl, inr]}, "coproduct inclusions are not a covering family")
    for (t, fam), cone in sorted(found.items()):
        v1.checked += 1
        if cone is None:
            v1.fail({"target": t, "pieces": [c.src(f) for f in fam]}, "pieces of a cover have no restricted coproduct")
            continue
        v2.checked += 1
        y, legs = cone
        if not A.is_covering(y, legs):
            v2.fail({"coproduct": y, "inclusions": list(legs)}, "coproduct inclusions are not a covering family")

    v = rep.add(Verdict("C3"))
    for t, fam in A.families:
        for a, b in combinations(range(len(fam)), 2):
            v.checked += 1
            if not _disjoint_pair(A, fam[a], fam[b]):
                v.fail({"target": t, "maps": [fam[a], fam[b]]}, "pairwise pullback is not initial")
                break

    v = rep.add(Verdict("C4"))
    for (t, fam), cone in sorted(found.items()):
        if cone is None:
            continue
        v.checked += 1
        y, legs = cone
        us = [u for u in c.hom(y, t) if all(c.comp[u, l] == f for l, f in zip(legs, fam))]
        if len(us) != 1 or not is_mono(c, us[0]):
            v.fail({"target": t, "family": list(fam)}, "induced map from the coproduct is not a monomorphism")
    for t, fam in A.families:
        if len(fam) == 1:
            v.checked += 1
            if not is_mono(c, fam[0]):
                v.fail({"target": t, "family": list(fam)}, "single covering map is not a monomorphism")

    v = rep.add(Verdict("C5"))
    for t in sorted(A.by_target):
        for f1, f2 in combinations(A.by_target[t], 2):
            v.checked += 1
            if common_refinement(A, t, f1, f2) is None:
                v.fail({"target": t, "families": [list(f1), list(f2)]}, "no common refinement among listed families")
    return rep


# -- multisets ------------------------------------------------------------------


def ms_name(t: tuple[str, ...]) -> str:
    return "[" + ",".join(t) + "]"


class _LazyComp(Mapping):
    def __init__(self, cat: "CminCategory"):
        self.cat = cat

    def __getitem__(self, key):
        g, f = key
        return self.cat._compose(g, f)

    def __iter__(self):
        c = self.cat
        for f in c.morphisms:
            for g in c.arrows_from(c.dst(f)):
                yield (g, f)

    def __len__(self):
        c = self.cat
        return sum(len(c.arrows_from(c.dst(f))) for f in c.morphisms)


class CminCategory(FinCategory):
    """The vertical category E of C^min, truncated to multisets of size at most ``bound``."""

    def __init__(self, A: CovCategory, bound: int):
        if bound < 1:
            raise ValueError("size_bound must be at least 1")
        self.cov = A
        self.bound = bound
        base = A.base
        tuples = [()]
        for k in range(1, bound + 1):
            tuples.extend(combinations_with_replacement(sorted(A.nonempty), k))
        self.tuples = tuples
        self.name_of = {t: ms_name(t) for t in tuples}
        self.tuple_of = {n: t for t, n in self.name_of.items()}
        admissible: dict[str, set] = defaultdict(set)
        for t, fam in A.families:
            for r in range(len(fam) + 1):
                admissible[t].update(combinations(fam, r))
        self.data: dict[str, tuple] = {}
        self._comp_cache: dict[tuple[str, str], str] = {}
        self.key_to_id: dict[tuple, str] = {}
        morphisms = {}
        for I in tuples:
            for J in tuples:
                for alpha in product(range(len(J)), repeat=len(I)):
                    homs = [base.hom(I[i], J[alpha[i]]) for i in range(len(I))]
                    for comps in product(*homs):
                        fib = defaultdict(list)
                        for i, a in enumerate(alpha):
                            fib[a].append(comps[i])
                        if all(tuple(sorted(fs)) in admissible.get(J[a], ()) for a, fs in fib.items()):
                            key = (I, J, alpha, comps)
                            mid = self._id(key)
                            self.data[mid] = key
                            self.key_to_id[key] = mid
                            morphisms[mid] = (self.name_of[I], self.name_of[J])
        identities = {}
        for t in tuples:
            key = (t, t, tuple(range(len(t))), tuple(base.identity(x) for x in t))
            identities[self.name_of[t]] = self.key_to_id[key]
        super().__init__([self.name_of[t] for t in tuples], morphisms, identities, _LazyComp(self))
        self.M = frozenset(m for m, (I, J, a, cs) in self.data.items() if self._is_inclusion(I, J, a, cs))

    def _id(self, key) -> str:
        I, J, alpha, comps = key
        body = ",".join(f"{a}:{cmp}" for a, cmp in zip(alpha, comps))
        return f"{ms_name(I)}->{ms_name(J)}<{body}>"

    def _is_inclusion(self, I, J, alpha, comps) -> bool:
        base = self.cov.base
        return len(set(alpha)) == len(alpha) and all(cmp == base.identity(x) for x, cmp in zip(I, comps))

    def _compose(self, g: str, f: str) -> str:
        key = (g, f)
        hit = self._comp_cache.get(key)
        if hit is None:
            hit = self._comp_cache[key] = self._compose_raw(g, f)
        return hit

    def _compose_raw(self, g: str, f: str) -> str:
        I, J, a, cs = self.data[f]
        J2, K, b, ds = self.data[g]
        if J != J2:
            raise KeyError((g, f))
        base = self.cov.base
        key = (I, K, tuple(b[x] for x in a), tuple(base.comp[ds[a[i]], cs[i]] for i in range(len(I))))
        return self.key_to_id[key]

    def make(self, I, J, alpha, comps) -> str:
        """Id of the morphism with the given data (``KeyError`` if it is not in E)."""
        return self.key_to_id[(tuple(I), tuple(J), tuple(alpha), tuple(comps))]

    def inclusion(self, I, J, alpha) -> str:
        base = self.cov.base
        return self.make(I, J, alpha, [base.identity(x) for x in I])

    def is_cover_collapse(self, mid: str) -> bool:
        """Is every fiber of ``mid`` a full covering family (a coproduct of cover-collapse maps)?"""
        I, J, a, cs = self.data[mid]
        fib = defaultdict(list)
        for i, x in enumerate(a):
            fib[x].append(cs[i])
        return all(self.cov.is_covering(J[x], fib.get(x, [])) for x in range(len(J)))

    def automorphisms(self, x: str) -> list[str]:
        return self.isomorphisms(x, x)

    def pullback(self, f: str, g: str) -> PullbackCone | None:
        key = (f, g)
        if key in self._pullbacks:
            return self._pullbacks[key]
        if g in self.M:
            res = self._pullback_along_inclusion(f, g)
        elif f in self.M:
            res = self._pullback_along_inclusion(g, f)
            res = PullbackCone(res.apex, res.right, res.left)
        else:
            res = enumerate_pullback(self, f, g)
        self._pullbacks[key] = res
        return res

    def _pullback_along_inclusion(self, f: str, g: str) -> PullbackCone:
        # f: B -> D arbitrary, g: C >-> D an inclusion; the apex keeps the positions of B landing in C
        B, D, beta, ds = self.data[f]
        C, _, gamma, _ = self.data[g]
        pos = {l: k for k, l in enumerate(gamma)}
        keep = [t for t in range(len(B)) if beta[t] in pos]
        P = tuple(B[t] for t in keep)
        left = self.inclusion(P, B, keep)
        right = self.make(P, C, [pos[beta[t]] for t in keep], [ds[t] for t in keep])
        name = self.name_of[P]
        best = None
        for u in self.automorphisms(name):
            cand = (self.comp[left, u], self.comp[right, u])
            if best is None or cand < best:
                best = cand
        return PullbackCone(name, *best)


class CminSquares(SquaresCategory):
    """C^min as a squares category with complements; ``ambient`` is a :class:`CminCategory`."""

    ambient: CminCategory

    @property
    def cov(self) -> CovCategory:
        return self.ambient.cov

    @property
    def bound(self) -> int:
        return self.ambient.bound

    def with_distinguished(self, squares) -> "CminSquares":
        return CminSquares(self.ambient, self.E, self.M, self.basepoint, squares, self.complements)


def build_cmin(A: CovCategory, size_bound: int = 2) -> CminSquares:
    """Symbolic C^min on multisets of at most ``size_bound`` non-initial objects."""
    if size_bound < 1:
        raise ValueError("size_bound must be at least 1")
    c = CminCategory(A, size_bound)
    compl = {}
    for m in sorted(c.M):
        I, J, a, _ = c.data[m]
        rest = [x for x in range(len(J)) if x not in set(a)]
        R = tuple(J[x] for x in rest)
        compl[m] = (c.name_of[R], c.inclusion(R, J, rest))
    squares = set()
    for dname in c.objects:
        into = c.arrows_into(dname)
        gs = [g for g in into if g in c.M]
        for g in gs:
            _, L, gamma, _ = c.data[g]
            outside = [x for x in range(len(L)) if x not in set(gamma)]
            for j in into:
                B, _, beta, ds = c.data[j]
                # the complement map is j restricted over the positions outside C
                ok = True
                for x in outside:
                    fib = [ds[t] for t in range(len(B)) if beta[t] == x]
                    if not A.is_covering(L[x], fib):
                        ok = False
                        break
                if not ok:
                    continue
                pb = c.pullback(j, g)
                for u in c.automorphisms(pb.apex):
                    f = c.comp[pb.left, u]
                    if f in c.M:
                        squares.add((f, c.comp[pb.right, u], j, g))
    return CminSquares(c, c.morphisms.keys(), c.M, c.name_of[()], squares, compl)


# -- W(A) ------------------------------------------------------------------------


def wcat_enumerate(A: CovCategory, k: int):
    """Objects (sorted tuples, length <= k) and morphisms ``(src, dst, alpha, comps)`` of W(A)."""
    base = A.base
    objs = [()]
    for n in range(1, k + 1):
        objs.extend(combinations_with_replacement(sorted(A.nonempty), n))
    morphisms = []
    for I in objs:
        for J in objs:
            for alpha in product(range(len(J)), repeat=len(I)):
                homs = [base.hom(I[i], J[alpha[i]]) for i in range(len(I))]
                for comps in product(*homs):
                    fib = defaultdict(list)
                    for i, a in enumerate(alpha):
                        fib[a].append(comps[i])
                    if all(A.is_covering(J[x], fib.get(x, [])) for x in range(len(J))):
                        morphisms.append((I, J, alpha, comps))
    return objs, morphisms


def wcat_compose(A: CovCategory, g, f):
    I, J, a, cs = f
    J2, K, b, ds = g
    if J != J2:
        raise ValueError("W-morphisms are not composable")
    base = A.base
    return (I, K, tuple(b[x] for x in a), tuple(base.comp[ds[a[i]], cs[i]] for i in range(len(I))))


# -- (B1)-(B11) ------------------------------------------------------------------


def _shuffle(a: tuple, b: tuple) -> tuple[tuple, list[int]]:
    """Sorted concatenation and the position of each entry of ``a + b`` in it (stable)."""
    tagged = sorted(range(len(a) + len(b)), key=lambda i: ((a + b)[i], i))
    pos = [0] * len(tagged)
    for new, old in enumerate(tagged):
        pos[old] = new
    return tuple((a + b)[i] for i in tagged), pos


def cmin_tensor(c: CminCategory, f: str, g: str) -> str | None:
    """Coproduct of two E-morphisms, or ``None`` if it leaves the size bound."""
    I1, J1, a1, c1 = c.data[f]
    I2, J2, a2, c2 = c.data[g]
    if len(J1) + len(J2) > c.bound or len(I1) + len(I2) > c.bound:
        return None
    I, pi = _shuffle(I1, I2)
    J, pj = _shuffle(J1, J2)
    alpha = [0] * len(I)
    comps = [None] * len(I)
    cat_alpha = list(a1) + [x + len(J1) for x in a2]
    cat_comps = list(c1) + list(c2)
    for old in range(len(I)):
        alpha[pi[old]] = pj[cat_alpha[old]]
        comps[pi[old]] = cat_comps[old]
    return c.make(I, J, alpha, comps)


def coproduct_inclusions(c: CminCategory, a: tuple, b: tuple) -> tuple[str, str]:
    ab, pos = _shuffle(a, b)
    return c.inclusion(a, ab, pos[: len(a)]), c.inclusion(b, ab, pos[len(a):])


def _pairs(items, samples, rng, sizes, bound):
    """Pairs of items whose size vectors add up to at most ``bound`` entrywise.

    Items are bucketed by size vector so the fitting pairs are never listed when
    there are more than ``samples`` of them; then ``samples`` pairs are drawn.
    """
    buckets = defaultdict(list)
    for x in items:
        buckets[sizes(x)].append(x)
    keys = sorted(buckets)
    compat = [(a, b) for a in keys for b in keys if all(p + q <= bound for p, q in zip(a, b))]
    total = sum(len(buckets[a]) * len(buckets[b]) for a, b in compat)
    if total <= samples:
        return [(x, y) for a, b in compat for x in buckets[a] for y in buckets[b]], "exhaustive"
    weights = [len(buckets[a]) * len(buckets[b]) for a, b in compat]
    out = []
    for a, b in rng.choices(compat, weights=weights, k=samples):
        out.append((rng.choice(buckets[a]), rng.choice(buckets[b])))
    return out, "sampled"


def check_B_conditions(C: SquaresCategory, A: CovCategory, samples: int = 2000, seed: int = 0) -> AxiomReport:
    """(B1)-(B11) for a C^min-style squares category over ``A``.

    Quantifiers over the truncated object set are exhausted; pair quantifiers with
    more than ``samples`` instances are sampled with ``seed``.
    """
    c = C.ambient
    if not isinstance(c, CminCategory) or c.cov.base is not A.base and c.cov.base.to_json() != A.base.to_json():
        raise StructuralError("squares category and covering category do not share an ambient category")
    rng = random.Random(seed)
    rep = AxiomReport()

    def size(o):
        return len(c.tuple_of[o])

    # B1: the coproduct is a monoidal structure on distinguished squares
    v = rep.add(Verdict("B1"))
    sq = sorted(C.distinguished)

    def sizes(xs):
        return tuple(n for x in xs for n in (size(c.src(x)), size(c.dst(x))))

    pairs, v.mode = _pairs(sq, samples, rng, sizes, c.bound)
    for s, t in pairs:
        v.checked += 1
        prod = tuple(cmin_tensor(c, a, b) for a, b in zip(s, t))
        if prod not in C.distinguished:
            v.fail({"squares": [list(s), list(t)], "product": list(prod)}, "coproduct of distinguished squares")
            break

    weqs = [e for e in sorted(C.E) if is_weak_equivalence(C, e)]
    weq_set = set(weqs)

    v = rep.add(Verdict("B2"))
    _, wmors = wcat_enumerate(A, c.bound)
    for key in wmors:
        v.checked += 1
        mid = c.key_to_id.get(key)
        if mid is None or mid not in weq_set:
            v.fail({"w_morphism": [list(key[0]), list(key[1]), list(key[2]), list(key[3])]}, "cover is not a weak equivalence")
            break

    v = rep.add(Verdict("B3"))
    pairs, v.mode = _pairs(weqs, samples, rng, lambda x: sizes((x,)), c.bound)
    for x, y in pairs:
        v.checked += 1
        t = cmin_tensor(c, x, y)
        if t not in weq_set:
            v.fail({"maps": [x, y]}, "coproduct of weak equivalences is not one")
            break

    v4 = rep.add(Verdict("B4"))
    v5 = rep.add(Verdict("B5"))
    for a in c.tuples:
        for b in c.tuples:
            if len(a) + len(b) > c.bound:
                continue
            v4.checked += 1
            v5.checked += 1
            inl, inr = coproduct_inclusions(c, a, b)
            if inl not in C.M or inl not in C.E:
                v4.fail({"objects": [ms_name(a), ms_name(b)]}, "coproduct inclusion is not both horizontal and vertical")
            elif C.complements[inl] != (ms_name(b), inr):
                v5.fail({"objects": [ms_name(a), ms_name(b)]}, "complement of a coproduct inclusion is not the other inclusion")

    v = rep.add(Verdict("B6"))
    for s in sorted(set(pullback_squares(C, C.E))):
        v.checked += 1
        try:
            k = induced_complement_map(C, None, s)
        except ComplementMapError:
            continue
        if k in weq_set and s not in C.distinguished:
            v.fail({"square": list(s)}, "complement map is a weak equivalence but the square is not distinguished")
            break

    v = rep.add(Verdict("B7"))
    for w in weqs:
        v.checked += 1
        if not is_mono(c, w):
            v.fail({"morphism": w}, "weak equivalence is not a monomorphism")
            break

    v = rep.add(Verdict("B8"))
    for t in c.tuples:
        if not t:
            continue
        v.checked += 1
        incl = [c.inclusion((x,), t, [i]) for i, x in enumerate(t)]
        if not _fold_is_cover(c, incl, t):
            v.fail({"object": ms_name(t)}, "coproduct inclusions do not form a covering family")
            break

    v = rep.add(Verdict("B9"))
    for m in sorted(C.M):
        v.checked += 1
        obj, eps = C.complements[m]
        if not _fold_is_cover(c, [m, eps], c.tuple_of[c.dst(m)]):
            v.fail({"morphism": m}, "map and complement do not form a covering family")
            break

    v = rep.add(Verdict("B10"))
    for w in weqs:
        v.checked += 1
        I = c.tuple_of[c.src(w)]
        pieces = [c.comp[w, c.inclusion((x,), I, [i])] for i, x in enumerate(I)]
        if not _fold_is_cover(c, pieces, c.tuple_of[c.dst(w)]):
            v.fail({"morphism": w}, "no family turning the weak equivalence into a cover")
            break

    v = rep.add(Verdict("B11"))
    for t in sorted(A.by_target):
        for f1, f2 in combinations(A.by_target[t], 2):
            v.checked += 1
            if common_refinement(A, t, f1, f2) is None:
                v.fail({"target": t, "families": [list(f1), list(f2)]}, "no common refinement")
    return rep


def _fold_is_cover(c: CminCategory, maps: list[str], target: tuple) -> bool:
    """Do the E-maps ``maps`` into ``target`` jointly form a cover collapse onto it?"""
    fib = defaultdict(list)
    for m in maps:
        I, J, a, cs = c.data[m]
        if J != tuple(target):
            return False
        for i, x in enumerate(a):
            fib[x].append(cs[i])
    return all(c.cov.is_covering(target[x], fib.get(x, [])) for x in range(len(target)))


def stabilization_ok(A: CovCategory, bounds=(2, 3)) -> bool:
    from .k0 import k0_invariants, k0_presentation_squares

    inv = [k0_invariants(k0_presentation_squares(build_cmin(A, b))) for b in bounds]
    return all(x == inv[0] for x in inv)


__all__ = [
    "CovCategory",
    "CminCategory",
    "CminSquares",
    "build_cmin",
    "check_B_conditions",
    "check_C_conditions",
    "cmin_tensor",
    "common_refinement",
    "coproduct_inclusions",
    "is_assembler",
    "ms_name",
    "restricted_coproduct",
    "validate_covering",
    "wcat_compose",
    "wcat_enumerate",
]
