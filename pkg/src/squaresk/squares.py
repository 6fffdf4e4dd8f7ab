"""Squares categories over a finite ambient category and the complement axioms (A1)-(A8).

A square is stored as a tuple ``(f, h, j, g)`` of morphism ids::

    A --f--> B
    |h       |j
    v        v
    C --g--> D

with ``f, g`` horizontal (in ``M``) and ``h, j`` vertical (in ``E``).
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Mapping

from .cat import FinCategory, StructuralError, ValidationReport, is_mono, is_pullback_square
from .report import FAIL, AxiomReport, Verdict

Square = tuple[str, str, str, str]


class ComplementMapError(ValueError):
    """The morphism demanded by (A5) does not exist or is not unique."""

    def __init__(self, square, candidates):
        self.square = square
        self.candidates = list(candidates)
        kind = "no" if not self.candidates else f"{len(self.candidates)}"
        super().__init__(f"{kind} candidate complement maps for square {square}")


class SquaresCategory:
    def __init__(
        self,
        ambient: FinCategory,
        E: Iterable[str],
        M: Iterable[str],
        basepoint: str,
        distinguished: Iterable[Square],
        complements: Mapping[str, tuple[str, str]] | None = None,
    ):
        self.ambient = ambient
        self.E = frozenset(E)
        self.M = frozenset(M)
        self.basepoint = basepoint
        self.distinguished = frozenset(tuple(s) for s in distinguished)
        self.complements = dict(complements) if complements is not None else None
        self._iso_into: dict[str, list[tuple[str, str]]] | None = None
        self._induced_cache: list[tuple[dict, dict]] = []

    @property
    def O(self) -> str:
        return self.basepoint

    def __repr__(self) -> str:
        return (
            f"SquaresCategory({len(self.ambient.objects)} objects, |E|={len(self.E)}, "
            f"|M|={len(self.M)}, {len(self.distinguished)} distinguished squares)"
        )

    def is_distinguished(self, sq: Square) -> bool:
        return tuple(sq) in self.distinguished

    def _from_basepoint(self, x: str, cls: frozenset) -> str:
        found = [m for m in self.ambient.hom(self.basepoint, x) if m in cls]
        if len(found) != 1:
            raise StructuralError(f"basepoint is not initial in {'M' if cls is self.M else 'E'} at {x}")
        return found[0]

    def o_to(self, x: str) -> str:
        """The unique horizontal map ``O >-> x``."""
        return self._from_basepoint(x, self.M)

    def o_onto(self, x: str) -> str:
        """The unique vertical map ``O ->> x``."""
        return self._from_basepoint(x, self.E)

    def isos_into(self, p: str) -> list[tuple[str, str]]:
        """All pairs ``(a, u)`` with ``u: a -> p`` an isomorphism of the ambient category."""
        if self._iso_into is None:
            table = defaultdict(list)
            c = self.ambient
            for a in c.objects:
                for b in c.objects:
                    for u in c.isomorphisms(a, b):
                        table[b].append((a, u))
            self._iso_into = dict(table)
        return self._iso_into.get(p, [])

    def square_objects(self, sq: Square) -> tuple[str, str, str, str]:
        f, h, j, g = sq
        c = self.ambient
        return c.src(f), c.dst(f), c.dst(h), c.dst(g)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = self.ambient.to_json()
        out["E"] = sorted(self.E)
        out["M"] = sorted(self.M)
        out["O"] = self.basepoint
        out["distinguished"] = [list(s) for s in sorted(self.distinguished)]
        if self.complements is not None:
            out["complements"] = {
                f: {"object": o, "eps": e} for f, (o, e) in sorted(self.complements.items())
            }
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "SquaresCategory":
        ambient = FinCategory.from_json(data)
        try:
            compl = None
            if "complements" in data:
                compl = {str(f): (str(v["object"]), str(v["eps"])) for f, v in data["complements"].items()}
            return cls(
                ambient,
                [str(x) for x in data["E"]],
                [str(x) for x in data["M"]],
                str(data["O"]),
                [tuple(str(x) for x in s) for s in data["distinguished"]],
                compl,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed squares-category JSON: {exc!r}") from exc


# -- validation ---------------------------------------------------------------


def _check_wide(c: FinCategory, cls: frozenset, name: str, rep: ValidationReport) -> None:
    for m in cls:
        if m not in c.morphisms:
            rep.structural.append(f"{name} contains unknown morphism {m}")
    if rep.structural:
        return
    for x in c.objects:
        if c.identity(x) not in cls:
            rep.structural.append(f"{name} does not contain the identity of {x}")
    for f in sorted(cls):
        for g in c.arrows_from(c.dst(f)):
            if g in cls and c.comp[g, f] not in cls:
                rep.structural.append(f"{name} is not closed under composition: {g} . {f}")


def validate_squares_category(S: SquaresCategory) -> ValidationReport:
    c = S.ambient
    rep = ValidationReport()
    _check_wide(c, S.E, "E", rep)
    _check_wide(c, S.M, "M", rep)
    if S.basepoint not in c.objects:
        rep.structural.append(f"basepoint {S.basepoint} is not an object")
    if rep.structural:
        return rep

    for x in c.objects:
        for cls, name in ((S.E, "E"), (S.M, "M")):
            n = sum(1 for m in c.hom(S.basepoint, x) if m in cls)
            if n != 1:
                rep.violations.append(f"basepoint has {n} {name}-maps to {x}")
                rep.witnesses.append({"rule": f"initial in {name}", "object": x})

    for sq in sorted(S.distinguished):
        f, h, j, g = sq
        if not all(a in c.morphisms for a in sq):
            rep.structural.append(f"square {sq} mentions unknown morphisms")
            continue
        if f not in S.M or g not in S.M or h not in S.E or j not in S.E:
            rep.structural.append(f"square {sq} has legs in the wrong classes")
            continue
        if c.src(f) != c.src(h) or c.dst(f) != c.src(j) or c.dst(h) != c.src(g) or c.dst(j) != c.dst(g):
            rep.structural.append(f"square {sq} is not square-shaped")
            continue
        if c.comp[j, f] != c.comp[g, h]:
            rep.violations.append(f"square {sq} does not commute")
            rep.witnesses.append({"rule": "commutes", "square": list(sq)})
    if rep.structural:
        return rep

    for e in sorted(S.E):
        s, t = c.morphisms[e]
        sq = (c.identity(s), e, e, c.identity(t))
        if sq not in S.distinguished:
            rep.violations.append(f"identity square on vertical {e} is not distinguished")
            rep.witnesses.append({"rule": "vertical identity square", "square": list(sq)})
    for m in sorted(S.M):
        s, t = c.morphisms[m]
        sq = (m, c.identity(s), c.identity(t), m)
        if sq not in S.distinguished:
            rep.violations.append(f"identity square on horizontal {m} is not distinguished")
            rep.witnesses.append({"rule": "horizontal identity square", "square": list(sq)})

    by_left = defaultdict(list)
    by_top = defaultdict(list)
    for sq in S.distinguished:
        by_left[sq[1]].append(sq)
        by_top[sq[0]].append(sq)
    for sq in sorted(S.distinguished):
        f, h, j, g = sq
        for f2, _, k, g2 in sorted(by_left[j]):
            comp = (c.comp[f2, f], h, k, c.comp[g2, g])
            if comp not in S.distinguished:
                rep.violations.append(f"horizontal composite of {sq} and {(f2, j, k, g2)} missing")
                rep.witnesses.append({"rule": "horizontal composition", "square": list(comp)})
        for _, h2, j2, g3 in sorted(by_top[g]):
            comp = (f, c.comp[h2, h], c.comp[j2, j], g3)
            if comp not in S.distinguished:
                rep.violations.append(f"vertical composite of {sq} and {(g, h2, j2, g3)} missing")
                rep.witnesses.append({"rule": "vertical composition", "square": list(comp)})
    return rep


def is_weak_equivalence(S: SquaresCategory, f: str) -> bool:
    if f not in S.E:
        raise ValueError(f"{f} is not a vertical morphism")
    c = S.ambient
    a, b = c.morphisms[f]
    return (S.o_to(a), c.identity(S.basepoint), f, S.o_to(b)) in S.distinguished


# -- complements ----------------------------------------------------------------


def _complements(S: SquaresCategory, compl) -> dict[str, tuple[str, str]]:
    compl = S.complements if compl is None else compl
    if compl is None:
        raise StructuralError("no complement assignment supplied")
    missing = sorted(m for m in S.M if m not in compl)
    if missing:
        raise StructuralError(f"complement assignment not total on M (missing {missing[:5]})")
    return compl


def pullback_squares(S: SquaresCategory, vertical: frozenset) -> Iterator[Square]:
    """Every pullback square with horizontals in ``M`` and verticals in ``vertical``."""
    c = S.ambient
    for d in c.objects:
        into = c.arrows_into(d)
        gs = [g for g in into if g in S.M]
        js = [j for j in into if j in vertical]
        for g in gs:
            for j in js:
                pb = c.pullback(j, g)
                if pb is None:
                    continue
                for _, u in S.isos_into(pb.apex):
                    f = c.comp[pb.left, u]
                    h = c.comp[pb.right, u]
                    if f in S.M and h in vertical:
                        yield (f, h, j, g)


def induced_complement_map(S: SquaresCategory, compl, square: Square) -> str:
    """The unique ``B\\A -> D\\C`` making the complement square commute and be a pullback."""
    return _induced(S, _complements(S, compl), tuple(square))


def _induced(S: SquaresCategory, compl, square: Square) -> str:
    cache = next((memo for ref, memo in S._induced_cache if ref is compl), None)
    if cache is None:
        cache = {}
        S._induced_cache.append((compl, cache))
    if square in cache:
        res = cache[square]
        if isinstance(res, ComplementMapError):
            raise res
        return res
    c = S.ambient
    f, h, j, g = square
    ba, eps_f = compl[f]
    dc, eps_g = compl[g]
    target = c.comp[j, eps_f]
    cands = [
        k
        for k in c.hom(ba, dc)
        if c.comp[eps_g, k] == target and is_pullback_square(c, k, eps_f, eps_g, j)
    ]
    if len(cands) != 1:
        cache[square] = ComplementMapError(square, cands)
        raise cache[square]
    cache[square] = cands[0]
    return cands[0]


def _try_induced(S, compl, sq):
    try:
        return _induced(S, compl, sq)
    except ComplementMapError:
        return None


def check_complement_axioms(S: SquaresCategory, compl=None, axioms: Iterable[str] | None = None) -> AxiomReport:
    """Exhaustively check (A1)-(A8) for ``S`` with the given complement assignment."""
    compl = _complements(S, compl)
    c = S.ambient
    wanted = set(axioms) if axioms is not None else {f"A{i}" for i in range(1, 9)}
    rep = AxiomReport()

    if "A1" in wanted:
        v = rep.add(Verdict("A1"))
        for m in sorted(S.M):
            v.checked += 1
            if not is_mono(c, m):
                v.fail({"morphism": m}, f"{m} is in M but not a monomorphism")
                break

    if "A2" in wanted:
        v = rep.add(Verdict("A2"))
        for f in sorted(S.M):
            v.checked += 1
            a, b = c.morphisms[f]
            obj, eps = compl[f]
            if eps not in S.E or c.morphisms.get(eps) != (obj, b):
                v.fail({"morphism": f, "eps": eps}, "complement map is not a vertical map into the target")
                break
            sq = (S.o_to(obj), S.o_onto(a), eps, f)
            if sq not in S.distinguished:
                v.fail({"morphism": f, "square": list(sq)}, "complement square is not distinguished")
                break
            if a == S.basepoint and f == S.o_to(b) and not c.is_iso(eps):
                v.fail({"morphism": f, "eps": eps}, "complement of the basepoint inclusion is not an isomorphism")
                break

    if "A3" in wanted:
        v = rep.add(Verdict("A3"))
        for d in c.objects:
            into = c.arrows_into(d)
            for m in [x for x in into if x in S.M]:
                for e in [x for x in into if x in S.E]:
                    v.checked += 1
                    pb = c.pullback(m, e)
                    ok = False
                    if pb is not None:
                        for _, u in S.isos_into(pb.apex):
                            if c.comp[pb.right, u] in S.M and c.comp[pb.left, u] in S.E:
                                ok = True
                                break
                    if not ok:
                        v.fail({"cospan": [m, e]}, "no pullback with legs in the required classes")
                        break
                if v.status == FAIL:
                    break
            if v.status == FAIL:
                break

    if "A4" in wanted:
        v = rep.add(Verdict("A4"))
        for sq in sorted(S.distinguished):
            v.checked += 1
            if not is_pullback_square(c, *sq):
                v.fail({"square": list(sq)}, "distinguished square is not a pullback")
                break

    need_sq = wanted & {"A5", "A7"}
    squares_E = sorted(set(pullback_squares(S, S.E))) if need_sq or "A8" in wanted else []
    if "A5" in wanted:
        v = rep.add(Verdict("A5"))
        squares = sorted(set(squares_E) | set(pullback_squares(S, S.M)))
        for sq in squares:
            v.checked += 1
            try:
                _induced(S, compl, sq)
            except ComplementMapError as exc:
                v.fail({"square": list(sq), "candidates": exc.candidates}, str(exc))
                break

    if "A6" in wanted:
        v = rep.add(Verdict("A6"))
        for a in sorted(S.M):
            a0, a1 = c.morphisms[a]
            for b in sorted(x for x in c.arrows_from(a1) if x in S.M):
                v.checked += 1
                ba = c.comp[b, a]
                sq = (a, c.identity(a0), b, ba)
                wit = {"pair": [a, b]}
                jp = _try_induced(S, compl, sq)
                if jp is None:
                    v.fail(wit, "no unique induced map A1\\A0 -> A2\\A0")
                    break
                if jp not in S.M:
                    v.fail(wit, "induced map A1\\A0 -> A2\\A0 is not horizontal")
                    break
                x, eps_jp = compl[jp]
                a2a1, eps_b = compl[b]
                _, eps_ba = compl[ba]
                target = c.comp[eps_ba, eps_jp]
                phis = [k for k in c.hom(x, a2a1) if c.comp[eps_b, k] == target]
                if len(phis) != 1 or not c.is_iso(phis[0]):
                    v.fail(wit, "excision map is not a unique isomorphism")
                    break
            if v.status == FAIL:
                break

    if "A7" in wanted:
        v = rep.add(Verdict("A7"))
        for sq in squares_E:
            v.checked += 1
            k = _try_induced(S, compl, sq)
            if k is not None and c.is_iso(k) and sq not in S.distinguished:
                v.fail({"square": list(sq)}, "complement map is an isomorphism but the square is not distinguished")
                break

    if "A8" in wanted:
        v = rep.add(Verdict("A8"))
        for sq in sorted(S.distinguished):
            res = _check_a8_for(S, compl, sq)
            v.checked += res[0]
            if res[1] is not None:
                v.fail(res[1], res[2])
                break
    return rep


def excision_square(S: SquaresCategory, compl, sq: Square, inner: Square) -> Square:
    """The square of complements induced by a distinguished ``sq`` and a pullback ``inner``.

    ``inner = (i, h0, h, jj)`` must have ``h`` equal to the left leg of ``sq``.
    Raises :class:`ComplementMapError` when one of the four maps is not induced.
    """
    compl = _complements(S, compl)
    return _excision(S, compl, sq, inner)


def _excision(S, compl, sq, inner):
    c = S.ambient
    f, h, j, g = sq
    i, h0, _, jj = inner
    a0 = c.src(i)
    c0 = c.src(jj)
    top = _induced(S, compl, (i, c.identity(a0), f, c.comp[f, i]))
    bottom = _induced(S, compl, (jj, c.identity(c0), g, c.comp[g, jj]))
    left = _induced(S, compl, tuple(inner))
    right = _induced(S, compl, (c.comp[f, i], h0, j, c.comp[g, jj]))
    return (top, left, right, bottom)


def _check_a8_for(S, compl, sq):
    c = S.ambient
    f, h, j, g = sq
    checked = 0
    cc = c.dst(h)
    for jj in sorted(x for x in c.arrows_into(cc) if x in S.M):
        pb = c.pullback(h, jj)
        if pb is None:
            continue
        for _, u in S.isos_into(pb.apex):
            i = c.comp[pb.left, u]
            h0 = c.comp[pb.right, u]
            if i not in S.M or h0 not in S.E:
                continue
            checked += 1
            inner = (i, h0, h, jj)
            wit = {"square": list(sq), "pullback": list(inner)}
            try:
                ex = _excision(S, compl, sq, inner)
            except ComplementMapError as exc:
                return checked, wit, f"induced map missing: {exc}"
            if ex not in S.distinguished:
                wit["induced"] = list(ex)
                return checked, wit, "induced square of complements is not distinguished"
    return checked, None, ""


def check_monoidal(S: SquaresCategory, tensor, pairs: Iterable[tuple[Square, Square]] | None = None) -> Verdict:
    """Spot-check that ``tensor`` (a function on morphism ids) sends pairs of distinguished squares to one."""
    v = Verdict("monoidal")
    squares = sorted(S.distinguished)
    if pairs is None:
        pairs = ((s, t) for s in squares for t in squares)
    for s, t in pairs:
        v.checked += 1
        prod = tuple(tensor(a, b) for a, b in zip(s, t))
        if prod not in S.distinguished:
            v.fail({"squares": [list(s), list(t)], "product": list(prod)})
            break
    return v
