"""Chains T_n, staircase diagrams T_n^+ and S_n, and the comparison functors U, F, G, H.

Staircase positions are ``(i, j)`` with ``0 <= i <= j <= n`` and ``(i, i)`` the
basepoint; the top row of a T^+ diagram sits at ``i = -1``.  Horizontal maps go
``(i, j) -> (i, j + 1)`` and vertical maps go up, ``(i, j) -> (i - 1, j)``.  The
square between rows ``r`` and ``r - 1`` and columns ``j, j + 1`` is read as
``(f, h, j, g)`` with ``A = (r, j)``, ``B = (r, j + 1)``, ``C = (r - 1, j)``,
``D = (r - 1, j + 1)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator

from .report import AxiomReport, Verdict
from .squares import ComplementMapError, SquaresCategory, _complements, _induced

TPLUS = "T+"
SQUARE = "S"
MAX_N = 4

Pos = tuple[int, int]


class CertificationError(ValueError):
    """A constructed diagram or morphism has a square that should be distinguished but is not."""

    def __init__(self, message: str, position=None):
        self.position = position
        super().__init__(message if position is None else f"{message} at {position}")


@dataclass(frozen=True)
class ChainObject:
    objects: tuple[str, ...]
    maps: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.maps)


@dataclass(frozen=True)
class ChainMorphism:
    source: ChainObject
    target: ChainObject
    components: tuple[str, ...]


@dataclass(frozen=True)
class StaircaseDiagram:
    n: int
    variant: str
    entries: tuple[tuple[Pos, str], ...]
    horiz: tuple[tuple[Pos, str], ...]
    vert: tuple[tuple[Pos, str], ...]

    def entry(self, p: Pos) -> str:
        return dict(self.entries)[p]

    def h(self, p: Pos) -> str:
        return dict(self.horiz)[p]

    def v(self, p: Pos) -> str:
        return dict(self.vert)[p]

    def to_json(self) -> dict:
        key = lambda p: f"{p[0]},{p[1]}"  # noqa: E731
        return {
            "n": self.n,
            "variant": self.variant,
            "entries": {key(p): x for p, x in self.entries},
            "horiz": {key(p): x for p, x in self.horiz},
            "vert": {key(p): x for p, x in self.vert},
        }


@dataclass(frozen=True)
class DiagMorphism:
    source: StaircaseDiagram
    target: StaircaseDiagram
    components: tuple[tuple[Pos, str], ...]

    def at(self, p: Pos) -> str:
        return dict(self.components)[p]


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise ValueError(f"n must lie in 0..{MAX_N}, got {n}")


def positions(n: int, variant: str) -> list[Pos]:
    top = -1 if variant == TPLUS else 0
    return [(i, j) for j in range(n + 1) for i in range(top, j + 1)]


def squares_of(n: int, variant: str) -> list[tuple[Pos, Pos, Pos, Pos]]:
    """Corner positions ``(A, B, C, D)`` of every constituent square."""
    top = -1 if variant == TPLUS else 0
    out = []
    for j in range(n):
        for r in range(top + 1, j + 1):
            out.append(((r, j), (r, j + 1), (r - 1, j), (r - 1, j + 1)))
    return out


def _make(n, variant, entries: dict, horiz: dict, vert: dict) -> StaircaseDiagram:
    return StaircaseDiagram(
        n, variant, tuple(sorted(entries.items())), tuple(sorted(horiz.items())), tuple(sorted(vert.items()))
    )


def diagram_squares(d: StaircaseDiagram):
    H, V = dict(d.horiz), dict(d.vert)
    for a, b, c, _ in squares_of(d.n, d.variant):
        yield a, (H[a], V[a], V[b], H[c])


def is_valid_diagram(S: SquaresCategory, d: StaircaseDiagram) -> Pos | None:
    """``None`` if every square is distinguished, else the lower-left corner of a bad square."""
    for a, sq in diagram_squares(d):
        if sq not in S.distinguished:
            return a
    return None


# -- T_n -------------------------------------------------------------------------


def enumerate_chains(S: SquaresCategory, n: int) -> list[ChainObject]:
    _check_n(n)
    c = S.ambient
    out = [ChainObject((x,), ()) for x in c.objects]
    for _ in range(n):
        nxt = []
        for ch in out:
            for m in c.arrows_from(ch.objects[-1]):
                if m in S.M:
                    nxt.append(ChainObject(ch.objects + (c.dst(m),), ch.maps + (m,)))
        out = nxt
    return sorted(out, key=lambda ch: (ch.objects, ch.maps))


def chain_composite(S: SquaresCategory, ch: ChainObject, i: int, j: int) -> str:
    c = S.ambient
    m = c.identity(ch.objects[i])
    for k in range(i, j):
        m = c.comp[ch.maps[k], m]
    return m


def is_chain_morphism(S: SquaresCategory, a: ChainObject, b: ChainObject, comps) -> bool:
    c = S.ambient
    if len(comps) != len(a.objects) or a.n != b.n:
        return False
    for k, x in enumerate(comps):
        if x not in S.E or c.morphisms[x] != (a.objects[k], b.objects[k]):
            return False
    for i in range(a.n + 1):
        for j in range(i + 1, a.n + 1):
            sq = (chain_composite(S, a, i, j), comps[i], comps[j], chain_composite(S, b, i, j))
            if sq not in S.distinguished:
                return False
    return True


def chain_morphisms(S: SquaresCategory, a: ChainObject, b: ChainObject) -> list[ChainMorphism]:
    c = S.ambient
    choices = [[e for e in c.hom(x, y) if e in S.E] for x, y in zip(a.objects, b.objects)]
    out = []

    def rec(k, acc):
        if k == len(choices):
            if is_chain_morphism(S, a, b, acc):
                out.append(ChainMorphism(a, b, tuple(acc)))
            return
        for e in choices[k]:
            if k and (a.maps[k - 1], acc[k - 1], e, b.maps[k - 1]) not in S.distinguished:
                continue
            rec(k + 1, acc + [e])

    rec(0, [])
    return out


def compose_chain_morphisms(S: SquaresCategory, g: ChainMorphism, f: ChainMorphism) -> ChainMorphism:
    c = S.ambient
    return ChainMorphism(f.source, g.target, tuple(c.comp[y, x] for x, y in zip(f.components, g.components)))


def face(S: SquaresCategory, ch: ChainObject, k: int) -> ChainObject:
    """``d_k``: drop the first/last object, or compose the two maps at ``A_k``."""
    n = ch.n
    if not 0 <= k <= n or n == 0:
        raise ValueError("face index out of range")
    if k == 0:
        return ChainObject(ch.objects[1:], ch.maps[1:])
    if k == n:
        return ChainObject(ch.objects[:-1], ch.maps[:-1])
    c = S.ambient
    comp = c.comp[ch.maps[k], ch.maps[k - 1]]
    return ChainObject(ch.objects[:k] + ch.objects[k + 1:], ch.maps[: k - 1] + (comp,) + ch.maps[k + 1:])


def degeneracy(S: SquaresCategory, ch: ChainObject, k: int) -> ChainObject:
    """``s_k``: repeat ``A_k`` with an identity."""
    if not 0 <= k <= ch.n:
        raise ValueError("degeneracy index out of range")
    idm = S.ambient.identity(ch.objects[k])
    return ChainObject(ch.objects[: k + 1] + ch.objects[k:], ch.maps[:k] + (idm,) + ch.maps[k:])


def check_simplicial_identities(S: SquaresCategory, n: int) -> Verdict:
    v = Verdict(f"simplicial_identities_n{n}")
    d = lambda ch, k: face(S, ch, k)  # noqa: E731
    s = lambda ch, k: degeneracy(S, ch, k)  # noqa: E731
    for ch in enumerate_chains(S, n):
        if n >= 2:
            for j in range(n + 1):
                for i in range(j):
                    v.checked += 1
                    if d(d(ch, j), i) != d(d(ch, i), j - 1):
                        v.fail({"chain": list(ch.maps), "identity": f"d{i}d{j}"})
        for j in range(n + 1):
            sj = s(ch, j)
            for i in range(n + 2):
                v.checked += 1
                lhs = d(sj, i)
                if i < j:
                    ok = n >= 1 and lhs == s(d(ch, i), j - 1)
                elif i in (j, j + 1):
                    ok = lhs == ch
                else:
                    ok = n >= 1 and lhs == s(d(ch, i - 1), j)
                if not ok and not (n == 0 and i not in (j, j + 1)):
                    v.fail({"chain": list(ch.maps), "identity": f"d{i}s{j}"})
            for i in range(j + 1):
                v.checked += 1
                if s(s(ch, j), i) != s(s(ch, i), j + 1):
                    v.fail({"chain": list(ch.maps), "identity": f"s{i}s{j}"})
    return v


# -- staircase enumeration ------------------------------------------------------------


def _square_index(S: SquaresCategory):
    idx = defaultdict(list)
    for f, h, j, g in sorted(S.distinguished):
        idx[f, h].append((j, g))
    return idx


def enumerate_staircases(S: SquaresCategory, n: int, variant: str = TPLUS) -> list[StaircaseDiagram]:
    """All diagrams of the given shape with every square distinguished, in canonical order."""
    _check_n(n)
    if variant not in (TPLUS, SQUARE):
        raise ValueError(f"unknown variant {variant!r}")
    c = S.ambient
    O = S.basepoint
    idx = _square_index(S)
    top = -1 if variant == TPLUS else 0
    starts = []
    if variant == TPLUS:
        for x in c.objects:
            starts.append(({(0, 0): O, (-1, 0): x}, {}, {(0, 0): S.o_onto(x)}))
    else:
        starts.append(({(0, 0): O}, {}, {}))
    results = []

    def extend(j, state):
        if j == n:
            results.append(_make(n, variant, *state))
            return
        entries, horiz, vert = state
        for x in c.objects:
            e2, h2, v2 = dict(entries), dict(horiz), dict(vert)
            e2[(j + 1, j + 1)] = O
            e2[(j, j + 1)] = x
            h2[(j, j)] = S.o_to(x)
            v2[(j + 1, j + 1)] = S.o_onto(x)
            fill(j, j, (e2, h2, v2))

    def fill(j, r, state):
        # complete the square whose lower row is r in column j -> j + 1, moving upward
        if r < top + 1:
            extend(j + 1, state)
            return
        entries, horiz, vert = state
        f = horiz[(r, j)]
        h = vert[(r, j)]
        for jj, g in idx.get((f, h), []):
            e2, h2, v2 = dict(entries), dict(horiz), dict(vert)
            e2[(r - 1, j + 1)] = c.dst(g)
            h2[(r - 1, j)] = g
            v2[(r, j + 1)] = jj
            fill(j, r - 1, (e2, h2, v2))

    for st in starts:
        extend(0, st)
    return sorted(results, key=lambda d: (d.entries, d.horiz, d.vert))


def enumerate_staircases_brute(S: SquaresCategory, n: int, variant: str = TPLUS) -> list[StaircaseDiagram]:
    """Independent oracle: choose every map freely, then filter by the square condition."""
    _check_n(n)
    c = S.ambient
    O = S.basepoint
    pos = positions(n, variant)
    free = [p for p in pos if p[0] != p[1]]
    out = []

    def rec(k, entries):
        if k == len(free):
            yield dict(entries)
            return
        for x in c.objects:
            entries[free[k]] = x
            yield from rec(k + 1, entries)
        del entries[free[k]]

    for entries in rec(0, {}):
        for p in pos:
            if p[0] == p[1]:
                entries[p] = O
        hpos = [(i, j) for (i, j) in pos if (i, j + 1) in entries]
        vpos = [(i, j) for (i, j) in pos if (i - 1, j) in entries]
        hopts = [[m for m in c.hom(entries[p], entries[(p[0], p[1] + 1)]) if m in S.M] for p in hpos]
        vopts = [[m for m in c.hom(entries[p], entries[(p[0] - 1, p[1])]) if m in S.E] for p in vpos]
        from itertools import product

        for hs in product(*hopts):
            for vs in product(*vopts):
                d = _make(n, variant, entries, dict(zip(hpos, hs)), dict(zip(vpos, vs)))
                if is_valid_diagram(S, d) is None:
                    out.append(d)
    return sorted(set(out), key=lambda d: (d.entries, d.horiz, d.vert))


# -- functors U, G, H -------------------------------------------------------------------


def functor_U(d: StaircaseDiagram) -> ChainObject:
    if d.variant != TPLUS:
        raise ValueError("U is defined on diagrams with a top row")
    E, H = dict(d.entries), dict(d.horiz)
    return ChainObject(tuple(E[(-1, j)] for j in range(d.n + 1)), tuple(H[(-1, j)] for j in range(d.n)))


def functor_U_morphism(m: DiagMorphism) -> ChainMorphism:
    comps = dict(m.components)
    return ChainMorphism(functor_U(m.source), functor_U(m.target), tuple(comps[(-1, j)] for j in range(m.source.n + 1)))


def functor_G(d: StaircaseDiagram) -> StaircaseDiagram:
    if d.variant != TPLUS:
        raise ValueError("G deletes the top row of a T+ diagram")
    keep = lambda items: {p: x for p, x in items if p[0] >= 0}  # noqa: E731
    vert = {p: x for p, x in d.vert if p[0] >= 1}
    return _make(d.n, SQUARE, keep(d.entries), keep(d.horiz), vert)


def functor_H(S: SquaresCategory, d: StaircaseDiagram) -> StaircaseDiagram:
    if d.variant != SQUARE:
        raise ValueError("H repeats the first row of an S diagram")
    c = S.ambient
    entries, horiz, vert = dict(d.entries), dict(d.horiz), dict(d.vert)
    for j in range(d.n + 1):
        entries[(-1, j)] = entries[(0, j)]
        vert[(0, j)] = c.identity(entries[(0, j)])
        if j < d.n:
            horiz[(-1, j)] = horiz[(0, j)]
    return _make(d.n, TPLUS, entries, horiz, vert)


def functor_G_morphism(m: DiagMorphism) -> DiagMorphism:
    return DiagMorphism(functor_G(m.source), functor_G(m.target), tuple((p, x) for p, x in m.components if p[0] >= 0))


def functor_H_morphism(S: SquaresCategory, m: DiagMorphism) -> DiagMorphism:
    comps = dict(m.components)
    for j in range(m.source.n + 1):
        comps[(-1, j)] = comps[(0, j)]
    return DiagMorphism(functor_H(S, m.source), functor_H(S, m.target), tuple(sorted(comps.items())))


def hg_to_identity(S: SquaresCategory, d: StaircaseDiagram) -> DiagMorphism:
    """Component of the natural transformation ``H G -> Id`` at ``d``."""
    src = functor_H(S, functor_G(d))
    c = S.ambient
    comps = {p: c.identity(x) for p, x in d.entries}
    V = dict(d.vert)
    for j in range(d.n + 1):
        comps[(-1, j)] = V[(0, j)]
    return DiagMorphism(src, d, tuple(sorted(comps.items())))


def morphism_violation(S: SquaresCategory, m: DiagMorphism) -> tuple[Pos, str] | None:
    """First failing naturality condition of a diagram morphism, or ``None``."""
    c = S.ambient
    comps = dict(m.components)
    E1, E2 = dict(m.source.entries), dict(m.target.entries)
    for p, x in sorted(comps.items()):
        if x not in S.E or c.morphisms[x] != (E1[p], E2[p]):
            return p, "component is not a vertical map between the entries"
    H1, H2 = dict(m.source.horiz), dict(m.target.horiz)
    for p, f in sorted(H1.items()):
        q = (p[0], p[1] + 1)
        if (f, comps[p], comps[q], H2[p]) not in S.distinguished:
            return p, "horizontal naturality square is not distinguished"
    V1, V2 = dict(m.source.vert), dict(m.target.vert)
    for p, f in sorted(V1.items()):
        q = (p[0] - 1, p[1])
        if c.comp[V2[p], comps[p]] != c.comp[comps[q], f]:
            return p, "vertical naturality square does not commute"
    return None


# -- functor F ------------------------------------------------------------------------


class _Fdata:
    """Complement data attached to one chain: entries A_j \\ A_i and the maps between them."""

    def __init__(self, S: SquaresCategory, compl, ch: ChainObject):
        self.S, self.compl, self.ch = S, compl, ch
        c = S.ambient
        self.comp = {(i, j): chain_composite(S, ch, i, j) for i in range(ch.n + 1) for j in range(i, ch.n + 1)}
        self.c = c

    def entry(self, i, j):
        if i == j:
            return self.S.basepoint
        return self.compl[self.comp[i, j]][0]

    def eps(self, i, j):
        return self.compl[self.comp[i, j]][1]

    def induced(self, sq, where):
        try:
            return _induced(self.S, self.compl, sq)
        except ComplementMapError as exc:
            raise CertificationError(f"complement map not induced ({exc})", where) from exc

    def horizontal(self, i, j):
        """A_j \\ A_i >-> A_{j+1} \\ A_i for i < j."""
        c, ch = self.c, self.ch
        sq = (self.comp[i, j], c.identity(ch.objects[i]), ch.maps[j], self.comp[i, j + 1])
        return self.induced(sq, (i, j))

    def vertical(self, i, j):
        """A_j \\ A_i ->> A_j \\ A_{i-1} for 1 <= i < j, via the excision isomorphism."""
        S, c, ch = self.S, self.c, self.ch
        sq = (ch.maps[i - 1], c.identity(ch.objects[i - 1]), self.comp[i, j], self.comp[i - 1, j])
        jp = self.induced(sq, (i, j))
        if jp not in S.M:
            raise CertificationError("induced map on complements is not horizontal", (i, j))
        x, eps_jp = self.compl[jp]
        target = c.comp[self.eps(i - 1, j), eps_jp]
        phis = [k for k in c.hom(x, self.entry(i, j)) if c.comp[self.eps(i, j), k] == target and c.is_iso(k)]
        if len(phis) != 1:
            raise CertificationError("excision isomorphism missing", (i, j))
        return c.comp[eps_jp, c.inverse(phis[0])]


def functor_F(S: SquaresCategory, ch: ChainObject, compl=None) -> StaircaseDiagram:
    """The staircase of complements ``A_j \\ A_i`` over a chain, with every square certified."""
    compl = _complements(S, compl)
    n = ch.n
    _check_n(n)
    data = _Fdata(S, compl, ch)
    entries, horiz, vert = {}, {}, {}
    for j in range(n + 1):
        entries[(-1, j)] = ch.objects[j]
        if j < n:
            horiz[(-1, j)] = ch.maps[j]
        for i in range(j + 1):
            entries[(i, j)] = data.entry(i, j)
    for j in range(n + 1):
        vert[(0, j)] = S.o_onto(ch.objects[0]) if j == 0 else data.eps(0, j)
        for i in range(1, j + 1):
            vert[(i, j)] = S.o_onto(entries[(i - 1, j)]) if i == j else data.vertical(i, j)
        for i in range(j + 1):
            if j < n:
                horiz[(i, j)] = S.o_to(entries[(i, j + 1)]) if i == j else data.horizontal(i, j)
    for p, x in horiz.items():
        if x not in S.M:
            raise CertificationError("horizontal map is not in M", p)
    for p, x in vert.items():
        if x not in S.E:
            raise CertificationError("vertical map is not in E", p)
    d = _make(n, TPLUS, entries, horiz, vert)
    bad = is_valid_diagram(S, d)
    if bad is not None:
        raise CertificationError("square of complements is not distinguished", bad)
    return d


def functor_F_morphism(S: SquaresCategory, m: ChainMorphism, compl=None) -> DiagMorphism:
    compl = _complements(S, compl)
    a, b = m.source, m.target
    src, dst = functor_F(S, a, compl), functor_F(S, b, compl)
    comps = {}
    for j in range(a.n + 1):
        comps[(-1, j)] = m.components[j]
        for i in range(j + 1):
            if i == j:
                comps[(i, j)] = S.ambient.identity(S.basepoint)
                continue
            sq = (chain_composite(S, a, i, j), m.components[i], m.components[j], chain_composite(S, b, i, j))
            try:
                comps[(i, j)] = _induced(S, compl, sq)
            except ComplementMapError as exc:
                raise CertificationError(f"component not induced ({exc})", (i, j)) from exc
    out = DiagMorphism(src, dst, tuple(sorted(comps.items())))
    bad = morphism_violation(S, out)
    if bad is not None:
        raise CertificationError(bad[1], bad[0])
    return out


def roundtrip_morphism(S: SquaresCategory, d: StaircaseDiagram, compl=None) -> DiagMorphism:
    """Components ``A_ij ->> A_j \\ A_i`` from ``d`` to ``F(U(d))``."""
    compl = _complements(S, compl)
    c = S.ambient
    target = functor_F(S, functor_U(d), compl)
    E, H, V = dict(d.entries), dict(d.horiz), dict(d.vert)
    chain = functor_U(d)
    comps = {}
    for j in range(d.n + 1):
        comps[(-1, j)] = c.identity(E[(-1, j)])
        for i in range(j + 1):
            if i == j:
                comps[(i, j)] = c.identity(S.basepoint)
                continue
            # paste the distinguished squares of d between (i, i), (i, j) and the top row
            up_i = _vertical_path(c, V, i, i)
            up_j = _vertical_path(c, V, i, j)
            across = c.identity(E[(i, i)])
            for k in range(i, j):
                across = c.comp[H[(i, k)], across]
            sq = (across, up_i, up_j, chain_composite(S, chain, i, j))
            try:
                k_map = _induced(S, compl, sq)
            except ComplementMapError as exc:
                raise CertificationError(f"component not induced ({exc})", (i, j)) from exc
            eps0 = compl[S.o_to(E[(i, j)])][1]
            inv = c.inverse(eps0)
            if inv is None:
                raise CertificationError("complement of the empty inclusion is not invertible", (i, j))
            comps[(i, j)] = c.comp[k_map, inv]
    return DiagMorphism(d, target, tuple(sorted(comps.items())))


def _vertical_path(c, V, i, j):
    m = None
    for r in range(i, -1, -1):
        m = V[(r, j)] if m is None else c.comp[V[(r, j)], m]
    return m


def check_roundtrip_transformations(S: SquaresCategory, n: int, compl=None) -> AxiomReport:
    """For every T+ object, build and certify the comparison morphism to F(U(d))."""
    if not 0 <= n <= 3:
        raise ValueError("round-trip checks are run for n <= 3")
    compl = _complements(S, compl)
    rep = AxiomReport()
    v = rep.add(Verdict(f"roundtrip_n{n}"))
    for d in enumerate_staircases(S, n, TPLUS):
        v.checked += 1
        try:
            m = roundtrip_morphism(S, d, compl)
        except CertificationError as exc:
            v.fail({"diagram": d.to_json(), "position": list(exc.position or ())}, str(exc))
            break
        bad = morphism_violation(S, m)
        if bad is not None:
            v.fail({"diagram": d.to_json(), "position": list(bad[0])}, bad[1])
            break
    return rep


def check_functor_identities(S: SquaresCategory, n: int, compl=None) -> AxiomReport:
    """U F = Id on T_n, G H = Id on S_n, and H G -> Id is a valid natural transformation."""
    compl = _complements(S, compl)
    rep = AxiomReport()
    v = rep.add(Verdict(f"UF_n{n}"))
    for ch in enumerate_chains(S, n):
        v.checked += 1
        try:
            d = functor_F(S, ch, compl)
        except CertificationError as exc:
            v.fail({"chain": list(ch.maps), "position": list(exc.position or ())}, str(exc))
            break
        if functor_U(d) != ch:
            v.fail({"chain": list(ch.maps)}, "U(F(chain)) differs from the chain")
            break
    v = rep.add(Verdict(f"GH_n{n}"))
    for s in enumerate_staircases(S, n, SQUARE):
        v.checked += 1
        h = functor_H(S, s)
        if is_valid_diagram(S, h) is not None or functor_G(h) != s:
            v.fail({"diagram": s.to_json()}, "G(H(s)) differs from s")
            break
    v = rep.add(Verdict(f"HG_to_id_n{n}"))
    for d in enumerate_staircases(S, n, TPLUS):
        v.checked += 1
        bad = morphism_violation(S, hg_to_identity(S, d))
        if bad is not None:
            v.fail({"diagram": d.to_json(), "position": list(bad[0])}, bad[1])
            break
    return rep


def iter_chain_morphisms(S: SquaresCategory, n: int) -> Iterator[ChainMorphism]:
    chains = enumerate_chains(S, n)
    for a in chains:
        for b in chains:
            yield from chain_morphisms(S, a, b)
