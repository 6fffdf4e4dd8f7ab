"""Small categorical instances used by the tests, demos and bundled JSON fixtures."""

from __future__ import annotations

from itertools import permutations, product

from .cat import FinCategory, enumerate_pullback, is_pullback_square, table_category
from .covering import CovCategory
from .squares import SquaresCategory


def poset_category(objects, leq) -> FinCategory:
    """Category of a finite poset; ``leq`` lists generating pairs ``(a, b)`` with ``a <= b``."""
    objects = list(objects)
    rel = {(x, x) for x in objects} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    name = {(a, b): (f"id_{a}" if a == b else f"{a}_{b}") for a, b in rel}
    arrows = {name[a, b]: (a, b) for a, b in rel}

    def compose(g, f):
        return name[arrows[f][0], arrows[g][1]]

    return table_category(objects, arrows, compose)


def _cov(objects, leq, families, coproducts=None) -> CovCategory:
    c = poset_category(objects, leq)
    fams = [(x, [f"id_{x}"]) for x in objects if x != "0"]
    for target, sources in families:
        fams.append((target, [f"{s}_{target}" for s in sources]))
    return CovCategory(c, "0", fams, coproducts)


def trivial_assembler() -> CovCategory:
    return _cov(["0"], [], [])


def point_assembler() -> CovCategory:
    return _cov(["0", "X"], [("0", "X")], [])


def two_points_assembler() -> CovCategory:
    return _cov(["0", "P", "Q"], [("0", "P"), ("0", "Q")], [])


def partition_assembler() -> CovCategory:
    """X covered by two disjoint pieces U and V."""
    return _cov(
        ["0", "U", "V", "X"],
        [("0", "U"), ("0", "V"), ("U", "X"), ("V", "X")],
        [("X", ["U", "V"])],
        coproducts=[("U", "V", "X", "U_X", "V_X")],
    )


def chain_assembler() -> CovCategory:
    """X = U + V and U = U1 + U2, with the composite cover of X listed."""
    return _cov(
        ["0", "X", "U", "V", "U1", "U2"],
        [("0", "U1"), ("0", "U2"), ("0", "V"), ("U1", "U"), ("U2", "U"), ("U", "X"), ("V", "X")],
        [("X", ["U", "V"]), ("U", ["U1", "U2"]), ("X", ["U1", "U2", "V"])],
        coproducts=[("U1", "U2", "U", "U1_U", "U2_U"), ("U", "V", "X", "U_X", "V_X")],
    )


def subsets_assembler(n: int = 3) -> CovCategory:
    """Nonempty subsets of an n-set, with every partition of a subset as a cover."""
    atoms = "abcdefgh"[:n]
    subsets = [""]
    for k in range(1, 1 << n):
        subsets.append("".join(a for i, a in enumerate(atoms) if k >> i & 1))
    objs = ["0" if s == "" else s for s in subsets]
    leq = [(a, b) for a in objs for b in objs if a != b and (a == "0" or (b != "0" and set(a) <= set(b)))]
    families = []
    for s in objs[1:]:
        for part in _partitions(list(s)):
            if len(part) > 1:
                families.append((s, ["".join(sorted(p)) for p in part]))
    return _cov(objs, leq, families)


def _partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def no_coproduct_assembler() -> CovCategory:
    """U and V have two incomparable disjoint cocones X and Y, so no restricted coproduct."""
    return _cov(
        ["0", "U", "V", "X", "Y"],
        [("0", "U"), ("0", "V"), ("U", "X"), ("V", "X"), ("U", "Y"), ("V", "Y")],
        [("X", ["U", "V"]), ("Y", ["U", "V"])],
    )


def overlapping_cover() -> CovCategory:
    """A cover of X by U and V whose intersection W is not empty."""
    return _cov(
        ["0", "W", "U", "V", "X"],
        [("0", "W"), ("W", "U"), ("W", "V"), ("U", "X"), ("V", "X")],
        [("X", ["U", "V"])],
    )


def non_mono_category() -> FinCategory:
    """Parallel u, v: A -> B equalised by w: B -> C, with an initial object 0."""
    objs = ["0", "A", "B", "C"]
    arrows = {f"id_{x}": (x, x) for x in objs}
    arrows.update({"0A": ("0", "A"), "0B": ("0", "B"), "0C": ("0", "C"), "u": ("A", "B"), "v": ("A", "B"),
                   "w": ("B", "C"), "wu": ("A", "C")})

    def compose(g, f):
        if g.startswith("id_"):
            return f
        if f.startswith("id_"):
            return g
        if f.startswith("0"):
            return "0" + arrows[g][1]
        return "wu"

    return table_category(objs, arrows, compose)


def non_mono_assembler() -> CovCategory:
    c = non_mono_category()
    return CovCategory(c, "0", [(x, [f"id_{x}"]) for x in ("A", "B", "C")])


ASSEMBLERS = {
    "trivial": trivial_assembler,
    "point": point_assembler,
    "two_points": two_points_assembler,
    "partition": partition_assembler,
    "chain": chain_assembler,
}


# -- squares categories -------------------------------------------------------------


def _inj_id(a: int, b: int, img: tuple) -> str:
    return f"{a}>{b}:" + "".join(str(x) for x in img)


def injections_category(n: int) -> FinCategory:
    """Finite sets [0..n] and injections; object ``k`` is the set {0..k-1}."""
    objs = [str(k) for k in range(n + 1)]
    arrows = {}
    data = {}
    for a in range(n + 1):
        for b in range(a, n + 1):
            for img in permutations(range(b), a):
                mid = _inj_id(a, b, img)
                arrows[mid] = (str(a), str(b))
                data[mid] = img
    ident = {str(k): _inj_id(k, k, tuple(range(k))) for k in range(n + 1)}
    comp = {}
    for f, (s, t) in arrows.items():
        for g, (s2, t2) in arrows.items():
            if s2 == t:
                img = tuple(data[g][x] for x in data[f])
                comp[g, f] = _inj_id(int(s), int(t2), img)
    return FinCategory(objs, arrows, ident, comp)


def finite_sets_injections(n: int) -> SquaresCategory:
    """M = E = injections; distinguished squares are pullbacks with bijective complement map."""
    c = injections_category(n)
    data = {m: tuple(int(ch) for ch in m.split(":")[1]) for m in c.morphisms}
    compl = {}
    for m, (s, t) in c.morphisms.items():
        b = int(t)
        rest = tuple(x for x in range(b) if x not in data[m])
        compl[m] = (str(len(rest)), _inj_id(len(rest), b, rest))
    squares = []
    for d in c.objects:
        into = c.arrows_into(d)
        for g in into:
            for j in into:
                pb = enumerate_pullback(c, j, g)
                for u in c.isomorphisms(pb.apex, pb.apex):
                    f, h = c.comp[pb.left, u], c.comp[pb.right, u]
                    # complement map is a bijection iff the images of j and g cover the target
                    if set(data[j]) | set(data[g]) == set(range(int(d))):
                        squares.append((f, h, j, g))
    return SquaresCategory(c, c.morphisms, c.morphisms, "0", squares, compl)


def idempotent_squares() -> SquaresCategory:
    """A squares category whose M contains a non-monic idempotent ``e``."""
    objs = ["O", "X"]
    arrows = {"id_O": ("O", "O"), "id_X": ("X", "X"), "oX": ("O", "X"), "e": ("X", "X")}

    def compose(g, f):
        if g.startswith("id_"):
            return f
        if f.startswith("id_"):
            return g
        if f == "oX":
            return "oX"
        return "e"

    c = table_category(objs, arrows, compose)
    M = ["id_O", "id_X", "oX", "e"]
    E = ["id_O", "id_X", "oX"]
    squares = {
        ("id_O", "id_O", "id_O", "id_O"),
        ("id_X", "id_X", "id_X", "id_X"),
        ("id_O", "oX", "oX", "id_X"),
        ("oX", "id_O", "id_X", "oX"),
        ("e", "id_X", "id_X", "e"),
        ("id_O", "oX", "oX", "e"),
    }
    compl = {"id_O": ("O", "id_O"), "oX": ("X", "id_X"), "id_X": ("O", "oX"), "e": ("O", "oX")}
    return SquaresCategory(c, E, M, "O", squares, compl)


def broken_complement(n: int = 2) -> SquaresCategory:
    """Injections where the complement of the empty inclusion into [n] is not the whole set."""
    S = finite_sets_injections(n)
    compl = dict(S.complements)
    compl[_inj_id(0, n, ())] = (str(n - 1), _inj_id(n - 1, n, tuple(range(n - 1))))
    return SquaresCategory(S.ambient, S.E, S.M, S.basepoint, S.distinguished, compl)


def thin_vertical(n: int = 2) -> SquaresCategory:
    """Injections with E cut down to identities, empty maps and one inclusion [1] -> [2]."""
    S = finite_sets_injections(n)
    c = S.ambient
    E = {m for m in c.morphisms if m.startswith("0>") or c.is_iso(m) and m == c.identity(c.src(m))}
    E.add(_inj_id(1, 2, (0,)))
    squares = [s for s in S.distinguished if s[1] in E and s[2] in E]
    return SquaresCategory(c, E, S.M, S.basepoint, squares, S.complements)


def non_pullback_square(n: int = 2) -> SquaresCategory:
    """Injections with one commuting but non-pullback square declared distinguished."""
    S = finite_sets_injections(n)
    extra = (_inj_id(0, 1, ()), _inj_id(0, 1, ()), _inj_id(1, 1, (0,)), _inj_id(1, 1, (0,)))
    assert not is_pullback_square(S.ambient, *extra)
    return SquaresCategory(S.ambient, S.E, S.M, S.basepoint, set(S.distinguished) | {extra}, S.complements)


def missing_square(n: int = 2) -> SquaresCategory:
    """Injections with one non-identity distinguished square removed."""
    S = finite_sets_injections(n)
    c = S.ambient
    victim = (_inj_id(1, 2, (0,)), _inj_id(1, 1, (0,)), _inj_id(2, 2, (1, 0)), _inj_id(1, 2, (1,)))
    assert victim in S.distinguished
    return SquaresCategory(c, S.E, S.M, S.basepoint, set(S.distinguished) - {victim}, S.complements)


def wrong_complement_map(n: int = 2) -> SquaresCategory:
    """Injections where [1] -> [2] (0 -> 0) is given the wrong complement inclusion."""
    S = finite_sets_injections(n)
    compl = dict(S.complements)
    compl[_inj_id(1, 2, (0,))] = ("1", _inj_id(1, 2, (0,)))
    return SquaresCategory(S.ambient, S.E, S.M, S.basepoint, S.distinguished, compl)


def removed_complement_square(n: int = 2) -> SquaresCategory:
    """Injections with the complement square of [1] -> [2] (0 -> 1) removed."""
    S = finite_sets_injections(n)
    victim = (_inj_id(0, 1, ()), _inj_id(0, 1, ()), _inj_id(1, 2, (0,)), _inj_id(1, 2, (1,)))
    assert victim in S.distinguished
    return SquaresCategory(S.ambient, S.E, S.M, S.basepoint, set(S.distinguished) - {victim}, S.complements)
