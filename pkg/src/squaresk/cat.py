"""Finite categories presented by closed composition tables.

Every predicate here is decided by exhaustive enumeration over the hom-sets,
so the categories are expected to be small (tens to a few thousand arrows).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping


class StructuralError(ValueError):
    """Input data is malformed (dangling ids, wrong shapes), as opposed to a law violation."""


@dataclass
class ValidationReport:
    """Outcome of a validator: structural problems and law violations, kept apart."""

    structural: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def extend(self, other: "ValidationReport") -> None:
        self.structural.extend(other.structural)
        self.violations.extend(other.violations)
        self.witnesses.extend(other.witnesses)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "structural": list(self.structural),
            "violations": list(self.violations),
            "witnesses": list(self.witnesses),
        }


@dataclass(frozen=True)
class PullbackCone:
    apex: str
    left: str  # leg to the source of the first cospan arrow
    right: str  # leg to the source of the second cospan arrow


class FinCategory:
    """A category with finitely many objects and morphisms.

    ``morphisms`` maps an id to ``(src, dst)``; ``comp`` maps ``(g, f)`` to the
    id of ``g . f`` and is expected to list every composable pair.  ``comp`` may
    be any mapping, which lets generated categories compose on demand.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Mapping[str, tuple[str, str]],
        identities: Mapping[str, str],
        comp: Mapping[tuple[str, str], str],
    ):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.comp = comp
        self._hom: dict[tuple[str, str], list[str]] = defaultdict(list)
        self._out: dict[str, list[str]] = defaultdict(list)
        self._in: dict[str, list[str]] = defaultdict(list)
        for m in sorted(self.morphisms):
            s, t = self.morphisms[m]
            self._hom[s, t].append(m)
            self._out[s].append(m)
            self._in[t].append(m)
        self._pullbacks: dict[tuple[str, str], PullbackCone | None] = {}
        self._isos: dict[str, str | None] = {}

    # -- basic access -------------------------------------------------------

    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def dst(self, f: str) -> str:
        return self.morphisms[f][1]

    def hom(self, x: str, y: str) -> list[str]:
        return self._hom.get((x, y), [])

    def arrows_from(self, x: str) -> list[str]:
        return self._out.get(x, [])

    def arrows_into(self, y: str) -> list[str]:
        return self._in.get(y, [])

    def identity(self, x: str) -> str:
        return self.identities[x]

    def compose(self, *arrows: str) -> str:
        """``compose(h, g, f)`` is ``h . g . f``."""
        result = arrows[-1]
        for g in reversed(arrows[:-1]):
            if self.dst(result) != self.src(g):
                raise StructuralError(f"{g} . {result} is not composable")
            result = self.comp[g, result]
        return result

    def __contains__(self, f: str) -> bool:
        return f in self.morphisms

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    # -- isomorphisms -------------------------------------------------------

    def inverse(self, f: str) -> str | None:
        if f not in self._isos:
            s, t = self.morphisms[f]
            found = None
            for g in self.hom(t, s):
                if self.comp[g, f] == self.identities[s] and self.comp[f, g] == self.identities[t]:
                    found = g
                    break
            self._isos[f] = found
        return self._isos[f]

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def isomorphisms(self, x: str, y: str) -> list[str]:
        return [f for f in self.hom(x, y) if self.is_iso(f)]

    def isomorphic(self, x: str, y: str) -> bool:
        return x == y or bool(self.isomorphisms(x, y))

    # -- limits -------------------------------------------------------------

    def pullback(self, f: str, g: str) -> PullbackCone | None:
        """Canonical pullback of the cospan ``f: A -> C <- B: g`` (cached)."""
        key = (f, g)
        if key not in self._pullbacks:
            self._pullbacks[key] = enumerate_pullback(self, f, g)
        return self._pullbacks[key]

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": m, "src": s, "dst": t} for m, (s, t) in sorted(self.morphisms.items())],
            "identities": dict(sorted(self.identities.items())),
            "comp": [[g, f, gf] for (g, f), gf in sorted(self.comp.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FinCategory":
        try:
            objects = [str(o) for o in data["objects"]]
            morphisms = {str(m["id"]): (str(m["src"]), str(m["dst"])) for m in data["morphisms"]}
            identities = {str(k): str(v) for k, v in data["identities"].items()}
            comp = {(str(g), str(f)): str(gf) for g, f, gf in data["comp"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed category JSON: {exc!r}") from exc
        return cls(objects, morphisms, identities, comp)


def table_category(objects, arrows, compose_fn) -> FinCategory:
    """Build a table category from ``arrows = {id: (src, dst)}`` and a composition rule.

    ``compose_fn(g, f)`` returns the id of ``g . f``; identities are recognised as
    the arrows named ``"id_" + obj``.
    """
    identities = {x: f"id_{x}" for x in objects}
    comp = {}
    by_src = defaultdict(list)
    for m, (s, _) in arrows.items():
        by_src[s].append(m)
    for f, (_, t) in arrows.items():
        for g in by_src[t]:
            comp[g, f] = compose_fn(g, f)
    return FinCategory(objects, arrows, identities, comp)


def validate_category(c: FinCategory) -> ValidationReport:
    """Check that the table is well formed and satisfies the category axioms."""
    rep = ValidationReport()
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        rep.structural.append("duplicate object ids")
    for m, (s, t) in c.morphisms.items():
        if s not in objs or t not in objs:
            rep.structural.append(f"morphism {m} has dangling endpoint(s) {s}->{t}")
    for x in c.objects:
        i = c.identities.get(x)
        if i is None:
            rep.structural.append(f"object {x} has no identity")
        elif i not in c.morphisms or c.morphisms[i] != (x, x):
            rep.structural.append(f"identity {i} of {x} is not an endomorphism of {x}")
    for (g, f), gf in c.comp.items():
        for a in (g, f, gf):
            if a not in c.morphisms:
                rep.structural.append(f"comp row ({g},{f})->{gf} mentions unknown morphism {a}")
        if not all(a in c.morphisms for a in (g, f, gf)):
            continue
        if c.dst(f) != c.src(g):
            rep.structural.append(f"comp row ({g},{f}) lists a non-composable pair")
        elif c.morphisms[gf] != (c.src(f), c.dst(g)):
            rep.structural.append(
                f"comp({g},{f}) = {gf} has endpoints {c.morphisms[gf]}, expected {(c.src(f), c.dst(g))}"
            )
    if rep.structural:
        return rep
    for f in c.morphisms:
        for g in c.arrows_from(c.dst(f)):
            if (g, f) not in c.comp:
                rep.structural.append(f"composite of composable pair ({g},{f}) missing")
    if rep.structural:
        return rep
    for f, (s, t) in c.morphisms.items():
        if c.comp[f, c.identities[s]] != f or c.comp[c.identities[t], f] != f:
            rep.violations.append(f"identity law fails for {f}")
            rep.witnesses.append({"law": "identity", "morphism": f})
    for f in c.morphisms:
        for g in c.arrows_from(c.dst(f)):
            gf = c.comp[g, f]
            for h in c.arrows_from(c.dst(g)):
                if c.comp[h, gf] != c.comp[c.comp[h, g], f]:
                    rep.violations.append(f"associativity fails for ({h},{g},{f})")
                    rep.witnesses.append({"law": "associativity", "triple": [h, g, f]})
    return rep


def _require(c: FinCategory, *arrows: str) -> None:
    for a in arrows:
        if a not in c.morphisms:
            raise KeyError(f"unknown morphism {a!r}")


def is_mono(c: FinCategory, f: str) -> bool:
    _require(c, f)
    s = c.src(f)
    for x in c.objects:
        seen: dict[str, str] = {}
        for g in c.hom(x, s):
            fg = c.comp[f, g]
            if fg in seen:
                return False
            seen[fg] = g
    return True


def is_initial(c: FinCategory, o: str) -> bool:
    if o not in c.objects:
        raise KeyError(f"unknown object {o!r}")
    return all(len(c.hom(o, x)) == 1 for x in c.objects)


def is_strict_initial(c: FinCategory, o: str) -> bool:
    if not is_initial(c, o):
        raise ValueError(f"{o} is not initial")
    return all(not c.hom(x, o) for x in c.objects if not c.isomorphic(x, o))


def _cones(c: FinCategory, f: str, g: str) -> Iterator[tuple[str, str, str]]:
    a, b = c.src(f), c.src(g)
    for p in c.objects:
        for l, r in product(c.hom(p, a), c.hom(p, b)):
            if c.comp[f, l] == c.comp[g, r]:
                yield p, l, r


def _is_universal(c: FinCategory, cone, cones) -> bool:
    p, l, r = cone
    for q, ql, qr in cones:
        n = sum(1 for u in c.hom(q, p) if c.comp[l, u] == ql and c.comp[r, u] == qr)
        if n != 1:
            return False
    return True


def all_pullbacks(c: FinCategory, f: str, g: str) -> list[PullbackCone]:
    """Every cone over ``f, g`` with the universal property, in canonical order."""
    _require(c, f, g)
    if c.dst(f) != c.dst(g):
        raise StructuralError(f"{f} and {g} do not form a cospan")
    cones = sorted(_cones(c, f, g))
    return [PullbackCone(*k) for k in cones if _is_universal(c, k, cones)]


def enumerate_pullback(c: FinCategory, f: str, g: str) -> PullbackCone | None:
    """Pullback by brute force: smallest universal cone by (apex, left, right)."""
    _require(c, f, g)
    if c.dst(f) != c.dst(g):
        raise StructuralError(f"{f} and {g} do not form a cospan")
    cones = sorted(_cones(c, f, g))
    for k in cones:
        if _is_universal(c, k, cones):
            return PullbackCone(*k)
    return None


def pullback(c: FinCategory, f: str, g: str) -> PullbackCone | None:
    _require(c, f, g)
    if c.dst(f) != c.dst(g):
        raise StructuralError(f"{f} and {g} do not form a cospan")
    return c.pullback(f, g)


def is_pullback_square(c: FinCategory, top: str, left: str, right: str, bottom: str) -> bool:
    """Is the commuting square ``top: A->B, left: A->C, right: B->D, bottom: C->D`` a pullback?"""
    if c.comp[right, top] != c.comp[bottom, left]:
        return False
    pb = c.pullback(right, bottom)
    if pb is None:
        return False
    a = c.src(top)
    for u in c.hom(a, pb.apex):
        if c.comp[pb.left, u] == top and c.comp[pb.right, u] == left:
            return c.is_iso(u)
    return False


def comparison_isomorphism(c: FinCategory, cone1: PullbackCone, cone2: PullbackCone) -> str | None:
    """The unique iso ``cone1.apex -> cone2.apex`` commuting with the legs, if there is exactly one."""
    found = [
        u
        for u in c.hom(cone1.apex, cone2.apex)
        if c.comp[cone2.left, u] == cone1.left and c.comp[cone2.right, u] == cone1.right
    ]
    if len(found) == 1 and c.is_iso(found[0]):
        return found[0]
    return None
