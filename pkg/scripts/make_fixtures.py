"""Regenerate fixtures/*.json from the bundled constructors."""

import json
from fractions import Fraction
from pathlib import Path

from squaresk import instances as inst
from squaresk import semilinear as sl
from squaresk.polygons import PolyMorphism, RationalPolygon

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def dump(name, obj):
    (OUT / f"{name}.json").write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    for name, X in sl.catalog().items():
        dump(name, X.to_json())
    dump("not_locally_closed", sl.not_locally_closed_example().to_json())
    for name, make in inst.ASSEMBLERS.items():
        dump(f"{name}_assembler", make().to_json())
    dump("subsets3_assembler", inst.subsets_assembler(3).to_json())
    dump("overlapping_cover", inst.overlapping_cover().to_json())
    dump("no_coproduct_assembler", inst.no_coproduct_assembler().to_json())
    dump("injections2", inst.finite_sets_injections(2).to_json())
    dump("injections2_category", inst.injections_category(2).to_json())
    dump("non_mono_category", inst.non_mono_category().to_json())
    for name in ("broken_complement", "thin_vertical", "non_pullback_square", "wrong_complement_map",
                 "removed_complement_square"):
        dump(name, getattr(inst, name)().to_json())
    dump("idempotent_squares", inst.idempotent_squares().to_json())
    cat = sl.catalog()
    dump("exactness_square", {"X": cat["closed_square"].to_json(), "C": cat["square_boundary"].to_json()})
    dump("exactness_interval", {"X": cat["closed_interval"].to_json(), "C": sl.SemilinearSet.point((0,)).to_json()})
    h = Fraction(1, 2)
    L, R = RationalPolygon.rect(0, 0, h, 1), RationalPolygon.rect(h, 0, 1, 1)
    U = RationalPolygon.rect(0, 0, 1, 1)
    dump("cut_and_swap", PolyMorphism.make(U, U, [(L, (h, 0)), (R, (-h, 0))]).to_json())


if __name__ == "__main__":
    main()
