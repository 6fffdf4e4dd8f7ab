"""
Scissors congruence of rational polygons
========================================

Cut a square, move the pieces by translations, check the area invariant.
"""

import random
from fractions import Fraction

from squaresk.polygons import (
    PolyMorphism,
    RationalPolygon,
    area,
    area_respects_k0,
    complement_polytope,
    compose,
    inverse,
    is_invertible,
    morphisms_equal,
)

half = Fraction(1, 2)
unit = RationalPolygon.rect(0, 0, 1, 1)
left, right = RationalPolygon.rect(0, 0, half, 1), RationalPolygon.rect(half, 0, 1, 1)
swap = PolyMorphism.make(unit, unit, [(left, (half, 0)), (right, (-half, 0))])
print("swap invertible:", is_invertible(swap))
print("swap o swap = id:", morphisms_equal(compose(swap, swap), PolyMorphism.identity(unit)))
print("inverse is swap:", morphisms_equal(inverse(swap), swap))

corner = RationalPolygon.rect(0, 0, half, half)
rest, _ = complement_polytope(PolyMorphism.inclusion(corner, unit))
print("L-shape area:", area(rest))

rep = area_respects_k0(seed=7, trials=20)
for v in rep:
    print(v.name, v.status, v.checked)
