"""
Staircases and chains
=====================

The functors between chains of horizontal maps and staircase diagrams,
checked on finite sets and injections.
"""

from squaresk import instances as inst
from squaresk.simplicial import (
    SQUARE,
    TPLUS,
    check_functor_identities,
    check_roundtrip_transformations,
    enumerate_chains,
    enumerate_staircases,
    functor_F,
)

S = inst.finite_sets_injections(2)
for n in range(4):
    print(n, len(enumerate_chains(S, n)), "chains,",
          len(enumerate_staircases(S, n, TPLUS)), "T+ diagrams,",
          len(enumerate_staircases(S, n, SQUARE)), "square diagrams")

# a chain 0 -> 1 -> 2 of injections and its staircase of complements
ch = max(enumerate_chains(S, 2), key=lambda c: len(set(c.objects)))
print(ch.objects, ch.maps)
d = functor_F(S, ch)
for pos, obj in d.entries:
    print(pos, obj)

for n in range(3):
    print(n, check_functor_identities(S, n).status, check_roundtrip_transformations(S, n).status)
