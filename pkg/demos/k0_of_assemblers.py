"""
K0 of a small assembler, two ways
=================================

Generators and relations read off the covering families, compared with the
presentation coming from the minimal squares category C^min.
"""

from squaresk import instances as inst
from squaresk.covering import build_cmin
from squaresk.k0 import k0_compare_cmin, k0_invariants, k0_presentation_assembler, k0_presentation_squares

A = inst.partition_assembler()
p = k0_presentation_assembler(A)
print("generators", p.generators)
print("relations ", p.relations)
print("K0 =", k0_invariants(p))

S = build_cmin(A, 2)
print(len(S.ambient.objects), "objects and", len(S.distinguished), "distinguished squares in C^min")
print("K0 of C^min =", k0_invariants(k0_presentation_squares(S)))

for name, make in sorted(inst.ASSEMBLERS.items()):
    r = k0_compare_cmin(make(), 2)
    print(f"{name:11s} {r.status:12s} {r.assembler}")
