"""
Euler calculus on semilinear sets
=================================

Cell counts, refinement and the mod 2 homology that recovers chi.
"""

import random

from squaresk.constructible import cf_complex, homology_dims
from squaresk.semilinear import SemilinearSet, catalog, euler_char, random_hyperplanes

sets = catalog()
for name, X in sets.items():
    print(f"{name:22s} chi = {euler_char(X):2d}")

# extra random hyperplanes cut cells into smaller cells; chi does not move
annulus = sets["square_annulus"]
rng = random.Random(0)
print([euler_char(annulus, random_hyperplanes(rng, 2, 3)) for _ in range(5)])

# the constructible-function complex of the square boundary: one loop
c = cf_complex(sets["square_boundary"])
print("cells per degree", c.dims, "homology", homology_dims(c))

# a box open along one side is locally closed, with chi and all homology zero
bad = SemilinearSet.box([(0, 1, True, True), (0, 1, False, True)])
print(euler_char(bad), homology_dims(cf_complex(bad)))
