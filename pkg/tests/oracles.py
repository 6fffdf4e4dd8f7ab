"""Independent reference computations used to cross-check the library.

Nothing here touches the arrangement, elimination or SNF code under test: the
Euler characteristic oracle only calls ``X.contains`` on sample points, and the
SNF oracle goes through sympy or determinantal divisors.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd

# -- Euler characteristic by sweeping ----------------------------------------------------------


def _chi_1d(member, cuts) -> int:
    """chi of a subset of R given by membership, constant between the sorted cut points."""
    pts = sorted(set(cuts))
    if not pts:
        return -1 if member(Fraction(0)) else 0
    chi = sum(1 for p in pts if member(p))
    gaps = [pts[0] - 1] + [(a + b) / 2 for a, b in zip(pts, pts[1:])] + [pts[-1] + 1]
    return chi - sum(1 for g in gaps if member(g))


def sweep_chi(X) -> int:
    """Euler characteristic of a semilinear set in R^1 or R^2 from point membership.

    In the plane, x-values where two constraint lines cross or a line is vertical split
    R into points and open strips; over a strip the set is a product with an open interval.
    """
    hyps = [(tuple(Fraction(v) for v in a), Fraction(b)) for a, b in X.hyperplanes()]
    if X.dim == 1:
        return _chi_1d(lambda x: X.contains((x,)), [b / a[0] for a, b in hyps if a[0] != 0])
    if X.dim != 2:
        raise ValueError("sweep oracle handles dimension 1 and 2")
    crit = {b / a[0] for a, b in hyps if a[1] == 0 and a[0] != 0}
    for (a1, b1), (a2, b2) in combinations(hyps, 2):
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if det != 0:
            crit.add((b1 * a2[1] - b2 * a1[1]) / det)

    def fiber(x0):
        cuts = [(b - a[0] * x0) / a[1] for a, b in hyps if a[1] != 0]
        return _chi_1d(lambda y: X.contains((x0, y)), cuts)

    xs = sorted(crit)
    if not xs:
        return -fiber(Fraction(0))
    mids = [xs[0] - 1] + [(a + b) / 2 for a, b in zip(xs, xs[1:])] + [xs[-1] + 1]
    return sum(fiber(c) for c in xs) - sum(fiber(m) for m in mids)


# -- Smith normal form ---------------------------------------------------------------------------


def sympy_invariants(m) -> list[int]:
    """Nonzero invariant factors (absolute values) via sympy."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    if not m or not m[0]:
        return []
    D = smith_normal_form(Matrix(m), domain=ZZ)
    out = [abs(int(D[i, i])) for i in range(min(D.shape))]
    return [d for d in out if d]


def _det(rows) -> int:
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return int(det)


def determinantal_invariants(m) -> list[int]:
    """Invariant factors d_k / d_(k-1), with d_k the gcd of all k x k minors (small matrices)."""
    if not m or not m[0]:
        return []
    r, c = len(m), len(m[0])
    out, prev = [], 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, _det([[m[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


# -- finite categories --------------------------------------------------------------------------


def brute_is_mono(c, f) -> bool:
    """Enumerate every pair of parallel arrows into src(f)."""
    s = c.src(f)
    for x in c.objects:
        arrows = c.hom(x, s)
        for g, h in product(arrows, arrows):
            if g != h and c.comp[f, g] == c.comp[f, h]:
                return False
    return True


def brute_pullback_apexes(c, f, g) -> list[str]:
    """Apexes of all cones through which every cone factors uniquely."""
    cones = [(x, p, q) for x in c.objects for p in c.hom(x, c.src(f)) for q in c.hom(x, c.src(g))
             if c.comp[f, p] == c.comp[g, q]]
    out = []
    for x, p, q in cones:
        ok = True
        for y, p2, q2 in cones:
            facts = [u for u in c.hom(y, x) if c.comp[p, u] == p2 and c.comp[q, u] == q2]
            if len(facts) != 1:
                ok = False
                break
        if ok:
            out.append(x)
    return out
