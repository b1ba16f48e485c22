"""Brute-force reference computations for the integer-lattice kernel.

Everything here goes through determinantal divisors: ``D_k(A)`` is the gcd
of all ``k x k`` minors of ``A``, computed by cofactor expansion.  They
depend only on the row lattice of ``A`` (unimodular row operations and
appending redundant rows do not change them), which gives independent
tests for normal forms and lattice operations:

* SNF diagonal entries are ``D_k / D_{k-1}``;
* for a rank-``r`` lattice ``L1`` inside ``L2`` with the same span,
  ``D_r(L1) = [L2 : L1] * D_r(L2)``, so ``L1 = L2`` iff both have rank
  ``r``, ``[L1; L2]`` has rank ``r`` and all three ``D_r`` agree.

None of this shares code with :mod:`weightlab.linalg.lattice`.
"""

from itertools import combinations, product
from math import gcd


def det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det(minor)
    return total


def minors(m, k):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for ri in combinations(range(rows), k):
        for ci in combinations(range(cols), k):
            yield det([[m[r][c] for c in ci] for r in ri])


def det_divisor(m, k):
    """gcd of the ``k x k`` minors (0 when all vanish or none exist)."""
    g = 0
    for x in minors(m, k):
        g = gcd(g, x)
    return g


def rank(m):
    """Largest ``k`` with a nonzero ``k x k`` minor."""
    if not m:
        return 0
    r = 0
    for k in range(1, min(len(m), len(m[0])) + 1):
        if det_divisor(m, k):
            r = k
        else:
            break
    return r


def smith_diagonal(m):
    """Invariant factors ``d_k = D_k / D_{k-1}`` (nonzero ones only)."""
    out = []
    prev = 1
    for k in range(1, rank(m) + 1):
        dk = det_divisor(m, k)
        out.append(dk // prev)
        prev = dk
    return out


def _lat_invariants(rows):
    r = rank(rows)
    return r, (det_divisor(rows, r) if r else 1)


def same_lattice(a, b):
    """Row lattices of ``a`` and ``b`` coincide."""
    a, b = [list(r) for r in a], [list(r) for r in b]
    ra, da = _lat_invariants(a)
    rb, db = _lat_invariants(b)
    if ra != rb:
        return False
    if ra == 0:
        return True
    rs, ds = _lat_invariants(a + b)
    return rs == ra and ds == da == db


def contains(a, v):
    """``v`` lies in the row lattice of ``a``."""
    a = [list(r) for r in a]
    if not any(v):
        return True
    if not a:
        return False
    r, d = _lat_invariants(a)
    r2, d2 = _lat_invariants(a + [list(v)])
    return r2 == r and d2 == d


def sublattice(a, b):
    """Row lattice of ``a`` inside that of ``b``."""
    return all(contains(b, v) for v in a)


def is_row_hnf(h):
    """Canonical row HNF shape: nonzero rows, increasing pivots, reduced above."""
    pivots = []
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            return False
        pivots.append(nz[0])
    if any(p >= q for p, q in zip(pivots, pivots[1:])):
        return False
    for i, p in enumerate(pivots):
        if h[i][p] <= 0:
            return False
        for k in range(i):
            if not 0 <= h[k][p] < h[i][p]:
                return False
    return True


def check_intersection(a, b, inter, box=3):
    """Failures (list of strings) for a claimed basis of ``L(a) & L(b)``.

    Containment in both lattices is tested with the divisor criterion.
    Maximality uses the second isomorphism theorem when one span contains
    the other:
    ``[L1 : L1 & L2] = [L1 + L2 : L2]``, turned into divisor identities; in
    the remaining cases the rank is checked against
    ``rank L1 + rank L2 - rank(L1 + L2)`` and every small combination of
    ``L1``'s rows that lies in ``L2`` must lie in the claimed intersection.
    """
    a, b, inter = [list(r) for r in a], [list(r) for r in b], [list(r) for r in inter]
    fails = []
    if not sublattice(inter, a) or not sublattice(inter, b):
        fails.append("claimed intersection is not inside both lattices")
        return fails
    n = len((a or b or inter or [[0]])[0])
    ra, da = _lat_invariants(a)
    rb, db = _lat_invariants(b)
    rs, ds = _lat_invariants(a + b)
    ri, di = _lat_invariants(inter)
    if ra == 0 or rb == 0:
        if ri:
            fails.append("intersection with the zero lattice is nonzero")
        return fails
    if ri != ra + rb - rs:
        fails.append(f"rank {ri} differs from {ra + rb - rs}")
        return fails
    if ra == rs or rb == rs:
        # one span contains the other: [L1 : I] = [L1 + L2 : L2] (or with roles swapped),
        # and either way it reads D(I) * D(L1 + L2) = D(L1) * D(L2)
        if di * ds != da * db:
            fails.append("index identity fails")
        return fails
    for coeffs in product(range(-box, box + 1), repeat=len(a)):
        v = [sum(c * row[j] for c, row in zip(coeffs, a)) for j in range(n)]
        if contains(b, v) and not contains(inter, v):
            fails.append(f"{v} lies in both lattices but not in the claimed intersection")
            break
    return fails
