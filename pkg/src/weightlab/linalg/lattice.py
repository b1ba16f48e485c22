"""Integer normal forms (Hermite, Smith) and finite-rank lattices in Z^n.

HNF here is row-style: basis vectors are rows, pivot columns strictly
increase down the rows, each pivot is positive and the entries above a
pivot lie in ``[0, pivot)``.  That form is unique for a lattice, so
lattice equality is tuple equality of the bases.
"""

from dataclasses import dataclass


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _row_combine(rows, i, j, x, y, u, v):
    """rows[i], rows[j] <- x*ri + y*rj, u*ri + v*rj (in place)."""
    ri, rj = rows[i], rows[j]
    rows[i] = [x * a + y * b for a, b in zip(ri, rj)]
    rows[j] = [u * a + v * b for a, b in zip(ri, rj)]


def hnf_with_transform(rows, ncols=None):
    """Row HNF with a unimodular transform.

    Returns ``(H, U, rank)`` where ``U @ A`` has ``H`` as its first ``rank``
    rows and zeros below.
    """
    a = [list(map(int, r)) for r in rows]
    k = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    r = 0
    for c in range(n):
        if r == k:
            break
        for i in range(r + 1, k):
            b = a[i][c]
            if b == 0:
                continue
            p = a[r][c]
            g, x, y = xgcd(p, b)
            _row_combine(a, r, i, x, y, -b // g, p // g)
            _row_combine(u, r, i, x, y, -b // g, p // g)
        p = a[r][c]
        if p == 0:
            continue
        if p < 0:
            a[r] = [-z for z in a[r]]
            u[r] = [-z for z in u[r]]
            p = -p
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [z - q * w for z, w in zip(a[i], a[r])]
                u[i] = [z - q * w for z, w in zip(u[i], u[r])]
        r += 1
    return [tuple(row) for row in a[:r]], [tuple(row) for row in u], r


def hnf(rows, ncols=None):
    return hnf_with_transform(rows, ncols)[0]


def pivot_columns(h):
    out = []
    for row in h:
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def is_hnf(h):
    piv = pivot_columns(h)
    if len(piv) != len(h) or any(b <= a for a, b in zip(piv, piv[1:])):
        return False
    for i, (row, c) in enumerate(zip(h, piv)):
        if row[c] <= 0 or any(row[j] for j in range(c)):
            return False
        if any(not (0 <= h[k][c] < row[c]) for k in range(i)):
            return False
    return True


def _elimination(p, b):
    """Unimodular ``(x, y, s, t)`` sending ``(p, b)`` to ``(g, 0)``.

    When ``p`` divides ``b`` this is a plain subtraction, which leaves the
    pivot row/column untouched; otherwise ``g = gcd(p, b)`` is strictly
    smaller than ``|p|``, so elimination always makes progress.
    """
    if b % p == 0:
        return 1, 0, -(b // p), 1
    g, x, y = xgcd(p, b)
    return x, y, -b // g, p // g


def snf(m):
    """Smith normal form ``(U, D, V)`` with ``U @ m @ V == D``.

    U and V are unimodular, D is diagonal with non-negative entries each
    dividing the next.
    """
    a = [list(map(int, r)) for r in m]
    k = len(a)
    n = len(a[0]) if k else 0
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_combine(i, j, x, y, s, t):
        # ci, cj <- x*ci + y*cj, s*ci + t*cj
        for mat in (a, v):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i] = x * ci + y * cj
                row[j] = s * ci + t * cj

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(k, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, k) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        while True:
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            u[t], u[pi] = u[pi], u[t]
            swap_cols(t, pj)
            for i in range(t + 1, k):
                b = a[i][t]
                if b:
                    x, y, s_, t_ = _elimination(a[t][t], b)
                    _row_combine(a, t, i, x, y, s_, t_)
                    _row_combine(u, t, i, x, y, s_, t_)
            for j in range(t + 1, n):
                b = a[t][j]
                if b:
                    col_combine(t, j, *_elimination(a[t][t], b))
            if any(a[i][t] for i in range(t + 1, k)):
                nz = [(abs(a[i][j]), i, j) for i in range(t, k) for j in range(t, n) if a[i][j]]
                continue
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, k) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            i = bad[0]
            a[t] = [z + w for z, w in zip(a[t], a[i])]
            u[t] = [z + w for z, w in zip(u[t], u[i])]
            nz = [(abs(a[i][j]), i, j) for i in range(t, k) for j in range(t, n) if a[i][j]]
        if a[t][t] < 0:
            a[t] = [-z for z in a[t]]
            u[t] = [-z for z in u[t]]
        t += 1
    return [tuple(r) for r in u], [tuple(r) for r in a], [tuple(r) for r in v]


def int_matmul(a, b):
    bt = list(zip(*b)) if b else []
    return [tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in a]


def int_det(m):
    """Exact determinant via Bareiss fraction-free elimination."""
    a = [list(map(int, r)) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n - 1):
        if a[c][c] == 0:
            sw = next((i for i in range(c + 1, n) if a[i][c]), None)
            if sw is None:
                return 0
            a[c], a[sw] = a[sw], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class IntLattice:
    """A subgroup of Z^n stored by its canonical row-HNF basis."""

    ambient_rank: int
    basis: tuple

    @classmethod
    def from_generators(cls, gens, ambient_rank=None):
        gens = [tuple(int(x) for x in g) for g in gens]
        if ambient_rank is None:
            if not gens:
                raise LatticeError("ambient rank needed for an empty generator list")
            ambient_rank = len(gens[0])
        if any(len(g) != ambient_rank for g in gens):
            raise LatticeError("generator length differs from the ambient rank")
        return cls(ambient_rank, tuple(hnf(gens, ambient_rank)))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def full(cls, n):
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rank(self):
        return len(self.basis)

    def _same_ambient(self, other):
        if self.ambient_rank != other.ambient_rank:
            raise LatticeError(f"ambient rank mismatch: {self.ambient_rank} vs {other.ambient_rank}")

    def contains(self, v):
        return lattice_contains(self, v)

    def __add__(self, other):
        return lattice_sum(self, other)

    def __and__(self, other):
        return lattice_intersect(self, other)

    def __le__(self, other):
        return all(other.contains(b) for b in self.basis)

    def scaled(self, k):
        return IntLattice.from_generators([[k * x for x in b] for b in self.basis], self.ambient_rank)

    def to_json(self):
        return {"ambient_rank": self.ambient_rank, "basis": [[str(x) for x in b] for b in self.basis]}

    @classmethod
    def from_json(cls, data):
        return cls.from_generators([[int(x) for x in b] for b in data["basis"]], int(data["ambient_rank"]))


def lattice_sum(a, b):
    a._same_ambient(b)
    return IntLattice.from_generators(list(a.basis) + list(b.basis), a.ambient_rank)


def lattice_intersect(a, b):
    """Intersection from the integer left kernel of the stacked bases."""
    a._same_ambient(b)
    n = a.ambient_rank
    if not a.basis or not b.basis:
        return IntLattice.zero(n)
    stacked = list(a.basis) + list(b.basis)
    _, u, r = hnf_with_transform(stacked, n)
    ka = len(a.basis)
    gens = []
    for row in u[r:]:
        coeff = row[:ka]
        gens.append(tuple(sum(c * x for c, x in zip(coeff, col)) for col in zip(*a.basis)))
    return IntLattice.from_generators(gens, n)


def lattice_contains(lat, v):
    v = [int(x) for x in v]
    if len(v) != lat.ambient_rank:
        raise LatticeError(f"vector of length {len(v)} in a rank-{lat.ambient_rank} ambient")
    for row, c in zip(lat.basis, pivot_columns(lat.basis)):
        if any(v[j] for j in range(c)):
            return False
        q, rem = divmod(v[c], row[c])
        if rem:
            return False
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)
