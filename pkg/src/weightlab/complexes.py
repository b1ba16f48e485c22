"""Bounded cochain complexes over a base category and graded maps between them.

Sign conventions (fixed here; every triangle identity depends on them):

* ``M[k]^i = M^{i+k}`` with differential ``(-1)^k d``.
* A graded map ``f`` of degree ``p`` has components ``f^i: A^i -> B^{i+p}``.
  Its Hom-complex differential is ``D f = d_B f - (-1)^p f d_A``; chain maps
  are the degree-0 cycles.  Shifting a degree-``p`` map by ``k`` multiplies it
  by ``(-1)^{kp}``.
* ``twist(B, A, g)`` for a degree-1 cycle ``g: A -> B`` has terms
  ``B^i + A^i`` and differential ``[[d_B, g], [0, d_A]]``.
* ``cone(f: M -> N) = twist(N, M[1], f)``, i.e. ``d(n, m) = (d_N n + f m, -d_M m)``.
"""

from .base import BaseMorphism, BaseObject, block_morphism, compose, concat, direct_sum_objects, hom_coordinates
from .linalg import Matrix, kernel_basis, rank, solve


class ComplexError(ValueError):
    pass


class Complex:
    """Finitely supported cochain complex; ``diffs[i]: terms[i] -> terms[i+1]``."""

    __slots__ = ("cat", "terms", "diffs", "_cache", "__weakref__")

    def __init__(self, cat, terms, diffs=None, check=True):
        self.cat = cat
        self.terms = {int(i): o for i, o in terms.items() if not o.is_zero()}
        diffs = diffs or {}
        self.diffs = {}
        for i, d in diffs.items():
            i = int(i)
            if d.is_zero():
                continue
            if d.src != self.term(i) or d.tgt != self.term(i + 1):
                raise ComplexError(f"differential in degree {i} has the wrong source or target")
            self.diffs[i] = d
        self._cache = {}
        if check:
            bad = self.first_d2_failure()
            if bad is not None:
                raise ComplexError(f"d^{bad + 1} o d^{bad} != 0")

    @classmethod
    def zero(cls, cat):
        return cls(cat, {}, {}, check=False)

    @classmethod
    def stalk(cls, obj, degree=0):
        return cls(obj.cat, {degree: obj}, {}, check=False)

    def term(self, i):
        return self.terms.get(i) or BaseObject(self.cat, ())

    def diff(self, i):
        d = self.diffs.get(i)
        if d is None:
            return BaseMorphism.zero(self.term(i), self.term(i + 1))
        return d

    def first_d2_failure(self):
        for i in sorted(self.diffs):
            if i + 1 in self.diffs and not compose(self.diffs[i + 1], self.diffs[i]).is_zero():
                return i
        return None

    @property
    def support(self):
        return sorted(self.terms)

    def bounds(self):
        """``(lo, hi)`` of the support, or None for the zero complex."""
        if not self.terms:
            return None
        s = self.support
        return s[0], s[-1]

    def is_zero(self):
        return not self.terms

    def dims(self):
        return {i: len(o) for i, o in sorted(self.terms.items())}

    def mult_profile(self):
        return {i: o.mult_vector() for i, o in sorted(self.terms.items())}

    def __eq__(self, other):
        return (isinstance(other, Complex) and self.terms == other.terms
                and self.diffs == other.diffs)

    def __hash__(self):
        return hash(tuple(sorted((i, o) for i, o in self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "Complex(0)"
        parts = [f"{i}:{o!r}" for i, o in sorted(self.terms.items())]
        return "Complex(" + ", ".join(parts) + ")"


class GradedMap:
    """Family ``f^i: src^i -> tgt^{i+degree}``; missing components are zero."""

    __slots__ = ("src", "tgt", "degree", "comps")

    def __init__(self, src, tgt, degree, comps=None, check=True):
        self.src = src
        self.tgt = tgt
        self.degree = int(degree)
        self.comps = {}
        for i, c in (comps or {}).items():
            if c.is_zero():
                continue
            if check and (c.src != src.term(i) or c.tgt != tgt.term(i + self.degree)):
                raise ComplexError(f"component {i} of a degree-{degree} map has the wrong shape")
            self.comps[int(i)] = c

    def comp(self, i):
        c = self.comps.get(i)
        if c is None:
            return BaseMorphism.zero(self.src.term(i), self.tgt.term(i + self.degree))
        return c

    @classmethod
    def zero(cls, src, tgt, degree=0):
        return cls(src, tgt, degree, {}, check=False)

    @classmethod
    def identity(cls, m):
        return cls(m, m, 0, {i: BaseMorphism.identity(o) for i, o in m.terms.items()}, check=False)

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and self.degree == other.degree
                and self.src == other.src and self.tgt == other.tgt and self.comps == other.comps)

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.comps))))

    def _parallel(self, other):
        if self.degree != other.degree or self.src != other.src or self.tgt != other.tgt:
            raise ComplexError("graded maps are not parallel")

    def __add__(self, other):
        self._parallel(other)
        comps = dict(self.comps)
        for i, c in other.comps.items():
            comps[i] = comps[i] + c if i in comps else c
        return GradedMap(self.src, self.tgt, self.degree, comps, check=False)

    def __neg__(self):
        return GradedMap(self.src, self.tgt, self.degree, {i: -c for i, c in self.comps.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return GradedMap(self.src, self.tgt, self.degree, {i: m.scale(c) for i, m in self.comps.items()}, check=False)

    def __matmul__(self, other):
        return compose_graded(self, other)

    def is_chain_map(self):
        return self.degree == 0 and hom_differential(self).is_zero()

    def __repr__(self):
        return f"GradedMap(deg {self.degree}, {self.src!r} -> {self.tgt!r})"


def compose_graded(f, g):
    """``f o g``; degrees add."""
    if g.tgt is not f.src and g.tgt != f.src:
        raise ComplexError("cannot compose graded maps: target/source mismatch")
    comps = {}
    for i, gi in g.comps.items():
        fi = f.comps.get(i + g.degree)
        if fi is not None:
            comps[i] = compose(fi, gi)
    return GradedMap(g.src, f.tgt, f.degree + g.degree, comps, check=False)


def hom_differential(f):
    """``D f = d_B f - (-1)^p f d_A`` (degree ``p + 1``)."""
    a, b, p = f.src, f.tgt, f.degree
    sign = -1 if p % 2 == 0 else 1
    comps = {}
    keys = set(f.comps) | {i - 1 for i in f.comps}
    for j in keys:
        # component j: A^j -> B^{j+p+1}
        acc = None
        fj = f.comps.get(j)
        if fj is not None:
            db = b.diffs.get(j + p)
            if db is not None:
                acc = compose(db, fj)
        fj1 = f.comps.get(j + 1)
        if fj1 is not None:
            da = a.diffs.get(j)
            if da is not None:
                t = compose(fj1, da)
                if sign == -1:
                    t = -t
                acc = t if acc is None else acc + t
        if acc is not None and not acc.is_zero():
            comps[j] = acc
    return GradedMap(a, b, p + 1, comps, check=False)


def chain_map(src, tgt, comps, check=True):
    f = GradedMap(src, tgt, 0, comps)
    if check and not hom_differential(f).is_zero():
        raise ComplexError("components do not commute with the differentials")
    return f


# Sign picked up by the differential under a shift by one; the self-test
# mutation check flips it to confirm that triangle verification notices.
SHIFT_SIGN = -1


def shift(m, k):
    """``m[k]``: terms reindexed by ``k``, differentials multiplied by ``SHIFT_SIGN^k``."""
    if k == 0:
        return m
    terms = {i - k: o for i, o in m.terms.items()}
    diffs = {i - k: (d if k % 2 == 0 or SHIFT_SIGN == 1 else -d) for i, d in m.diffs.items()}
    return Complex(m.cat, terms, diffs, check=False)


def shift_map(f, k, src=None, tgt=None):
    """``f[k]`` with the sign ``(-1)^{k * degree}``."""
    if k == 0:
        return f
    src = src if src is not None else shift(f.src, k)
    tgt = tgt if tgt is not None else shift(f.tgt, k)
    neg = (k * f.degree) % 2 == 1
    return GradedMap(src, tgt, f.degree, {i - k: (-c if neg else c) for i, c in f.comps.items()}, check=False)


def twist(b, a, g=None):
    """Extension of ``a`` by ``b`` glued along the degree-1 cycle ``g: a -> b``."""
    if g is not None and (g.degree != 1 or g.src != a or g.tgt != b):
        raise ComplexError("twist needs a degree-1 map a -> b")
    cat = b.cat
    degrees = set(b.terms) | set(a.terms)
    terms = {i: direct_sum_objects([b.term(i), a.term(i)], cat) for i in degrees}
    diffs = {}
    for i in degrees | {i - 1 for i in degrees}:
        if i not in terms and i + 1 not in terms:
            continue
        gi = g.comps.get(i) if g is not None else None
        blocks = [[b.diffs.get(i), gi], [None, a.diffs.get(i)]]
        if all(x is None for row in blocks for x in row):
            continue
        diffs[i] = block_morphism(blocks, [b.term(i), a.term(i)], [b.term(i + 1), a.term(i + 1)])
    out = Complex(cat, terms, diffs, check=False)
    if g is not None and not hom_differential(g).is_zero():
        raise ComplexError("gluing map is not a cycle (D g != 0)")
    return out


def direct_sum(*ms):
    if not ms:
        raise ComplexError("direct_sum needs at least one complex")
    out = ms[0]
    for m in ms[1:]:
        out = twist(out, m)
    return out


def block_graded(blocks, srcs, tgts, degree, src=None, tgt=None):
    """Graded map between block complexes from ``blocks[r][c]: srcs[c] -> tgts[r]``.

    ``src``/``tgt`` default to the untwisted direct sums; pass the actual
    twisted complexes when the terms coincide.
    """
    if src is None:
        src = direct_sum(*srcs)
    if tgt is None:
        tgt = direct_sum(*tgts)
    degrees = set()
    for row in blocks:
        for x in row:
            if x is not None:
                if x.degree != degree:
                    raise ComplexError("blocks of mixed degree")
                degrees.update(x.comps)
    comps = {}
    for i in degrees:
        grid = [[(x.comps.get(i) if x is not None else None) for x in row] for row in blocks]
        comps[i] = block_morphism(grid, [s.term(i) for s in srcs], [t.term(i + degree) for t in tgts])
    for i, c in comps.items():
        if c.src != src.term(i) or c.tgt != tgt.term(i + degree):
            raise ComplexError("block map does not match the given source/target terms")
    return GradedMap(src, tgt, degree, comps, check=False)


def restrict_graded(f, src, tgt, rows, cols):
    """Sub-block of ``f`` with ``rows[i]``/``cols[i]`` the summand indices per degree."""
    comps = {}
    for i, c in f.comps.items():
        r = rows.get(i + f.degree, [])
        cl = cols.get(i, [])
        if r and cl:
            comps[i] = c.restrict(r, cl)
    return GradedMap(src, tgt, f.degree, comps, check=False)


class TrianglePresentation:
    """Standard triangle ``M -f-> N -inc-> Cone(f) -proj-> M[1]``."""

    def __init__(self, f):
        self.f = f
        self.M = f.src
        self.N = f.tgt
        m1 = shift(self.M, 1)
        gamma = GradedMap(m1, self.N, 1, {i - 1: c for i, c in f.comps.items()}, check=False)
        self.cone = twist(self.N, m1, gamma)
        self.gamma = gamma
        self.M1 = m1
        self.inc = block_graded([[GradedMap.identity(self.N)], [None]], [self.N], [self.N, m1], 0, tgt=self.cone)
        self.proj = block_graded([[None, GradedMap.identity(m1)]], [self.N, m1], [m1], 0, src=self.cone)

    def __repr__(self):
        return f"Triangle({self.M!r} -> {self.N!r} -> {self.cone!r})"


def cone(f):
    if f.degree != 0:
        raise ComplexError("cone of a non-chain map")
    return TrianglePresentation(f)


class HomSpace:
    """Coordinates on the graded Hom of degree ``k`` from ``a`` to ``b``."""

    def __init__(self, a, b, k):
        self.a, self.b, self.k = a, b, k
        self.field = a.cat.field
        self.coords = []
        self.index = {}
        self.blocks = {}
        for i in sorted(a.terms):
            tb = b.terms.get(i + k)
            if tb is None:
                continue
            start = len(self.coords)
            for p, r, c in hom_coordinates(a.terms[i], tb):
                self.index[(i, p, r, c)] = len(self.coords)
                self.coords.append((i, p, r, c))
            self.blocks[i] = (start, len(self.coords))

    @property
    def dim(self):
        return len(self.coords)

    def vector(self, f):
        if f.degree != self.k:
            raise ComplexError("degree mismatch")
        v = [self.field.zero] * len(self.coords)
        for i, c in f.comps.items():
            for p, m in c.comps.items():
                for r, row in enumerate(m.rows):
                    for col, x in enumerate(row):
                        if x:
                            v[self.index[(i, p, r, col)]] = x
        return v

    def graded_map(self, vec):
        f = self.field
        grids = {}
        for idx, x in enumerate(vec):
            if not x:
                continue
            i, p, r, c = self.coords[idx]
            src, tgt = self.a.terms[i], self.b.terms[i + self.k]
            g = grids.setdefault(i, {}).setdefault(p, [[f.zero] * len(src) for _ in range(len(tgt))])
            g[r][c] = x
        comps = {}
        for i, per in grids.items():
            src, tgt = self.a.terms[i], self.b.terms[i + self.k]
            comps[i] = BaseMorphism(src, tgt, {p: Matrix(f, g, len(tgt), len(src)) for p, g in per.items()}, check=False)
        return GradedMap(self.a, self.b, self.k, comps, check=False)


def differential_matrix(h0, h1):
    """Matrix of ``D: Hom^k -> Hom^{k+1}`` in the coordinates of ``h0``, ``h1``."""
    a, b, k = h0.a, h0.b, h0.k
    f = h0.field
    sign = -1 if k % 2 == 0 else 1
    cols = []
    for (i, p, r, c) in h0.coords:
        img = {}
        # d_B o E: component i, B^{i+k} -> B^{i+k+1}
        db = b.diffs.get(i + k)
        if db is not None:
            for q, m in db.comps.items():
                if q.end != p.start:
                    continue
                qp = concat(q, p)
                for rr in range(m.nrows):
                    x = m.rows[rr][r]
                    if x:
                        key = h1.index[(i, qp, rr, c)]
                        img[key] = img.get(key, 0) + x
        # -(-1)^k E o d_A: component i-1, A^{i-1} -> A^i -> B^{i+k}
        da = a.diffs.get(i - 1)
        if da is not None:
            for q, m in da.comps.items():
                if p.end != q.start:
                    continue
                pq = concat(p, q)
                row = m.rows[c]
                for cc, x in enumerate(row):
                    if x:
                        key = h1.index[(i - 1, pq, r, cc)]
                        img[key] = img.get(key, 0) + sign * x
        col = [f.zero] * h1.dim
        for key, x in img.items():
            col[key] = f.reduce(x)
        cols.append(col)
    return Matrix.from_columns(f, cols, h1.dim)


def cycles_and_boundaries(a, b, k=0):
    """Return ``(H_k, Z, Bd)``: coordinates, cycle basis columns, boundary matrix."""
    hk = HomSpace(a, b, k)
    hk1 = HomSpace(a, b, k + 1)
    hkm = HomSpace(a, b, k - 1)
    dk = differential_matrix(hk, hk1)
    dkm = differential_matrix(hkm, hk)
    return hk, kernel_basis(dk) if hk1.dim else Matrix.identity(hk.field, hk.dim), dkm


def solve_homotopy(target):
    """Find ``h`` (degree ``p - 1``) with ``D h == target``, or None."""
    a, b, p = target.src, target.tgt, target.degree
    hp = HomSpace(a, b, p)
    hm = HomSpace(a, b, p - 1)
    dm = differential_matrix(hm, hp)
    rhs = Matrix.from_columns(hp.field, [hp.vector(target)], hp.dim)
    if hm.dim == 0:
        return GradedMap.zero(a, b, p - 1) if target.is_zero() else None
    x = solve(dm, rhs)
    if x is None:
        return None
    return hm.graded_map(x.column(0))


def is_nullhomotopic(f):
    return solve_homotopy(f) is not None


def hom_dimension_graded(a, b, k=0):
    """``dim H^k Hom(a, b)`` computed on the given complexes."""
    hk = HomSpace(a, b, k)
    if hk.dim == 0:
        return 0
    hk1 = HomSpace(a, b, k + 1)
    hkm = HomSpace(a, b, k - 1)
    z = hk.dim - (rank(differential_matrix(hk, hk1)) if hk1.dim else 0)
    bd = rank(differential_matrix(hkm, hk)) if hkm.dim else 0
    return z - bd
