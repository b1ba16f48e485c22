"""Additive base categories with exact Hom spaces.

Two backends share one implementation:

* ``vect``: finite-dimensional vector spaces.  Modelled as the path algebra
  of the one-vertex quiver, so the single indecomposable is the line ``k``.
* ``quiver``: finitely generated projectives over the path algebra of a
  finite acyclic quiver (no relations).

Hom convention (fixed here and nowhere else): ``Hom(P_a, P_b)`` has basis
the directed paths from ``b`` to ``a``.  For ``f: P_a -> P_b`` given by a path
``p: b ~> a`` and ``g: P_b -> P_c`` given by ``q: c ~> b``, the composite
``g o f`` is the concatenation ``q.p: c ~> a``.

A morphism ``A -> B`` between direct sums of indecomposables is stored as a
dict ``path -> Matrix`` of shape ``len(B) x len(A)``; the matrix for path
``p`` may only be nonzero in rows labelled ``p.start`` and columns labelled
``p.end``.
"""

from collections import Counter
from typing import NamedTuple

from .linalg import QQ, Matrix, PrimeField, inverse, rank_factorization
from .linalg.matrix import block


class BaseError(ValueError):
    pass


class Path(NamedTuple):
    start: str
    end: str
    arrows: tuple

    @property
    def length(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e{self.start}"
        return f"{self.start}~>{self.end}{list(self.arrows)}"


class Quiver:
    """Finite acyclic quiver; ``arrows`` is a sequence of ``(source, target)``."""

    def __init__(self, vertices, arrows):
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise BaseError("vertex labels must be distinct")
        arrows = tuple((str(s), str(t)) for s, t in arrows)
        for s, t in arrows:
            if s not in vertices or t not in vertices:
                raise BaseError(f"arrow {s}->{t} uses an unknown vertex")
        self.vertices = vertices
        self.arrows = arrows
        cycle = self._find_cycle()
        if cycle:
            raise BaseError("quiver has a directed cycle through " + " -> ".join(cycle))
        self.paths = self._enumerate_paths()
        self._by_ends = {}
        for p in self.paths:
            self._by_ends.setdefault((p.start, p.end), []).append(p)
        self.max_path_length = max((p.length for p in self.paths), default=0)

    def _find_cycle(self):
        out = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            out[s].append(t)
        color = dict.fromkeys(self.vertices, 0)
        stack = []

        def visit(v):
            color[v] = 1
            stack.append(v)
            for w in out[v]:
                if color[w] == 1:
                    return stack[stack.index(w):] + [w]
                if color[w] == 0:
                    c = visit(w)
                    if c:
                        return c
            stack.pop()
            color[v] = 2
            return None

        for v in self.vertices:
            if color[v] == 0:
                c = visit(v)
                if c:
                    return c
        return None

    def _enumerate_paths(self):
        paths = [Path(v, v, ()) for v in self.vertices]
        frontier = list(paths)
        while frontier:
            nxt = []
            for p in frontier:
                for k, (s, t) in enumerate(self.arrows):
                    if s == p.end:
                        nxt.append(Path(p.start, t, p.arrows + (k,)))
            paths.extend(nxt)
            frontier = nxt
        return tuple(paths)

    def paths_between(self, start, end):
        return self._by_ends.get((start, end), [])

    def to_json(self):
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "vertices" not in data or "arrows" not in data:
            raise BaseError("quiver JSON needs 'vertices' and 'arrows'")
        return cls(data["vertices"], data["arrows"])

    @classmethod
    def linear_a(cls, n):
        """``1 -> 2 -> ... -> n``."""
        return cls([str(i) for i in range(1, n + 1)], [(str(i), str(i + 1)) for i in range(1, n)])

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {[list(a) for a in self.arrows]})"


def concat(q, p):
    """Path ``q`` followed by ``p``; requires ``q.end == p.start``."""
    return Path(q.start, p.end, q.arrows + p.arrows)


class BaseCategory:
    """Projectives over a path algebra (``vect`` is the one-vertex case)."""

    def __init__(self, quiver, field, backend):
        self.quiver = quiver
        self.field = field
        self.backend = backend
        self.vertex_index = {v: i for i, v in enumerate(quiver.vertices)}

    @classmethod
    def vect(cls, field=QQ):
        return cls(Quiver(["k"], []), field, "vect")

    @classmethod
    def from_quiver(cls, quiver, field=None):
        return cls(quiver, field if field is not None else PrimeField(), "quiver")

    @property
    def indecomposables(self):
        return self.quiver.vertices

    def obj(self, summands=None, mult=None):
        """Object from an ordered summand list or from a vertex multiplicity map."""
        if summands is None:
            return self.from_mult(mult or {})
        return BaseObject(self, tuple(str(s) for s in summands))

    def from_mult(self, mult):
        summands = []
        for v in self.quiver.vertices:
            n = int(mult.get(v, 0))
            if n < 0:
                raise BaseError("multiplicities must be non-negative")
            summands.extend([v] * n)
        extra = set(mult) - set(self.quiver.vertices)
        if extra:
            raise BaseError(f"unknown indecomposables {sorted(extra)}")
        return BaseObject(self, tuple(summands))

    def zero_object(self):
        return BaseObject(self, ())

    def hom_basis(self, a, b):
        """Basis of ``Hom(P_a, P_b)``: the paths from ``b`` to ``a``."""
        if a not in self.vertex_index or b not in self.vertex_index:
            raise BaseError(f"unknown indecomposable in hom_basis({a!r}, {b!r})")
        return list(self.quiver.paths_between(b, a))

    def __eq__(self, other):
        return (isinstance(other, BaseCategory) and self.backend == other.backend
                and self.quiver == other.quiver and self.field == other.field)

    def __hash__(self):
        return hash((self.backend, self.quiver, self.field))

    def __repr__(self):
        return f"BaseCategory({self.backend}, {self.quiver!r}, {self.field!r})"


def hom_basis(cat, a, b):
    return cat.hom_basis(a, b)


class BaseObject:
    """Direct sum of indecomposables, in a fixed order."""

    __slots__ = ("cat", "summands", "_hash")

    def __init__(self, cat, summands):
        for s in summands:
            if s not in cat.vertex_index:
                raise BaseError(f"unknown indecomposable {s!r}")
        self.cat = cat
        self.summands = tuple(summands)
        self._hash = None

    def __len__(self):
        return len(self.summands)

    @property
    def mult(self):
        c = Counter(self.summands)
        return {v: c[v] for v in self.cat.quiver.vertices if c[v]}

    def mult_vector(self):
        c = Counter(self.summands)
        return tuple(c[v] for v in self.cat.quiver.vertices)

    def is_zero(self):
        return not self.summands

    def __add__(self, other):
        _same_cat(self, other)
        return BaseObject(self.cat, self.summands + other.summands)

    def __eq__(self, other):
        return isinstance(other, BaseObject) and self.summands == other.summands and self.cat == other.cat

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.summands)
        return self._hash

    def __repr__(self):
        if not self.summands:
            return "0"
        if self.cat.backend == "vect":
            return f"k^{len(self)}"
        return "+".join(f"P{s}" for s in self.summands)

    def to_json(self):
        return {"backend": self.cat.backend, "mult": {k: v for k, v in self.mult.items()}}


def _same_cat(a, b):
    if a.cat is not b.cat and a.cat != b.cat:
        raise BaseError("objects live in different base categories")


class BaseMorphism:
    """Morphism between base objects, stored per path (see module docstring)."""

    __slots__ = ("src", "tgt", "comps")

    def __init__(self, src, tgt, comps=None, check=True):
        _same_cat(src, tgt)
        self.src = src
        self.tgt = tgt
        comps = comps or {}
        self.comps = {p: m for p, m in comps.items() if not m.is_zero()}
        if check:
            self._validate()

    def _validate(self):
        for p, m in self.comps.items():
            if m.shape != (len(self.tgt), len(self.src)):
                raise BaseError(f"component for {p} has shape {m.shape}, expected {(len(self.tgt), len(self.src))}")
            for i, row in enumerate(m.rows):
                for j, x in enumerate(row):
                    if x and (self.tgt.summands[i] != p.start or self.src.summands[j] != p.end):
                        raise BaseError(f"entry ({i},{j}) of {p} does not lie in the Hom-space span")

    @property
    def cat(self):
        return self.src.cat

    @property
    def field(self):
        return self.src.cat.field

    @classmethod
    def zero(cls, src, tgt):
        return cls(src, tgt, {}, check=False)

    @classmethod
    def identity(cls, obj):
        f = obj.cat.field
        n = len(obj)
        comps = {}
        for v in set(obj.summands):
            rows = [[f.one if (i == j and obj.summands[i] == v) else f.zero for j in range(n)] for i in range(n)]
            comps[Path(v, v, ())] = Matrix(f, rows, n, n)
        return cls(obj, obj, comps, check=False)

    @classmethod
    def from_entries(cls, src, tgt, entries):
        """Build from ``{(row, col): {path: scalar}}``."""
        f = src.cat.field
        grids = {}
        for (i, j), combo in entries.items():
            for p, c in combo.items():
                g = grids.setdefault(p, [[f.zero] * len(src) for _ in range(len(tgt))])
                g[i][j] = f.reduce(g[i][j] + f(c))
        return cls(src, tgt, {p: Matrix(f, g, len(tgt), len(src)) for p, g in grids.items()})

    def entry(self, i, j):
        return {p: m.rows[i][j] for p, m in self.comps.items() if m.rows[i][j]}

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, BaseMorphism):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt and self.comps == other.comps

    def __hash__(self):
        return hash((self.src, self.tgt, frozenset(self.comps.items())))

    def __repr__(self):
        return f"BaseMorphism({self.src!r} -> {self.tgt!r}, {len(self.comps)} path components)"

    def _check_parallel(self, other):
        if self.src != other.src or self.tgt != other.tgt:
            raise BaseError("morphisms are not parallel")

    def __add__(self, other):
        self._check_parallel(other)
        comps = dict(self.comps)
        for p, m in other.comps.items():
            comps[p] = comps[p] + m if p in comps else m
        return BaseMorphism(self.src, self.tgt, comps, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return BaseMorphism(self.src, self.tgt, {p: -m for p, m in self.comps.items()}, check=False)

    def scale(self, c):
        if not self.field(c):
            return BaseMorphism.zero(self.src, self.tgt)
        return BaseMorphism(self.src, self.tgt, {p: m.scale(c) for p, m in self.comps.items()}, check=False)

    def __matmul__(self, other):
        return compose(self, other)

    def semisimple_part(self):
        """Components along trivial paths (the part surviving modulo the radical)."""
        return BaseMorphism(self.src, self.tgt, {p: m for p, m in self.comps.items() if not p.arrows}, check=False)

    def radical_part(self):
        return BaseMorphism(self.src, self.tgt, {p: m for p, m in self.comps.items() if p.arrows}, check=False)

    def restrict(self, rows, cols):
        """Sub-block between summand index subsets (new objects keep order)."""
        rows, cols = list(rows), list(cols)
        tgt = BaseObject(self.cat, tuple(self.tgt.summands[i] for i in rows))
        src = BaseObject(self.cat, tuple(self.src.summands[j] for j in cols))
        return BaseMorphism(src, tgt, {p: m.submatrix(rows, cols) for p, m in self.comps.items()}, check=False)

    def to_json(self):
        f = self.field
        entries = []
        for p, m in sorted(self.comps.items(), key=lambda kv: (kv[0].start, kv[0].end, kv[0].arrows)):
            for i, row in enumerate(m.rows):
                for j, x in enumerate(row):
                    if x:
                        entries.append({"row": i, "col": j, "path": {"start": p.start, "end": p.end, "arrows": list(p.arrows)}, "coeff": f.to_str(x)})
        return {"src": list(self.src.summands), "tgt": list(self.tgt.summands), "entries": entries}


def compose(f, g):
    """``f o g`` (apply g first); requires ``target(g) == source(f)``."""
    if g.tgt != f.src:
        raise BaseError(f"cannot compose: target {g.tgt!r} != source {f.src!r}")
    out = {}
    for q, fq in f.comps.items():
        for p, gp in g.comps.items():
            if q.end != p.start:
                continue
            m = fq @ gp
            if m.is_zero():
                continue
            qp = concat(q, p)
            out[qp] = out[qp] + m if qp in out else m
    return BaseMorphism(g.src, f.tgt, out, check=False)


def direct_sum_objects(objs, cat=None):
    summands = ()
    for o in objs:
        summands += o.summands
    if cat is None:
        cat = objs[0].cat
    return BaseObject(cat, summands)


def block_morphism(blocks, srcs, tgts):
    """Assemble ``blocks[r][c]: srcs[c] -> tgts[r]`` (None for zero)."""
    cat = (srcs + tgts)[0].cat
    f = cat.field
    src = direct_sum_objects(srcs, cat)
    tgt = direct_sum_objects(tgts, cat)
    paths = set()
    for row in blocks:
        for b in row:
            if b is not None:
                paths.update(b.comps)
    rs = [len(t) for t in tgts]
    cs = [len(s) for s in srcs]
    comps = {}
    for p in paths:
        grid = [[(b.comps.get(p) if b is not None else None) for b in row] for row in blocks]
        comps[p] = block(f, grid, rs, cs)
    return BaseMorphism(src, tgt, comps, check=False)


def is_idempotent(e):
    return e.src == e.tgt and compose(e, e) == e


def invert_unipotent_part(u):
    """Inverse of an endomorphism whose semisimple part is invertible.

    Writes ``u = u0 (1 + n)`` with ``n`` in the radical and sums the finite
    Neumann series; path lengths are bounded, so ``n`` is nilpotent.
    """
    obj = u.src
    u0 = u.semisimple_part()
    inv0 = BaseMorphism(obj, obj, {p: inverse_on_vertex(m, obj, p.start) for p, m in u0.comps.items()}, check=False)
    if len(set(obj.summands)) != len(inv0.comps) and len(obj):
        # some vertex block of u0 is missing, so u0 is singular there
        raise ZeroDivisionError("endomorphism is not invertible")
    n = compose(inv0, u) - BaseMorphism.identity(obj)
    result = BaseMorphism.identity(obj)
    term = BaseMorphism.identity(obj)
    while True:
        term = -compose(n, term)
        if term.is_zero():
            break
        result = result + term
    return compose(result, inv0)


def inverse_on_vertex(m, obj, v):
    idx = [i for i, s in enumerate(obj.summands) if s == v]
    sub = inverse(m.submatrix(idx, idx))
    f = m.field
    n = len(obj)
    grid = [[f.zero] * n for _ in range(n)]
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            grid[i][j] = sub.rows[a][b]
    return Matrix(f, grid, n, n)


class IdempotentSplit(NamedTuple):
    original: BaseObject
    idempotent: BaseMorphism
    image: BaseObject
    section: BaseMorphism
    retraction: BaseMorphism


class NotIdempotentError(BaseError):
    pass


def split_idempotent(e):
    """Split ``e`` through its image: ``retraction o section == id`` and
    ``section o retraction == e``.

    The trivial-path part ``e0`` of an idempotent is itself idempotent and
    block diagonal by vertex; a rank factorization per vertex gives the image
    multiplicities and maps ``S``, ``R`` with ``R S = 1``.  Then ``s = e S`` and
    ``r = (R e S)^{-1} R e``.
    """
    if not is_idempotent(e):
        raise NotIdempotentError("morphism is not an idempotent endomorphism")
    obj = e.src
    cat = obj.cat
    f = cat.field
    e0 = e.semisimple_part()
    image_summands = []
    s_cols = []  # per image summand: (vertex, column vector over obj indices)
    r_rows = []
    for v in cat.quiver.vertices:
        idx = [i for i, s in enumerate(obj.summands) if s == v]
        if not idx:
            continue
        m = e0.comps.get(Path(v, v, ()))
        if m is None:
            continue
        sub = m.submatrix(idx, idx)
        c, r = rank_factorization(sub)
        for k in range(r.nrows):
            image_summands.append(v)
            s_cols.append((v, {idx[a]: c.rows[a][k] for a in range(len(idx))}))
            r_rows.append((v, {idx[b]: r.rows[k][b] for b in range(len(idx))}))
    image = BaseObject(cat, tuple(image_summands))
    n, k = len(obj), len(image)
    big_s, big_r = {}, {}
    for col, (v, vec) in enumerate(s_cols):
        g = big_s.setdefault(v, [[f.zero] * k for _ in range(n)])
        for i, x in vec.items():
            g[i][col] = x
    for row, (v, vec) in enumerate(r_rows):
        g = big_r.setdefault(v, [[f.zero] * n for _ in range(k)])
        for j, x in vec.items():
            g[row][j] = x
    S = BaseMorphism(image, obj, {Path(v, v, ()): Matrix(f, g, n, k) for v, g in big_s.items()}, check=False)
    R = BaseMorphism(obj, image, {Path(v, v, ()): Matrix(f, g, k, n) for v, g in big_r.items()}, check=False)
    section = compose(e, S)
    u = compose(R, section)
    retraction = compose(invert_unipotent_part(u), compose(R, e))
    return IdempotentSplit(obj, e, image, section, retraction)


def is_retract_base(n, m):
    """Krull-Schmidt retract test: multiplicities of ``n`` bounded by those of ``m``."""
    _same_cat(n, m)
    mn, mm = n.mult, m.mult
    return all(mm.get(v, 0) >= c for v, c in mn.items())


def hom_coordinates(src, tgt):
    """Coordinates ``(path, row, col)`` of ``Hom(src, tgt)`` in a fixed order."""
    cat = src.cat
    coords = []
    for i, b in enumerate(tgt.summands):
        for j, a in enumerate(src.summands):
            for p in cat.quiver.paths_between(b, a):
                coords.append((p, i, j))
    return coords
