"""Seeded random complexes, chain maps and splittings for property checks.

All randomness flows from a ``random.Random`` instance, so a seed fixes
every sample.  Complexes are built from known indecomposable pieces
(stalks, two-term radical complexes, contractible pairs) and then
conjugated by random automorphisms, which hides the structure without
changing the isomorphism class.
"""

import random

from .base import BaseMorphism, BaseObject, Path, compose, invert_unipotent_part
from .complexes import Complex, GradedMap, compose_graded, direct_sum, hom_differential
from .homotopy import cycles
from .linalg import Matrix, PrimeField


def make_rng(seed=0):
    return random.Random(seed)


def _scalar(rng, field, nonzero=False):
    if isinstance(field, PrimeField):
        lo = 1 if nonzero else 0
        return rng.randrange(lo, field.p)
    while True:
        x = field(rng.randint(-3, 3))
        if x or not nonzero:
            return x


def random_morphism(rng, src, tgt, radical_only=False, density=0.6):
    """Random element of ``Hom(src, tgt)``."""
    cat = src.cat
    f = cat.field
    grids = {}
    for i, b in enumerate(tgt.summands):
        for j, a in enumerate(src.summands):
            for p in cat.quiver.paths_between(b, a):
                if radical_only and not p.arrows:
                    continue
                if rng.random() > density:
                    continue
                g = grids.setdefault(p, [[f.zero] * len(src) for _ in range(len(tgt))])
                g[i][j] = _scalar(rng, f)
    return BaseMorphism(src, tgt, {p: Matrix(f, g, len(tgt), len(src)) for p, g in grids.items()}, check=False)


def random_automorphism(rng, obj):
    """Invertible endomorphism: random invertible vertex blocks plus a radical part."""
    cat = obj.cat
    f = cat.field
    n = len(obj)
    comps = {}
    for v in set(obj.summands):
        idx = [i for i, s in enumerate(obj.summands) if s == v]
        block = _random_invertible(rng, f, len(idx))
        g = [[f.zero] * n for _ in range(n)]
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                g[i][j] = block[a][b]
        comps[Path(v, v, ())] = Matrix(f, g, n, n)
    u = BaseMorphism(obj, obj, comps, check=False)
    return u + random_morphism(rng, obj, obj, radical_only=True)


def _random_invertible(rng, f, k):
    """Product of random unit lower and upper triangular matrices with a random diagonal."""
    lower = [[f.one if i == j else (_scalar(rng, f) if j < i else f.zero) for j in range(k)] for i in range(k)]
    upper = [[_scalar(rng, f, nonzero=True) if i == j else (_scalar(rng, f) if j > i else f.zero)
              for j in range(k)] for i in range(k)]
    return (Matrix(f, lower, k, k) @ Matrix(f, upper, k, k)).rows


def conjugate(m, autos):
    """``d'^i = u^{i+1} d^i (u^i)^{-1}``: an isomorphic complex."""
    inv = {i: invert_unipotent_part(u) for i, u in autos.items()}
    diffs = {i: compose(autos[i + 1], compose(d, inv[i])) for i, d in m.diffs.items()}
    return Complex(m.cat, m.terms, diffs, check=False), inv


def _permuted(rng, obj):
    s = list(obj.summands)
    rng.shuffle(s)
    return BaseObject(obj.cat, tuple(s))


def _two_term_pieces(cat):
    """Pairs ``(w, v)`` with a nonzero radical map ``P_w -> P_v``."""
    out = []
    for v in cat.quiver.vertices:
        for w in cat.quiver.vertices:
            if any(p.arrows for p in cat.quiver.paths_between(v, w)):
                out.append((w, v))
    return out


def random_minimal_piece(rng, cat, lo, hi):
    """A small indecomposable-ish piece: a stalk or a two-term radical complex."""
    verts = cat.quiver.vertices
    pieces = _two_term_pieces(cat)
    i = rng.randint(lo, hi)
    if pieces and i < hi and rng.random() < 0.5:
        w, v = rng.choice(pieces)
        src, tgt = BaseObject(cat, (w,)), BaseObject(cat, (v,))
        d = random_morphism(rng, src, tgt, radical_only=True, density=1.0)
        if d.is_zero():
            return Complex.stalk(src, i)
        return Complex(cat, {i: src, i + 1: tgt}, {i: d}, check=False)
    return Complex.stalk(BaseObject(cat, (rng.choice(verts),)), i)


def contractible_piece(rng, cat, lo, hi):
    v = rng.choice(cat.quiver.vertices)
    i = rng.randint(lo, max(lo, hi - 1))
    o = BaseObject(cat, (v,))
    c = _scalar(rng, cat.field, nonzero=True)
    return Complex(cat, {i: o, i + 1: o}, {i: BaseMorphism.identity(o).scale(c)}, check=False)


def random_complex(rng, cat, lo=-2, hi=2, pieces=(1, 4), contractible=(0, 2), scramble=True):
    """Random bounded complex supported in ``[lo, hi]``.

    Direct sum of minimal pieces and contractible pairs, then summands are
    shuffled and the differentials conjugated by random automorphisms.
    """
    parts = [random_minimal_piece(rng, cat, lo, hi) for _ in range(rng.randint(*pieces))]
    parts += [contractible_piece(rng, cat, lo, hi) for _ in range(rng.randint(*contractible))]
    if not parts:
        return Complex.zero(cat)
    m = direct_sum(*parts)
    if not scramble:
        return m
    return scramble_complex(rng, m)


def scramble_complex(rng, m):
    """Isomorphic copy with shuffled summands and conjugated differentials."""
    perms = {i: _permuted(rng, o) for i, o in m.terms.items()}
    iso = {i: _reorder(m.terms[i], perms[i]) for i in m.terms}
    autos = {i: compose(random_automorphism(rng, perms[i]), iso[i]) for i in m.terms}
    diffs = {}
    inv = {i: _inverse_iso(a) for i, a in autos.items()}
    for i, d in m.diffs.items():
        diffs[i] = compose(autos[i + 1], compose(d, inv[i]))
    return Complex(m.cat, perms, diffs)


def _reorder(src, tgt):
    f = src.cat.field
    used = [False] * len(src)
    grids = {}
    for i, v in enumerate(tgt.summands):
        for j, w in enumerate(src.summands):
            if not used[j] and w == v:
                used[j] = True
                g = grids.setdefault(v, [[f.zero] * len(src) for _ in range(len(tgt))])
                g[i][j] = f.one
                break
    return BaseMorphism(src, tgt, {Path(v, v, ()): Matrix(f, g, len(tgt), len(src)) for v, g in grids.items()}, check=False)


def _inverse_iso(u):
    """Inverse of ``u: A -> B`` where B is a permutation of A's summands."""
    back = _reorder(u.tgt, u.src)
    return compose(invert_unipotent_part(compose(back, u)), back)


def random_heart_complex(rng, cat, pieces=(1, 3)):
    """Random object of the stupid heart: degree-0 stalks plus contractible noise."""
    verts = cat.quiver.vertices
    parts = [Complex.stalk(BaseObject(cat, (rng.choice(verts),)), 0) for _ in range(rng.randint(*pieces))]
    parts += [contractible_piece(rng, cat, -1, 0) for _ in range(rng.randint(0, 1))]
    parts += [contractible_piece(rng, cat, 0, 1) for _ in range(rng.randint(0, 1))]
    return scramble_complex(rng, direct_sum(*parts))


def random_chain_map(rng, src, tgt, attempts=1):
    """A random chain map: random degree-0 map projected onto the cycles."""
    hk, z = cycles(src, tgt, 0)
    f = src.cat.field
    if z.ncols == 0:
        return GradedMap.zero(src, tgt)
    vec = [f.zero] * hk.dim
    for j in range(z.ncols):
        c = _scalar(rng, f)
        if c:
            col = z.column(j)
            vec = [f.reduce(a + c * b) for a, b in zip(vec, col)]
    g = hk.graded_map(vec)
    assert hom_differential(g).is_zero()
    return g


def random_splitting(rng, cat, lo=-1, hi=1):
    """``(N, M, r, s)``: ``M`` an isomorphic scramble of ``N + P`` with ``r s = 1``."""
    N = random_complex(rng, cat, lo, hi, pieces=(1, 2), contractible=(0, 1), scramble=False)
    P = random_complex(rng, cat, lo, hi, pieces=(0, 2), contractible=(0, 1), scramble=False)
    S = direct_sum(N, P)
    s0 = GradedMap(N, S, 0, {i: _inclusion(S.term(i), o, 0) for i, o in N.terms.items()}, check=False)
    r0 = GradedMap(S, N, 0, {i: _projection(S.term(i), o, 0) for i, o in N.terms.items()}, check=False)
    M, u, uinv = scramble_with_maps(rng, S)
    s = _compose_chain(u, s0)
    r = _compose_chain(r0, uinv)
    return N, M, r, s


def _inclusion(big, small, offset):
    f = big.cat.field
    grids = {}
    for k, v in enumerate(small.summands):
        g = grids.setdefault(v, [[f.zero] * len(small) for _ in range(len(big))])
        g[offset + k][k] = f.one
    return BaseMorphism(small, big, {Path(v, v, ()): Matrix(f, g, len(big), len(small)) for v, g in grids.items()}, check=False)


def _projection(big, small, offset):
    f = big.cat.field
    grids = {}
    for k, v in enumerate(small.summands):
        g = grids.setdefault(v, [[f.zero] * len(big) for _ in range(len(small))])
        g[k][offset + k] = f.one
    return BaseMorphism(big, small, {Path(v, v, ()): Matrix(f, g, len(small), len(big)) for v, g in grids.items()}, check=False)


def scramble_with_maps(rng, m):
    """Scrambled copy ``m'`` with the chain isomorphisms ``u: m -> m'`` and its inverse."""
    perms = {i: _permuted(rng, o) for i, o in m.terms.items()}
    autos = {i: compose(random_automorphism(rng, perms[i]), _reorder(m.terms[i], perms[i])) for i in m.terms}
    inv = {i: _inverse_iso(a) for i, a in autos.items()}
    diffs = {i: compose(autos[i + 1], compose(d, inv[i])) for i, d in m.diffs.items()}
    m2 = Complex(m.cat, perms, diffs)
    u = GradedMap(m, m2, 0, autos, check=False)
    uinv = GradedMap(m2, m, 0, inv, check=False)
    return m2, u, uinv


def _compose_chain(f, g):
    return compose_graded(f, g)


__all__ = [
    "make_rng", "random_morphism", "random_automorphism", "random_complex", "scramble_complex",
    "random_chain_map", "random_splitting", "scramble_with_maps", "contractible_piece",
    "random_minimal_piece", "random_heart_complex", "conjugate",
]
