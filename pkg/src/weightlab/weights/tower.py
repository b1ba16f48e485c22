"""Retract towers: a retract ``N`` of ``M`` as an iterated extension.

With ``M = N + P`` the split triangles ``M[2j] -> N[2j] -> P[2j+1]`` and
``M[2j+1] -> P[2j+1] -> N[2j+2]`` put ``N`` in the extension-closure of
``N[2n]`` and ``M[i]`` for ``0 <= i < 2n``.  Decompositions are pushed down
the tower starting from ``N[2n]``, which is chosen far enough out to be
entirely of high weight.
"""

from ..base import compose, split_idempotent
from ..complexes import Complex, GradedMap, block_graded, compose_graded, cone, shift, shift_map
from ..homotopy import invert_morphism, is_contractible, is_nullhomotopic, minimal_model
from .certificates import RetractTower, Shift, Zero
from .decomposition import Triangle, WeightDecomposition, combine_twisted, shift_decomposition, transport, trivial_low


class SplittingError(ValueError):
    pass


class Splitting:
    """Exact splitting ``M = N + P``: ``r s = 1``, ``rP sP = 1``, ``s r + sP rP = 1``.

    ``N`` is the retract actually used (the given one when ``r s = 1`` holds
    on the nose, otherwise its minimal model); ``to_given``/``from_given``
    compare it with the retract that was passed in.
    """

    def __init__(self, M, N, s, r, P, sP, rP, given, to_given, from_given):
        self.M, self.N, self.s, self.r = M, N, s, r
        self.P, self.sP, self.rP = P, sP, rP
        self.given, self.to_given, self.from_given = given, to_given, from_given

    def check(self):
        ident = GradedMap.identity
        return (compose_graded(self.r, self.s) == ident(self.N)
                and compose_graded(self.rP, self.sP) == ident(self.P)
                and compose_graded(self.s, self.r) + compose_graded(self.sP, self.rP) == ident(self.M))


def strict_splitting(N, M, r, s):
    """Turn ``r o s ~ 1_N`` into an exact splitting of ``M``."""
    if r.src != M or r.tgt != N or s.src != N or s.tgt != M:
        raise SplittingError("(r, s) do not go between M and N")
    ident_n = GradedMap.identity(N)
    rs = compose_graded(r, s)
    if rs == ident_n:
        N2, s2, r2 = N, s, r
        to_given = from_given = ident_n
    else:
        if not is_nullhomotopic(rs - ident_n):
            raise SplittingError("(r, s) is not a splitting: r o s is not homotopic to 1")
        mm = minimal_model(N)
        N2 = mm.model
        s1 = compose_graded(s, mm.from_model)
        r1 = compose_graded(mm.to_model, r)
        u = compose_graded(r1, s1)
        try:
            uinv = GradedMap(N2, N2, 0, {i: invert_morphism(u.comp(i)) for i in N2.terms}, check=False)
        except ZeroDivisionError as exc:
            raise SplittingError("r o s is not invertible on the minimal model") from exc
        s2, r2 = s1, compose_graded(uinv, r1)
        to_given, from_given = mm.from_model, mm.to_model
    e = GradedMap.identity(M) - compose_graded(s2, r2)
    terms, secs, rets = {}, {}, {}
    for i in M.terms:
        sp = split_idempotent(e.comp(i))
        if sp.image.is_zero():
            continue
        terms[i], secs[i], rets[i] = sp.image, sp.section, sp.retraction
    diffs = {i: compose(rets[i + 1], compose(M.diffs[i], secs[i]))
             for i in terms if i + 1 in terms and i in M.diffs}
    P = Complex(M.cat, terms, diffs, check=False)
    sP = GradedMap(P, M, 0, secs, check=False)
    rP = GradedMap(M, P, 0, rets, check=False)
    return Splitting(M, N2, s2, r2, P, sP, rP, N, to_given, from_given)


def _shift_chain(f, k):
    return shift_map(f, k, shift(f.src, k), shift(f.tgt, k))


def _as_degree_minus_one(f, src, tgt, offset):
    """Components of the chain map ``f`` reindexed as a degree -1 map ``src -> tgt``.

    ``src^i = f.src^{i+offset}`` and ``tgt^{i-1} = f.tgt^{i+offset}``.
    """
    return GradedMap(src, tgt, -1, {i - offset: c for i, c in f.comps.items()}, check=False)


def retract_tower(N, M, r, s, n):
    """The ``2n`` split triangles exhibiting ``N`` in the extension-closure of ``N[2n]`` and ``M[i]``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    sp = strict_splitting(N, M, r, s)
    out = []
    for j in range(n):
        a, b, c = shift(sp.M, 2 * j), shift(sp.N, 2 * j), shift(sp.P, 2 * j + 1)
        f = shift_map(sp.r, 2 * j, a, b)
        H = _as_degree_minus_one(sp.rP, a, c, 2 * j)
        out.append(Triangle(a, b, c, f, GradedMap.zero(b, c), H, section=shift_map(sp.s, 2 * j, b, a)))
        a, b, c = shift(sp.M, 2 * j + 1), shift(sp.P, 2 * j + 1), shift(sp.N, 2 * j + 2)
        f = shift_map(sp.rP, 2 * j + 1, a, b)
        H = _as_degree_minus_one(sp.r, a, c, 2 * j + 1)
        out.append(Triangle(a, b, c, f, GradedMap.zero(b, c), H, section=shift_map(sp.sP, 2 * j + 1, b, a)))
    return out, sp


def cone_equivalence(sR, rR, sQ, rQ):
    """For ``M = R + Q`` (exact), ``R ~ Cone(sQ: Q -> M)``.

    Returns ``(tp, alpha, beta, K)`` with ``alpha: R -> Cone``, ``beta: Cone -> R``,
    ``beta alpha = 1`` and ``alpha beta - 1 = D(K)``.
    """
    tp = cone(sQ)
    M, Q1, R = tp.N, tp.M1, sR.src
    alpha = block_graded([[sR], [None]], [R], [M, Q1], 0, tgt=tp.cone)
    beta = block_graded([[rR, None]], [M, Q1], [R], 0, src=tp.cone)
    kq = GradedMap(M, Q1, -1, {i: c for i, c in (-rQ).comps.items()}, check=False)
    K = block_graded([[None, None], [kq, None]], [M, Q1], [M, Q1], -1, src=tp.cone, tgt=tp.cone)
    return tp, alpha, beta, K


def default_tower_height(m, low_weight):
    """Smallest ``n >= 0`` with ``low_weight + 2n >= m + 1``."""
    need = m + 1 - low_weight
    return max(0, (need + 1) // 2)


def decompose_retract(node, m, decompose_child, gens, n=None):
    """Decomposition of the retract described by a ``RetractTower`` node."""
    M = node.child.realize(gens)
    sp = strict_splitting(node.r.tgt, M, node.r, node.s)
    rng = node.child.weight_range()
    if rng is None:
        if not is_contractible(sp.N):
            raise SplittingError("retract of a zero object is not contractible")
        return _contractible_decomposition(node.r.tgt, m)
    if n is None:
        n = node.n if node.n is not None else default_tower_height(m, rng[0])
    if rng[0] + 2 * n < m + 1:
        raise ValueError(f"tower height {n} too small: N[{2 * n}] is not of weight >= {m + 1}")
    strict_node = RetractTower(node.child, sp.s, sp.r, n)
    top = shift(sp.N, 2 * n)
    d_cur = trivial_low(top, m, evidence=Shift(strict_node, 2 * n))
    for j in range(n - 1, -1, -1):
        k = 2 * j + 1
        s_k, r_k = _shift_chain(sp.s, k), _shift_chain(sp.r, k)
        sP_k, rP_k = _shift_chain(sp.sP, k), _shift_chain(sp.rP, k)
        dM = shift_decomposition(decompose_child(m - k), k)
        tp, alpha, beta, K = cone_equivalence(sP_k, rP_k, s_k, r_k)
        d_cone = combine_twisted(tp.N, tp.M1, tp.gamma, dM, d_cur)
        d_p = transport(d_cone, beta, alpha, K)
        k = 2 * j
        s_k, r_k = _shift_chain(sp.s, k), _shift_chain(sp.r, k)
        sP_k, rP_k = _shift_chain(sp.sP, k), _shift_chain(sp.rP, k)
        dM = shift_decomposition(decompose_child(m - k), k)
        tp, alpha, beta, K = cone_equivalence(s_k, r_k, sP_k, rP_k)
        d_cone = combine_twisted(tp.N, tp.M1, tp.gamma, dM, d_p)
        d_cur = transport(d_cone, beta, alpha, K)
    if sp.N is not sp.given:
        d_cur = transport(d_cur, sp.to_given, sp.from_given, GradedMap.zero(sp.N, sp.N, -1))
    return d_cur


def _contractible_decomposition(N, m):
    z = Complex.zero(N.cat)
    return WeightDecomposition(m, N, z, GradedMap.zero(z, N), z, GradedMap.zero(N, z), GradedMap.zero(z, z, -1),
                               Zero(), Zero())


__all__ = [
    "SplittingError", "Splitting", "strict_splitting", "retract_tower", "cone_equivalence",
    "default_tower_height", "decompose_retract",
]
