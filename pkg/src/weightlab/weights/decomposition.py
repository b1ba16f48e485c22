"""Weight decompositions as explicit, re-verifiable triangles.

A triangle ``A -f-> B -g-> C`` is recorded together with a degree -1 map
``H: A -> C`` satisfying ``g o f = D(H)``.  That data determines the chain map
``psi = [g, H]: Cone(f) -> C``, and the triangle is distinguished exactly when
``psi`` is a homotopy equivalence.  Verification recomputes everything from
the stored maps and never trusts how they were produced.
"""

from ..complexes import (
    Complex, ComplexError, GradedMap, HomSpace, block_graded, compose_graded, cone,
    hom_differential, shift, shift_map, twist,
)
from ..homotopy import is_homotopy_equiv, minimal_model, solve_homotopy
from ..linalg import Matrix, solve
from .certificates import Extend, Shift, Zero


class LiftError(ArithmeticError):
    """A lifting problem had no solution: the inputs violate orthogonality."""


# ---------------------------------------------------------------------------
# linear systems in graded maps


def solve_graded_system(unknowns, equations, op, rhs):
    """Solve ``op(u_1, ..., u_k) = rhs`` for graded maps ``u_j``.

    ``unknowns`` and ``equations`` are ``(src, tgt, degree)`` triples; ``op``
    maps a list of unknown maps to a list of maps, one per equation, and must
    be linear.  Returns the deterministic solution (free coordinates zero) or
    None.
    """
    uspaces = [HomSpace(*u) for u in unknowns]
    espaces = [HomSpace(*e) for e in equations]
    field = (uspaces + espaces)[0].field
    nrows = sum(e.dim for e in espaces)
    zeros = [GradedMap.zero(u.a, u.b, u.k) for u in uspaces]
    cols = []
    for j, us in enumerate(uspaces):
        for c in range(us.dim):
            vec = [field.zero] * us.dim
            vec[c] = field.one
            args = list(zeros)
            args[j] = us.graded_map(vec)
            cols.append(_stack(espaces, op(args), field))
    b = Matrix.from_columns(field, [_stack(espaces, rhs, field)], nrows)
    if not cols:
        return zeros if b.is_zero() else None
    a = Matrix.from_columns(field, cols, nrows)
    x = solve(a, b)
    if x is None:
        return None
    sol = x.column(0)
    out, pos = [], 0
    for us in uspaces:
        out.append(us.graded_map(sol[pos:pos + us.dim]))
        pos += us.dim
    return out


def _stack(espaces, maps, field):
    v = []
    for es, g in zip(espaces, maps):
        v.extend(es.vector(g))
    return v


def _retarget(g, src, tgt):
    """Same components, re-bound to equal complexes ``src``/``tgt``."""
    return GradedMap(src, tgt, g.degree, g.comps, check=False)


# ---------------------------------------------------------------------------
# triangles


class Triangle:
    """``A -f-> B -g-> C`` with ``H: A -> C`` (degree -1), ``g o f = D(H)``.

    ``section`` (optional) is a right inverse of ``f``; when present it
    certifies that the triangle is split.
    """

    def __init__(self, A, B, C, f, g, H, section=None):
        self.A, self.B, self.C = A, B, C
        self.f, self.g, self.H = f, g, H
        self.section = section

    def comparison_map(self):
        """``psi = [g, H~]: Cone(f) -> C`` with ``H~^i = H^{i+1}``."""
        tp = cone(self.f)
        h_tilde = GradedMap(tp.M1, self.C, 0, {i - 1: c for i, c in self.H.comps.items()}, check=False)
        return block_graded([[self.g, h_tilde]], [self.B, tp.M1], [self.C], 0, src=tp.cone, tgt=self.C)

    def verify(self):
        """List of failures; empty iff the triangle is distinguished with the given data."""
        fails = []
        f, g, H = self.f, self.g, self.H
        if f.src != self.A or f.tgt != self.B or g.src != self.B or g.tgt != self.C:
            return ["maps do not match the triangle objects"]
        if H.degree != -1 or H.src != self.A or H.tgt != self.C:
            return ["homotopy has the wrong degree or endpoints"]
        if f.degree or not hom_differential(f).is_zero():
            fails.append("first map is not a chain map")
        if g.degree or not hom_differential(g).is_zero():
            fails.append("second map is not a chain map")
        if not (compose_graded(g, f) - hom_differential(H)).is_zero():
            fails.append("g o f != D(H)")
        if fails:
            return fails
        psi = self.comparison_map()
        if not hom_differential(psi).is_zero():
            return ["comparison map Cone(f) -> C is not a chain map"]
        if not is_homotopy_equiv(psi):
            fails.append("Cone(f) -> C is not a homotopy equivalence")
        if self.section is not None:
            if compose_graded(f, self.section) != GradedMap.identity(self.B):
                fails.append("claimed section of f is not a right inverse")
        return fails

    def is_distinguished(self):
        return not self.verify()

    def __repr__(self):
        return f"Triangle({self.A!r} -> {self.B!r} -> {self.C!r})"


# ---------------------------------------------------------------------------
# weight decompositions


class WeightDecomposition:
    """``X -x-> M -y-> Y`` with ``X`` in ``w<=m`` and ``Y`` in ``w>=m+1``.

    ``x_evidence``/``y_evidence`` are optional certificate trees realizing
    ``X``/``Y`` from generators, used by generated weight structures.
    """

    def __init__(self, m, M, X, x, Y, y, H, x_evidence=None, y_evidence=None):
        self.m = int(m)
        self.M, self.X, self.Y = M, X, Y
        self.x, self.y, self.H = x, y, H
        self.x_evidence = x_evidence
        self.y_evidence = y_evidence

    @property
    def triangle(self):
        return Triangle(self.X, self.M, self.Y, self.x, self.y, self.H)

    def verify(self, spec):
        """Independent re-verification: distinguished triangle plus both memberships."""
        fails = self.triangle.verify()
        if not spec.in_le(self.X, self.m, evidence=self.x_evidence):
            fails.append(f"X is not in w<={self.m}")
        if not spec.in_ge(self.Y, self.m + 1, evidence=self.y_evidence):
            fails.append(f"Y is not in w>={self.m + 1}")
        return fails

    def summary(self):
        return {"m": self.m, "X": _profile(self.X), "Y": _profile(self.Y), "M": _profile(self.M)}

    def __repr__(self):
        return f"WeightDecomposition(m={self.m}, X={self.X!r}, Y={self.Y!r})"


def _profile(c):
    return {str(i): len(o) if c.cat.backend == "vect" else o.mult for i, o in sorted(c.terms.items())}


def _zero_like(m):
    return Complex.zero(m.cat)


def trivial_high(M, m, evidence=None):
    """``M`` already in ``w<=m``: ``X = M``, ``Y = 0``."""
    z = _zero_like(M)
    return WeightDecomposition(m, M, M, GradedMap.identity(M), z, GradedMap.zero(M, z), GradedMap.zero(M, z, -1),
                               x_evidence=evidence, y_evidence=Zero())


def trivial_low(M, m, evidence=None):
    """``M`` already in ``w>=m+1``: ``X = 0``, ``Y = M``."""
    z = _zero_like(M)
    return WeightDecomposition(m, M, z, GradedMap.zero(z, M), M, GradedMap.identity(M), GradedMap.zero(z, M, -1),
                               x_evidence=Zero(), y_evidence=evidence)


def brutal_truncations(M, cut):
    """``(sigma_{>=cut} M, sigma_{<cut} M)``, inclusion and projection."""
    hi = Complex(M.cat, {i: o for i, o in M.terms.items() if i >= cut},
                 {i: d for i, d in M.diffs.items() if i >= cut}, check=False)
    lo = Complex(M.cat, {i: o for i, o in M.terms.items() if i < cut},
                 {i: d for i, d in M.diffs.items() if i + 1 < cut}, check=False)
    inc = GradedMap(hi, M, 0, {i: GradedMap.identity(M).comp(i) for i in hi.terms}, check=False)
    proj = GradedMap(M, lo, 0, {i: GradedMap.identity(M).comp(i) for i in lo.terms}, check=False)
    return hi, inc, lo, proj


def stupid_decomposition(M, m):
    """Brutal truncation of the minimal model at degree ``-m``, transported to ``M``.

    Weight ``<= m`` means minimal-model support in degrees ``>= -m``.
    """
    mm = minimal_model(M)
    model = mm.model
    X, xi, Y, yp = brutal_truncations(model, -m)
    x = compose_graded(mm.from_model, xi)
    y = compose_graded(yp, mm.to_model)
    H = GradedMap.zero(X, Y, -1)
    return WeightDecomposition(m, M, X, x, Y, y, H)


def shift_decomposition(d, k):
    """Decomposition of ``M[k]`` at ``m + k``."""
    if k == 0:
        return d
    M, X, Y = shift(d.M, k), shift(d.X, k), shift(d.Y, k)
    return WeightDecomposition(
        d.m + k, M, X, shift_map(d.x, k, X, M), Y, shift_map(d.y, k, M, Y), shift_map(d.H, k, X, Y),
        x_evidence=Shift(d.x_evidence, k) if d.x_evidence is not None else None,
        y_evidence=Shift(d.y_evidence, k) if d.y_evidence is not None else None,
    )


def transport(d, to, frm, K):
    """Move ``d`` along ``to: M -> M'`` with ``frm o to - 1 = D(K)`` on ``M``."""
    if to.src != d.M or frm.tgt != d.M:
        raise ComplexError("transport maps do not start at the decomposed object")
    x2 = compose_graded(to, d.x)
    y2 = compose_graded(d.y, frm)
    H2 = d.H + compose_graded(d.y, compose_graded(K, d.x))
    return WeightDecomposition(d.m, to.tgt, d.X, x2, d.Y, y2, H2, d.x_evidence, d.y_evidence)


def combine_twisted(N, M, gamma, dN, dM):
    """Decomposition of ``E = twist(N, M, gamma)`` from decompositions of ``N`` and ``M``.

    Solves ``x_N lam - gamma x_M = D(kappa)`` and ``rho y_M + D(kappa') = y_N gamma``
    (solvable by orthogonality), glues ``X_E = twist(X_N, X_M, lam)`` and
    ``Y_E = twist(Y_N, Y_M, rho)``, and finds the homotopy block ``Q`` with
    ``D(Q) = y_N kappa + kappa' x_M - rho H_M - H_N lam``.
    """
    if dN.m != dM.m:
        raise ValueError("decompositions must share the index m")
    if dN.M != N or dM.M != M:
        raise ValueError("decompositions do not match the extension's pieces")
    E = twist(N, M, gamma)
    xN, xM, yN, yM = dN.x, dM.x, dN.y, dM.y
    XN, XM, YN, YM = dN.X, dM.X, dN.Y, dM.Y
    gamma = _retarget(gamma, M, N)

    sol = solve_graded_system(
        [(XM, XN, 1), (XM, N, 0)],
        [(XM, XN, 2), (XM, N, 1)],
        lambda u: [hom_differential(u[0]), compose_graded(xN, u[0]) - hom_differential(u[1])],
        [GradedMap.zero(XM, XN, 2), compose_graded(gamma, xM)],
    )
    if sol is None:
        raise LiftError("no lift of the gluing map to the low-weight parts")
    lam, kappa = sol
    XE = twist(XN, XM, lam)
    xE = block_graded([[xN, kappa], [None, xM]], [XN, XM], [N, M], 0, src=XE, tgt=E)

    sol = solve_graded_system(
        [(YM, YN, 1), (M, YN, 0)],
        [(YM, YN, 2), (M, YN, 1)],
        lambda u: [hom_differential(u[0]), compose_graded(u[0], yM) + hom_differential(u[1])],
        [GradedMap.zero(YM, YN, 2), compose_graded(yN, gamma)],
    )
    if sol is None:
        raise LiftError("no descent of the gluing map to the high-weight parts")
    rho, kappa2 = sol
    YE = twist(YN, YM, rho)
    yE = block_graded([[yN, kappa2], [None, yM]], [N, M], [YN, YM], 0, src=E, tgt=YE)

    target = (compose_graded(yN, kappa) + compose_graded(kappa2, xM)
              - compose_graded(rho, dM.H) - compose_graded(dN.H, lam))
    Q = solve_homotopy(target)
    if Q is None:
        raise LiftError("homotopy correction has no solution")
    HE = block_graded([[dN.H, Q], [None, dM.H]], [XN, XM], [YN, YM], -1, src=XE, tgt=YE)

    xev = yev = None
    if dN.x_evidence is not None and dM.x_evidence is not None:
        xev = Extend(dN.x_evidence, dM.x_evidence, lam)
    if dN.y_evidence is not None and dM.y_evidence is not None:
        yev = Extend(dN.y_evidence, dM.y_evidence, rho)
    return WeightDecomposition(dN.m, E, XE, xE, YE, yE, HE, xev, yev)


def combine_decompositions(t, dN, dM):
    """Decomposition of ``Cone(g: M[-1] -> N)`` from decompositions of ``N`` and ``M``.

    ``t`` is the triangle presentation ``cone(g)``; ``dM`` decomposes ``M``,
    i.e. the complex ``t.M1`` (equal to ``g.src`` shifted by one).
    """
    return combine_twisted(t.N, t.M1, t.gamma, dN, dM)


__all__ = [
    "LiftError", "solve_graded_system", "Triangle", "WeightDecomposition", "trivial_high",
    "trivial_low", "brutal_truncations", "stupid_decomposition", "shift_decomposition",
    "transport", "combine_twisted", "combine_decompositions",
]
