"""Two-sided eventually periodic dimension profiles and their slope invariants.

Over a field every bounded-dimension complex is isomorphic to one with
zero differentials, so an isomorphism class is just its dimension
sequence.  Sequences that are eventually periodic in both directions are
stored finitely.  The slopes are

    alpha = lim a^j / j,   a^j = sum_{0<=i<=j} (-1)^i dim M^i
    beta  = lim b^j / j,   b^j = sum_{0<=i<=j} (-1)^i dim M^{-i}

and with an even period they have a closed form over one period.
Morphisms are recorded only through their degreewise ranks, which is all
a cone needs up to isomorphism.
"""

import random
from fractions import Fraction
from math import ceil, lcm


class ProfileError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class Tail:
    """Periodic tail: ``vals[k]`` is the value at ``anchor + k`` (right) or ``anchor - k`` (left)."""

    __slots__ = ("anchor", "period", "vals")

    def __init__(self, anchor, vals):
        vals = tuple(int(v) for v in vals)
        if len(vals) < 2 or len(vals) % 2:
            raise ProfileError(f"tail period must be even and >= 2, got {len(vals)}")
        if any(v < 0 for v in vals):
            raise ProfileError("dimensions must be non-negative")
        self.anchor = int(anchor)
        self.period = len(vals)
        self.vals = vals

    def is_zero(self):
        return not any(self.vals)

    def __eq__(self, other):
        return isinstance(other, Tail) and (self.anchor, self.vals) == (other.anchor, other.vals)

    def __hash__(self):
        return hash((self.anchor, self.vals))


class EPSequence:
    """Non-negative integer sequence on Z, eventually periodic in both directions.

    ``right`` governs indices ``>= right.anchor``, ``left`` governs indices
    ``<= left.anchor``; ``core`` holds the finitely many values strictly
    between them (missing keys are 0).  A missing tail means zero from some
    point on.
    """

    def __init__(self, core=None, right=None, left=None):
        core = {int(k): int(v) for k, v in (core or {}).items()}
        if any(v < 0 for v in core.values()):
            raise ProfileError("dimensions must be non-negative")
        self.right = right if right is not None and not right.is_zero() else None
        self.left = left if left is not None and not left.is_zero() else None
        if self.right is not None and self.left is not None and self.left.anchor >= self.right.anchor:
            raise ProfileError("left tail must end before the right tail starts")
        for k, v in core.items():
            if (self.right is not None and k >= self.right.anchor) or (self.left is not None and k <= self.left.anchor):
                if v != self._tail_value(k):
                    raise ProfileError(f"core value at {k} disagrees with the tail")
        self.core = {k: v for k, v in core.items() if v and self._in_core(k)}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def finite(cls, values):
        return cls(values)

    def _in_core(self, i):
        return not ((self.right is not None and i >= self.right.anchor)
                    or (self.left is not None and i <= self.left.anchor))

    def _tail_value(self, i):
        if self.right is not None and i >= self.right.anchor:
            return self.right.vals[(i - self.right.anchor) % self.right.period]
        if self.left is not None and i <= self.left.anchor:
            return self.left.vals[(self.left.anchor - i) % self.left.period]
        return None

    def __call__(self, i):
        t = self._tail_value(i)
        return t if t is not None else self.core.get(i, 0)

    def window(self):
        """Indices ``(lo, hi)`` outside of which only the tails act (a finite cover of the core)."""
        keys = list(self.core)
        if self.right is not None:
            keys.append(self.right.anchor)
        if self.left is not None:
            keys.append(self.left.anchor)
        if not keys:
            return 0, 0
        return min(keys), max(keys)

    @property
    def period(self):
        ps = [t.period for t in (self.right, self.left) if t is not None]
        return lcm(*ps) if ps else 2

    def is_bounded_above(self):
        """Zero in all sufficiently large degrees."""
        return self.right is None

    def is_bounded_below(self):
        return self.left is None

    def is_zero(self):
        return self.right is None and self.left is None and not self.core

    def support_bounds(self):
        """``(lo, hi)`` of the support; ``None`` entries mean unbounded; None when zero."""
        if self.is_zero():
            return None
        lo = None if self.left is not None else min(self.core) if self.core else None
        hi = None if self.right is not None else max(self.core) if self.core else None
        if self.left is None and lo is None:
            lo = self._first_nonzero_of_right()
        if self.right is None and hi is None:
            hi = self._last_nonzero_of_left()
        return lo, hi

    def _first_nonzero_of_right(self):
        a = self.right.anchor
        return a + next(k for k, v in enumerate(self.right.vals) if v)

    def _last_nonzero_of_left(self):
        a = self.left.anchor
        return a - next(k for k, v in enumerate(self.left.vals) if v)

    # -- combinators -------------------------------------------------------

    @classmethod
    def pointwise(cls, fn, *seqs):
        """``i -> fn(s_1(i), ..., s_k(i))`` with the common (lcm) periods."""
        rights = [s.right for s in seqs if s.right is not None]
        lefts = [s.left for s in seqs if s.left is not None]
        lo = min(s.window()[0] for s in seqs) - 1
        hi = max(s.window()[1] for s in seqs) + 1
        right = left = None
        if rights:
            p = lcm(*(t.period for t in rights))
            start = hi
            right = Tail(start, [max(0, fn(*(s(start + k) for s in seqs))) for k in range(p)])
            _check_nonneg(fn, seqs, range(start, start + p))
        if lefts:
            p = lcm(*(t.period for t in lefts))
            end = lo
            left = Tail(end, [max(0, fn(*(s(end - k) for s in seqs))) for k in range(p)])
            _check_nonneg(fn, seqs, range(end - p + 1, end + 1))
        core = {}
        for i in range(lo + 1, hi):
            v = fn(*(s(i) for s in seqs))
            if v < 0:
                raise ProfileError(f"negative dimension {v} at degree {i}")
            core[i] = v
        # values at the window edges when a side has no tail
        if right is None:
            v = fn(*(s(hi) for s in seqs))
            if v < 0:
                raise ProfileError(f"negative dimension at degree {hi}")
            core[hi] = v
        if left is None:
            v = fn(*(s(lo) for s in seqs))
            if v < 0:
                raise ProfileError(f"negative dimension at degree {lo}")
            core[lo] = v
        return cls(core, right, left)

    def shifted(self, k):
        """``M[k]``: ``M[k](i) = M(i + k)``."""
        right = Tail(self.right.anchor - k, self.right.vals) if self.right is not None else None
        left = Tail(self.left.anchor - k, self.left.vals) if self.left is not None else None
        return EPSequence({i - k: v for i, v in self.core.items()}, right, left)

    def restricted(self, lo=None, hi=None):
        """Values on ``[lo, hi]`` (either end open when None), zero elsewhere."""
        wlo, whi = self.window()
        right = left = None
        if self.right is not None and hi is None:
            a = self.right.anchor if lo is None else max(self.right.anchor, lo)
            right = Tail(a, [self(a + k) for k in range(self.right.period)])
        if self.left is not None and lo is None:
            a = self.left.anchor if hi is None else min(self.left.anchor, hi)
            left = Tail(a, [self(a - k) for k in range(self.left.period)])
        clo = lo if lo is not None else (left.anchor + 1 if left is not None else wlo)
        chi = hi if hi is not None else (right.anchor - 1 if right is not None else whi)
        return EPSequence({i: self(i) for i in range(clo, chi + 1)}, right, left)

    def values(self, lo, hi):
        return [self(i) for i in range(lo, hi + 1)]

    def __eq__(self, other):
        if not isinstance(other, EPSequence):
            return NotImplemented
        lo = min(self.window()[0], other.window()[0])
        hi = max(self.window()[1], other.window()[1])
        p = lcm(self.period, other.period)
        return (self.is_bounded_above() == other.is_bounded_above()
                and self.is_bounded_below() == other.is_bounded_below()
                and self.values(lo - p, hi + p) == other.values(lo - p, hi + p))

    def __hash__(self):
        lo, hi = self.window()
        return hash(tuple(self.values(lo - self.period, hi + self.period)))

    def __repr__(self):
        lo, hi = self.window()
        return f"EPSequence({dict(sorted(self.core.items()))}, right={_tail_repr(self.right)}, left={_tail_repr(self.left)})"

    # -- JSON --------------------------------------------------------------

    def to_json(self):
        out = {"core": {str(k): v for k, v in sorted(self.core.items())}}
        if self.right is not None:
            out["right"] = {"start": self.right.anchor, "period": self.right.period, "vals": list(self.right.vals)}
        if self.left is not None:
            out["left"] = {"end": self.left.anchor, "period": self.left.period, "vals": list(self.left.vals)}
        return out

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ProfileError("profile must be a JSON object")
        core = {int(k): int(v) for k, v in data.get("core", {}).items()}
        right = _tail_from_json(data.get("right"), "start")
        left = _tail_from_json(data.get("left"), "end")
        return cls(core, right, left)


def _tail_repr(t):
    return None if t is None else (t.anchor, list(t.vals))


def _tail_from_json(d, key):
    if d is None:
        return None
    vals = d.get("vals")
    if not isinstance(vals, list):
        raise ProfileError("tail needs a 'vals' list")
    period = int(d.get("period", len(vals)))
    if period != len(vals):
        raise ProfileError(f"tail period {period} does not match {len(vals)} values")
    if period % 2:
        raise ProfileError(f"odd tail period {period}: periods must be even")
    return Tail(int(d[key]), vals)


def _check_nonneg(fn, seqs, idx):
    for i in idx:
        v = fn(*(s(i) for s in seqs))
        if v < 0:
            raise ProfileError(f"negative dimension {v} at degree {i}")


# ---------------------------------------------------------------------------
# slope objects


class SlopePair:
    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        self.alpha = Fraction(alpha)
        self.beta = Fraction(beta)

    def __eq__(self, other):
        return isinstance(other, SlopePair) and (self.alpha, self.beta) == (other.alpha, other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __add__(self, other):
        return SlopePair(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other):
        return SlopePair(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self):
        return SlopePair(-self.alpha, -self.beta)

    def __iter__(self):
        return iter((self.alpha, self.beta))

    def to_json(self):
        return {"alpha": str(self.alpha), "beta": str(self.beta)}

    def __repr__(self):
        return f"SlopePair({self.alpha}, {self.beta})"


class SlopeObject:
    """Isomorphism class of a bounded-dimension complex over a field."""

    def __init__(self, dims):
        self.dims = dims

    @classmethod
    def zero(cls):
        return cls(EPSequence.zero())

    @classmethod
    def finite(cls, values):
        return cls(EPSequence.finite(values))

    @classmethod
    def with_slopes(cls, alpha, beta, core=None):
        """Object whose tails realize ``(alpha, beta)``; the period is the
        smallest even multiple of each denominator.

        The right tail starts at degree 0 and the left one ends at degree -1,
        each carrying a single nonzero value per period on the slot whose sign
        matches the slope.
        """
        alpha, beta = Fraction(alpha), Fraction(beta)
        right = _tail_for(alpha, 0, sign_base=0)
        left = _tail_for(beta, -1, sign_base=1)
        return cls(EPSequence(core or {}, right, left))

    def __call__(self, i):
        return self.dims(i)

    def __eq__(self, other):
        return isinstance(other, SlopeObject) and self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return f"SlopeObject({self.dims!r})"

    def to_json(self):
        return self.dims.to_json()

    @classmethod
    def from_json(cls, data):
        return cls(EPSequence.from_json(data))


def _tail_for(slope, anchor, sign_base):
    """Tail with the given slope; ``sign_base`` is the parity of (-1)-exponent at the anchor."""
    if slope == 0:
        return None
    p = slope.denominator if slope.denominator % 2 == 0 else 2 * slope.denominator
    n = abs(slope * p)
    vals = [0] * p
    # slot k contributes (-1)^(sign_base + k) * vals[k] to one period's alternating sum
    want_even = (slope > 0) == (sign_base % 2 == 0)
    vals[0 if want_even else 1] = int(n)
    return Tail(anchor, vals)


def _sign(k):
    return -1 if k % 2 else 1


def partial_sums(M, j, direction="+"):
    """``a^j`` (direction ``+``) or ``b^j`` (direction ``-``) by direct summation."""
    if j < 0:
        raise ValueError("j must be non-negative")
    d = M.dims if isinstance(M, SlopeObject) else M
    if direction == "+":
        return sum((-1) ** i * d(i) for i in range(j + 1))
    if direction == "-":
        return sum((-1) ** i * d(-i) for i in range(j + 1))
    raise ValueError("direction is '+' or '-'")


def _tail_slope(t, sign_at_anchor):
    if t is None:
        return Fraction(0)
    s = sum(_sign(sign_at_anchor + k) * v for k, v in enumerate(t.vals))
    return Fraction(s, t.period)


def slopes(M, verify=True):
    """Closed-form ``(alpha, beta)`` from one period of each tail.

    With ``verify`` the partial sums are checked to stay within a fixed
    distance of ``slope * j`` for four periods past the tail.
    """
    d = M.dims if isinstance(M, SlopeObject) else M
    alpha = _tail_slope(d.right, d.right.anchor) if d.right is not None else Fraction(0)
    # b^j sums (-1)^i dim M^{-i}; at degree -i = left.anchor - k, i = k - anchor
    beta = _tail_slope(d.left, -d.left.anchor) if d.left is not None else Fraction(0)
    pair = SlopePair(alpha, beta)
    if verify:
        _verify_slopes(d, pair)
    return pair


def _verify_slopes(d, pair):
    lo, hi = d.window()
    p = d.period
    reach = max(abs(lo), abs(hi)) + 4 * p + 1
    for direction, s in (("+", pair.alpha), ("-", pair.beta)):
        devs = []
        acc = 0
        for j in range(reach + 1):
            i = j if direction == "+" else -j
            acc += (-1) ** j * d(i)
            devs.append(acc - s * j)
        # past the window the deviation is periodic, hence bounded: compare period-spaced samples
        tail_start = reach - 2 * p
        for j in range(tail_start, reach - p + 1):
            if devs[j] != devs[j + p]:
                raise ProfileError(f"slope {s} does not fit the partial sums in direction {direction}")


def shift_slope(M, k):
    return SlopeObject(M.dims.shifted(k))


def direct_sum_slope(*objs):
    if not objs:
        return SlopeObject.zero()
    return SlopeObject(EPSequence.pointwise(lambda *v: sum(v), *(o.dims for o in objs)))


class RankProfile:
    """Degreewise ranks of a map between zero-differential complexes."""

    def __init__(self, source, target, ranks):
        self.source, self.target, self.ranks = source, target, ranks
        bad = _first_violation(ranks, source.dims, target.dims)
        if bad is not None:
            raise ProfileError(f"rank bound violated at degree {bad}")

    @classmethod
    def identity(cls, M):
        return cls(M, M, M.dims)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, EPSequence.zero())


def _first_violation(r, a, b):
    seqs = (r, a, b)
    lo = min(s.window()[0] for s in seqs)
    hi = max(s.window()[1] for s in seqs)
    p = lcm(*(s.period for s in seqs))
    for i in range(lo - p, hi + p + 1):
        if r(i) > min(a(i), b(i)):
            return i
    return None


def cone_profile(f):
    """``dims(i) = (N(i) - r(i)) + (M(i+1) - r(i+1))`` for ``f: M -> N``."""
    M, N, r = f.source.dims, f.target.dims, f.ranks
    M1, r1 = M.shifted(1), r.shifted(1)
    return SlopeObject(EPSequence.pointwise(lambda n, rr, m1, rr1: (n - rr) + (m1 - rr1), N, r, M1, r1))


# ---------------------------------------------------------------------------
# membership, truncation, padding


def in_C(M):
    s = slopes(M)
    return s.alpha.denominator == 1 and s.beta.denominator == 1


def in_Cprime(M):
    s = slopes(M)
    return (s.beta - s.alpha).denominator == 1


def in_le(M, m=0):
    """``w<=m``: zero in degrees ``< -m``."""
    d = M.dims
    if d.left is not None:
        return False
    return all(v == 0 for i, v in d.core.items() if i < -m) and _right_zero_below(d, -m)


def _right_zero_below(d, bound):
    if d.right is None:
        return True
    return all(d(i) == 0 for i in range(d.right.anchor, bound)) if d.right.anchor < bound else True


def in_ge(M, m=0):
    """``w>=m``: zero in degrees ``> -m``."""
    d = M.dims
    if d.right is not None:
        return False
    ok = all(v == 0 for i, v in d.core.items() if i > -m)
    if d.left is not None and d.left.anchor > -m:
        ok = ok and all(d(i) == 0 for i in range(-m + 1, d.left.anchor + 1))
    return ok


def membership(M, which):
    which = which.replace("'", "′")
    if which == "D":
        return True
    if which == "C":
        return in_C(M)
    if which in ("C′", "Cprime"):
        return in_Cprime(M)
    if which in ("w<=0", "w≤0"):
        return in_le(M, 0)
    if which in ("w>=0", "w≥0"):
        return in_ge(M, 0)
    raise ValueError(f"unknown class {which!r}")


def truncate(M, m=0):
    """``(w<=m part, w>=m+1 part)``: degrees ``>= -m`` and ``< -m``."""
    d = M.dims
    return SlopeObject(d.restricted(lo=-m)), SlopeObject(d.restricted(hi=-m - 1))


def pad_to_C(M):
    """``(N, evidence)``: ``N`` in C dominating ``M`` degreewise.

    The alpha side is raised to the next integer by adding to the right
    tail on slots with sign +1 relative to degree 0, the beta side likewise
    on the left; the evidence is the complement ``N - M``.
    """
    d = M.dims
    s = slopes(M)
    right = _pad_tail(d.right, d.right.anchor if d.right is not None else 0, s.alpha)
    left = _pad_tail(d.left, -d.left.anchor if d.left is not None else 0, s.beta)
    N = SlopeObject(EPSequence(d.core, right, left))
    comp = SlopeObject(EPSequence.pointwise(lambda n, m: n - m, N.dims, d))
    return N, RetractEvidence(M, N, comp)


def _pad_tail(t, sign_at_anchor, slope):
    if t is None:
        return None
    up = ceil(slope) - slope
    if up == 0:
        return t
    # one period gains up * period, spread over the positive-sign slots
    total = up * t.period
    assert total.denominator == 1
    vals = list(t.vals)
    slot = 0 if sign_at_anchor % 2 == 0 else 1
    vals[slot] += int(total)
    return Tail(t.anchor, vals)


class RetractEvidence:
    """``M`` is a retract of ``N`` because ``N = M + complement`` degreewise."""

    def __init__(self, M, N, complement):
        self.M, self.N, self.complement = M, N, complement

    def verify(self):
        return direct_sum_slope(self.M, self.complement) == self.N

    def to_json(self):
        return {"retract": self.M.to_json(), "ambient": self.N.to_json(), "complement": self.complement.to_json()}


def dominates(N, M):
    """Pointwise ``N >= M`` (the retract criterion between zero-differential complexes)."""
    try:
        EPSequence.pointwise(lambda n, m: n - m, N.dims, M.dims)
    except ProfileError:
        return False
    return True


# ---------------------------------------------------------------------------
# the obstruction


class ObstructionCertificate:
    """No weight decomposition of ``M`` at any index has both components in C′.

    Steps, each re-checkable by :meth:`verify`:
      (a) slopes are additive on triangles: alpha(M) = alpha(X) + alpha(Y);
      (b) X in C′ and in some w<=m has beta = 0, hence alpha(X) in Z;
          Y in w>=m+1 has alpha = 0;
      (c) alpha(M) is not an integer, contradicting (a) + (b).
    """

    def __init__(self, M, pair, additivity_samples):
        self.M = M
        self.slopes = pair
        self.additivity_samples = additivity_samples

    def verify(self, samples=None):
        fails = []
        s = slopes(self.M)
        if s != self.slopes:
            fails.append("recorded slopes differ from the object's")
        if not in_Cprime(self.M):
            fails.append("object is not in C′")
        if s.alpha.denominator == 1:
            fails.append("alpha is an integer: no obstruction")
        for (src, tgt, r) in (samples or self.additivity_samples):
            f = RankProfile(src, tgt, r)
            if slopes(cone_profile(f)) != slopes(tgt) - slopes(src):
                fails.append("slope additivity failed on a sample triangle")
        for m in _truncation_indices(self.M):
            X, Y = truncate(self.M, m)
            sx, sy = slopes(X), slopes(Y)
            if sx.beta != 0 or sy.alpha != 0:
                fails.append(f"truncation at {m}: unexpected tail slopes")
            if sx + sy != s:
                fails.append(f"truncation at {m}: slopes do not add up")
        return fails

    def to_json(self):
        a = self.slopes.alpha
        return {
            "object": self.M.to_json(),
            "slopes": self.slopes.to_json(),
            "steps": [
                {"step": "additivity", "statement": "alpha(M) = alpha(X) + alpha(Y) for every triangle X -> M -> Y",
                 "samples_checked": len(self.additivity_samples)},
                {"step": "low part", "statement": "X in w<=m has zero left tail, so beta(X) = 0; X in C' forces alpha(X) in Z"},
                {"step": "high part", "statement": "Y in w>=m+1 has zero right tail, so alpha(Y) = 0"},
                {"step": "contradiction", "statement": f"alpha(M) = {a} is not an integer", "alpha": str(a)},
            ],
            "conclusion": "no weight decomposition of M has both components in C'",
        }


def _truncation_indices(M):
    lo, hi = M.dims.window()
    return range(-hi - 2, -lo + 3)


def no_decomposition_witness(M, rng=None, samples=20):
    """Certificate that ``M`` (in C′ but not C) has no weight decomposition inside C′."""
    if not in_Cprime(M) or in_C(M):
        raise PreconditionError("witness object must lie in C′ but not in C")
    rng = rng or random.Random(0)
    triples = []
    for _ in range(samples):
        src, tgt = random_slope_object(rng), random_slope_object(rng)
        triples.append((src, tgt, random_ranks(rng, src, tgt)))
    cert = ObstructionCertificate(M, slopes(M), triples)
    fails = cert.verify()
    if fails:
        raise PreconditionError("; ".join(fails))
    return cert


def exhaustive_decomposition_search(M, extra=3):
    """Brute-force search for a decomposition ``X -> M -> Y`` with ``X, Y`` in C′.

    In the zero-differential model, rotate to ``Y[-1] -g-> X -> M`` so that
    ``M = Cone(g)``.  With ``X`` in ``w<=m`` and ``Y`` in ``w>=m+1`` the map
    ``g`` can only be nonzero in degree ``c = -m``; if it has rank ``r`` there,
    the cone formula forces ``X = (M on degrees >= c) + r`` in degree ``c``
    and ``Y = (M on degrees < c) + r`` in degree ``c - 1``.  Every index ``m``
    in a window covering the core and two periods on either side, and every
    ``r <= M(c) + extra``, is tried; each candidate is re-checked through
    :func:`cone_profile`.  Returns the decompositions found.
    """
    found = []
    d = M.dims
    lo, hi = d.window()
    p = d.period
    tried = 0
    for c in range(lo - 2 * p, hi + 2 * p + 1):
        m = -c
        for r in range(0, d(c) + extra + 1):
            X = _bumped(d.restricted(lo=c), c, r)
            Y = _bumped(d.restricted(hi=c - 1), c - 1, r)
            g = RankProfile(shift_slope(Y, -1), X, EPSequence({c: r}))
            tried += 1
            if cone_profile(g) != M:
                raise ProfileError(f"junction data at m={m}, r={r} does not reproduce the object")
            if not (in_le(X, m) and in_ge(Y, m + 1)):
                raise ProfileError(f"junction data at m={m}, r={r} leaves the weight classes")
            if in_Cprime(X) and in_Cprime(Y):
                found.append({"m": m, "r": r, "X": X, "Y": Y})
    return found, tried


def _bumped(seq, i, extra):
    if not extra:
        return SlopeObject(seq)
    return SlopeObject(EPSequence.pointwise(lambda a, b: a + b, seq, EPSequence({i: extra})))


def random_slope_object(rng, max_dim=3, periods=(2, 4), p_tail=0.7):
    """Random profile with random core on ``[-3, 3]`` and optional tails."""
    core = {i: rng.randint(0, max_dim) for i in range(-3, 4)}
    right = left = None
    if rng.random() < p_tail:
        right = Tail(4, [rng.randint(0, max_dim) for _ in range(rng.choice(periods))])
    if rng.random() < p_tail:
        left = Tail(-4, [rng.randint(0, max_dim) for _ in range(rng.choice(periods))])
    return SlopeObject(EPSequence(core, right, left))


def random_ranks(rng, src, tgt):
    """Random rank sequence bounded by both endpoints, eventually periodic."""
    bound = EPSequence.pointwise(min, src.dims, tgt.dims)

    def pick(b):
        return rng.randint(0, b) if b else 0
    right = Tail(bound.right.anchor, [pick(b) for b in bound.right.vals]) if bound.right is not None else None
    left = Tail(bound.left.anchor, [pick(b) for b in bound.left.vals]) if bound.left is not None else None
    return EPSequence({i: pick(b) for i, b in sorted(bound.core.items())}, right, left)


def random_cprime_object(rng, max_den=3, max_dim=2):
    """Random object of C′: slopes ``(a, a + r)`` with ``r`` an integer, plus a random core."""
    den = rng.randint(1, max_den)
    a = Fraction(rng.randint(-2 * den, 2 * den), den)
    b = a + rng.randint(-1, 1)
    base = SlopeObject.with_slopes(a, b)
    core = {i: rng.randint(0, max_dim) for i in range(-2, 3)}
    return direct_sum_slope(base, SlopeObject.finite(core))
