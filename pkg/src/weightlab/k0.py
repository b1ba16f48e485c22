"""The Grothendieck-group criterion for extending a weight structure.

For an idempotent extension ``C'`` of ``C`` inside ``D = Kar(C)``, the
weight structure extends iff ``(G & K-) + (G & K+) = G`` where ``G`` is the
image of ``K0(C')`` and ``K-``/``K+`` are the subgroups of the categories
generated by ``C`` and the retracts of its bounded-above / bounded-below
objects.  Here everything is computed in a homomorphic image of ``K0``
(slope pairs, Euler characteristics).  A failure in the image is a sound
proof of non-extension; a success only means "no obstruction".
"""

from fractions import Fraction
from math import lcm

from .linalg import IntLattice, LatticeError
from .slopes import SlopeObject, slopes


class ScaledLattice:
    """A subgroup of ``(1/P) Z^n`` stored as ``P`` times it, an :class:`IntLattice`."""

    def __init__(self, denominator, lattice):
        if denominator <= 0:
            raise LatticeError("denominator must be positive")
        self.denominator = int(denominator)
        self.lattice = lattice

    @classmethod
    def from_vectors(cls, vectors, n=None):
        """Lattice generated by rational vectors."""
        vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        if n is None:
            if not vectors:
                raise LatticeError("ambient rank needed for an empty generator list")
            n = len(vectors[0])
        P = lcm(1, *(x.denominator for v in vectors for x in v))
        return cls(P, IntLattice.from_generators([[int(x * P) for x in v] for v in vectors], n))

    @classmethod
    def zero(cls, n):
        return cls(1, IntLattice.zero(n))

    @property
    def ambient_rank(self):
        return self.lattice.ambient_rank

    def rescaled(self, P):
        if P % self.denominator:
            raise LatticeError(f"{P} is not a multiple of {self.denominator}")
        return ScaledLattice(P, self.lattice.scaled(P // self.denominator))

    def _common(self, other):
        if self.ambient_rank != other.ambient_rank:
            raise LatticeError(f"ambient rank mismatch: {self.ambient_rank} vs {other.ambient_rank}")
        P = lcm(self.denominator, other.denominator)
        return self.rescaled(P), other.rescaled(P)

    def __add__(self, other):
        a, b = self._common(other)
        return ScaledLattice(a.denominator, a.lattice + b.lattice).reduced()

    def __and__(self, other):
        a, b = self._common(other)
        return ScaledLattice(a.denominator, a.lattice & b.lattice).reduced()

    def contains(self, v):
        v = [Fraction(x) for x in v]
        scaled = [x * self.denominator for x in v]
        if any(x.denominator != 1 for x in scaled):
            return False
        return self.lattice.contains([int(x) for x in scaled])

    def __le__(self, other):
        return all(other.contains(v) for v in self.basis())

    def __eq__(self, other):
        if not isinstance(other, ScaledLattice):
            return NotImplemented
        a, b = self._common(other)
        return a.lattice == b.lattice

    def __hash__(self):
        r = self.reduced()
        return hash((r.denominator, r.lattice))

    def reduced(self):
        """Smallest denominator representing the same subgroup."""
        P = self.denominator
        for d in sorted(_divisors(P)):
            k = P // d
            if all(x % k == 0 for row in self.lattice.basis for x in row):
                return ScaledLattice(d, IntLattice.from_generators(
                    [[x // k for x in row] for row in self.lattice.basis], self.ambient_rank))
        return self

    def basis(self):
        """Rational basis vectors."""
        return [tuple(Fraction(x, self.denominator) for x in row) for row in self.lattice.basis]

    def to_json(self):
        r = self.reduced()
        return {"denominator": r.denominator, "hnf": [[str(x) for x in row] for row in r.lattice.basis],
                "basis": [[str(x) for x in v] for v in r.basis()]}

    def __repr__(self):
        return f"ScaledLattice(1/{self.denominator}, {[list(map(str, v)) for v in self.basis()]})"


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class InvariantAssignment:
    """An additive invariant ``object -> rational vector`` with its source tag."""

    def __init__(self, source, fn, rank):
        self.source = source
        self.fn = fn
        self.rank = rank

    def __call__(self, obj):
        return tuple(Fraction(x) for x in self.fn(obj))

    @classmethod
    def slope_pair(cls):
        return cls("slope", lambda M: tuple(slopes(M)), 2)

    @classmethod
    def euler_class(cls, cat):
        """Alternating sum of multiplicity vectors for complexes over ``cat``."""
        verts = cat.quiver.vertices

        def euler(M):
            v = [0] * len(verts)
            for i, o in M.terms.items():
                sign = -1 if i % 2 else 1
                for s in o.summands:
                    v[verts.index(s)] += sign
            return v
        return cls("kb", euler, len(verts))


def invariant_image(objs, assign):
    """Subgroup generated by the invariants of ``objs``."""
    vecs = []
    for o in objs:
        if assign.source == "slope" and not isinstance(o, SlopeObject):
            raise TypeError("slope invariant applied to a non-slope object")
        vecs.append(assign(o))
    return ScaledLattice.from_vectors(vecs, assign.rank)


class CriterionVerdict:
    def __init__(self, satisfied, G, low, high, total, counterexample=None):
        self.satisfied = satisfied
        self.G, self.low, self.high, self.total = G, low, high, total
        self.counterexample = counterexample

    def to_json(self):
        out = {"satisfied": self.satisfied, "G": self.G.to_json(), "G_and_Kminus": self.low.to_json(),
               "G_and_Kplus": self.high.to_json(), "sum": self.total.to_json()}
        if self.counterexample is not None:
            out["counterexample"] = [str(x) for x in self.counterexample]
        return out


def criterion_check(G, Kminus, Kplus):
    """Decide ``(G & K-) + (G & K+) = G``; on failure return a basis vector of ``G`` outside the sum."""
    if not (G.ambient_rank == Kminus.ambient_rank == Kplus.ambient_rank):
        raise LatticeError("lattices live in different ambients")
    low = G & Kminus
    high = G & Kplus
    total = low + high
    if total == G:
        return CriterionVerdict(True, G, low, high, total)
    witness = next(v for v in G.basis() if not total.contains(v))
    return CriterionVerdict(False, G, low, high, total, witness)


# ---------------------------------------------------------------------------
# scenarios for the slope categories


def scenario_lattices(name, period=2):
    """``(G, K-, K+, notes)`` for the slope scenarios ``c``, ``cprime`` and ``d``.

    ``K-`` is generated by C (integer slope pairs) together with retracts of
    its w-bounded-above objects.  Those are the objects supported in degrees
    bounded below, so ``beta = 0`` while ``alpha`` is any representable
    rational: with denominators dividing ``period`` this gives
    ``(1/period) Z x Z``.  Dually ``K+ = Z x (1/period) Z``.
    """
    if period < 1:
        raise ValueError("period must be positive")
    P = period
    h = Fraction(1, P)
    Kminus = ScaledLattice.from_vectors([(h, 0), (0, 1)])
    Kplus = ScaledLattice.from_vectors([(1, 0), (0, h)])
    generators = {
        "c": [SlopeObject.with_slopes(1, 0), SlopeObject.with_slopes(0, 1)],
        "cprime": [SlopeObject.with_slopes(1, 0), SlopeObject.with_slopes(0, 1), SlopeObject.with_slopes(h, h)],
        "d": [SlopeObject.with_slopes(h, 0), SlopeObject.with_slopes(0, h)],
    }
    if name not in generators:
        raise ValueError(f"unknown scenario {name!r} (expected c, cprime or d)")
    G = invariant_image(generators[name], InvariantAssignment.slope_pair())
    notes = {
        "invariant": "slope pair (alpha, beta), an additive image of K0",
        "Kminus": "C plus retracts of w-bounded-above objects: beta = 0, alpha in (1/P)Z",
        "Kplus": "C plus retracts of w-bounded-below objects: alpha = 0, beta in (1/P)Z",
        "generators": [g.to_json() for g in generators[name]],
    }
    return G, Kminus, Kplus, notes


def necessary_condition_report(name, period=2):
    G, Km, Kp, notes = scenario_lattices(name, period)
    v = criterion_check(G, Km, Kp)
    out = {"scenario": name, "period": period, "criterion": v.to_json(), "notes": notes}
    if v.satisfied:
        out["verdict"] = "no obstruction"
        out["conclusion"] = "criterion holds in the invariant image: no obstruction at invariant level"
        if name == "d":
            out["cross_reference"] = "slope-lab pad_to_C realizes every object as a retract of an object of C"
    else:
        out["verdict"] = "no extension exists"
        out["conclusion"] = "criterion fails in a homomorphic image of K0, hence fails in K0: w does not extend"
    return out


__all__ = [
    "ScaledLattice", "InvariantAssignment", "invariant_image", "CriterionVerdict", "criterion_check",
    "scenario_lattices", "necessary_condition_report",
]
