"""Weight structures as executable membership oracles.

Degree/weight dictionary (stated once; every test routes through it): an
object of the homotopy category lies in ``w<=m`` iff its minimal model is
supported in degrees ``>= -m``, and in ``w>=m`` iff it is supported in
degrees ``<= -m``.  So ``w<=0`` is "degrees >= 0" and the heart is degree 0.
"""

from ..base import BaseObject
from ..complexes import Complex, GradedMap, shift
from ..homotopy import hom_dimension, is_nullhomotopic, minimal_model
from .certificates import CertificateError, Extend, Generator, RetractTower, Shift, Zero, verify_tree
from .decomposition import (
    WeightDecomposition, combine_twisted, shift_decomposition, stupid_decomposition, trivial_high, trivial_low,
)
from .tower import decompose_retract
from .. import slopes as slope_lab


class NotNegativeError(ValueError):
    """The generator family has a nonzero morphism into a positive shift."""


class Stupid:
    name = "stupid"


class GeneratedByNegative:
    name = "generated"

    def __init__(self, generators):
        self.generators = list(generators)


class SlopeRestricted:
    name = "slope"

    def __init__(self, descriptor):
        self.descriptor = descriptor


class Custom:
    name = "custom"

    def __init__(self, le, ge, label="custom", decompose=None):
        self.le, self.ge, self.label = le, ge, label
        self.decompose = decompose


def support(m):
    """Support ``(lo, hi)`` of the minimal model, or None when contractible."""
    return minimal_model(m, track=False).model.bounds()


def stupid_in_le(M, m=0):
    b = support(M)
    return b is None or b[0] >= -m


def stupid_in_ge(M, m=0):
    b = support(M)
    return b is None or b[1] <= -m


class WeightStructureSpec:
    """A weight structure given by its flavor; ``in_le(M, m)`` decides ``M in w<=m``."""

    def __init__(self, flavor, cat=None):
        self.flavor = flavor
        self.cat = cat
        self._stalk_index = None

    @classmethod
    def stupid(cls, cat=None):
        return cls(Stupid(), cat)

    @classmethod
    def generated_by_negative(cls, generators, check=True):
        gens = list(generators)
        if check:
            rep = negativity_check(gens)
            if not rep.negative:
                raise NotNegativeError(f"generators are not negative: witness {rep.witness}")
        return cls(GeneratedByNegative(gens), gens[0].cat if gens else None)

    @classmethod
    def slope_restricted(cls, descriptor="D"):
        """Stupid structure on the slope category restricted to ``D``, ``C`` or ``C′``."""
        return cls(SlopeRestricted(descriptor))

    @classmethod
    def custom(cls, le, ge, label="custom", decompose=None):
        return cls(Custom(le, ge, label, decompose))

    @property
    def name(self):
        return self.flavor.label if isinstance(self.flavor, Custom) else self.flavor.name

    @property
    def generators(self):
        return self.flavor.generators if isinstance(self.flavor, GeneratedByNegative) else None

    # -- membership --------------------------------------------------------

    def in_le(self, M, m=0, evidence=None):
        """For generated structures: ``M`` is in ``w<=m`` iff the map ``y: M -> Y`` of
        any decomposition vanishes (orthogonality one way, retract-closure the other).
        """
        fl = self.flavor
        if isinstance(fl, Stupid):
            return stupid_in_le(M, m)
        if isinstance(fl, Custom):
            return fl.le(M, m)
        if isinstance(fl, SlopeRestricted):
            return slope_lab.membership(M, fl.descriptor) and slope_lab.in_le(M, m)
        if isinstance(fl, GeneratedByNegative):
            if evidence is not None and self._evidence_bounds(evidence, M, hi=m):
                return True
            return is_nullhomotopic(self.decompose(M, m).y)
        raise TypeError(f"membership undefined for flavor {fl.name}")

    def in_ge(self, M, m=0, evidence=None):
        fl = self.flavor
        if isinstance(fl, Stupid):
            return stupid_in_ge(M, m)
        if isinstance(fl, Custom):
            return fl.ge(M, m)
        if isinstance(fl, SlopeRestricted):
            return slope_lab.membership(M, fl.descriptor) and slope_lab.in_ge(M, m)
        if isinstance(fl, GeneratedByNegative):
            if evidence is not None and self._evidence_bounds(evidence, M, lo=m):
                return True
            return is_nullhomotopic(self.decompose(M, m - 1).x)
        raise TypeError(f"membership undefined for flavor {fl.name}")

    def in_heart(self, M):
        return self.in_le(M, 0) and self.in_ge(M, 0)

    def _evidence_bounds(self, tree, M, lo=None, hi=None):
        if verify_tree(tree, self.generators, M):
            return False
        r = tree.weight_range()
        if r is None:
            return True
        return (lo is None or r[0] >= lo) and (hi is None or r[1] <= hi)

    # -- decompositions ----------------------------------------------------

    def certify(self, M):
        """Certificate tree for a raw complex (brutal filtration by stalk generators)."""
        if not isinstance(self.flavor, GeneratedByNegative):
            raise CertificateError("only generated structures use certificates")
        return certify_by_filtration(M, self.generators, self._stalks())

    def _stalks(self):
        if self._stalk_index is None:
            idx = {}
            for i, b in enumerate(self.generators):
                if b.bounds() == (0, 0) and len(b.terms[0]) == 1 and not b.diffs:
                    idx.setdefault(b.terms[0].summands[0], i)
            self._stalk_index = idx
        return self._stalk_index

    def decompose(self, M, m=0, cert=None):
        """A weight decomposition of ``M`` at ``m`` (certificate-driven for generated flavors)."""
        if isinstance(self.flavor, Stupid):
            return stupid_decomposition(M, m)
        if isinstance(self.flavor, GeneratedByNegative):
            if cert is None:
                cert = self.certify(M)
            d = decompose_presented(cert, m, self.generators)
            if d.M != M:
                raise CertificateError("certificate does not realize the object")
            return d
        if isinstance(self.flavor, SlopeRestricted):
            return slope_lab.truncate(M, m)
        if isinstance(self.flavor, Custom) and self.flavor.decompose is not None:
            return self.flavor.decompose(M, m)
        raise TypeError(f"no decomposition procedure for flavor {self.name}")

    def can_decompose(self):
        fl = self.flavor
        return isinstance(fl, (Stupid, GeneratedByNegative)) or (isinstance(fl, Custom) and fl.decompose is not None)


def certify_by_filtration(M, gens, stalks):
    """Tree presenting ``M`` as an iterated extension of its shifted terms."""
    if M.is_zero():
        return Zero()
    for o in M.terms.values():
        missing = sorted(set(o.summands) - set(stalks))
        if missing:
            raise CertificateError(
                f"no stalk generator for {missing}; supply a certificate for this object")
    lo, hi = M.bounds()
    tree = None
    upper = None          # realized sigma_{>=i+1} M
    for i in range(hi, lo - 1, -1):
        obj = M.term(i)
        if obj.is_zero():
            continue
        stalk_tree = Shift(_sum_tree([stalks[v] for v in obj.summands]), -i)
        if tree is None:
            tree, upper = stalk_tree, Complex.stalk(obj, i)
            continue
        stalk = Complex.stalk(obj, i)
        d = M.diffs.get(i)
        glue = GradedMap(stalk, upper, 1, {i: d} if d is not None else {}, check=False)
        tree = Extend(tree, stalk_tree, glue)
        upper = Complex(M.cat, {j: o for j, o in M.terms.items() if j >= i},
                        {j: dd for j, dd in M.diffs.items() if j >= i}, check=False)
    return tree


def _sum_tree(indices):
    tree = Generator(indices[-1])
    for i in reversed(indices[:-1]):
        tree = Extend(Generator(i), tree)
    return tree


def _zero_decomposition(cat, m):
    z = Complex.zero(cat)
    return WeightDecomposition(m, z, z, GradedMap.zero(z, z), z, GradedMap.zero(z, z), GradedMap.zero(z, z, -1),
                               Zero(), Zero())


def decompose_presented(cert, m, gens, _cache=None):
    """Transport generator decompositions through a certificate tree.

    Generators lie in the heart, so their decompositions are trivial; shifts
    move the index, extensions combine, retract towers descend from a shift
    far enough out to be of high weight.
    """
    cache = {} if _cache is None else _cache
    key = (id(cert), m)
    if key in cache:
        return cache[key][1]
    if isinstance(cert, Zero):
        d = _zero_decomposition(gens[0].cat, m)
    elif isinstance(cert, Generator):
        b = cert.realize(gens)
        d = trivial_high(b, m, cert) if m >= 0 else trivial_low(b, m, cert)
    elif isinstance(cert, Shift):
        d = shift_decomposition(decompose_presented(cert.child, m - cert.k, gens, cache), cert.k)
    elif isinstance(cert, Extend):
        left = cert.left.realize(gens)
        right = cert.right.realize(gens)
        g = cert.gluing if cert.gluing is not None else GradedMap.zero(right, left, 1)
        d = combine_twisted(left, right, g, decompose_presented(cert.left, m, gens, cache),
                            decompose_presented(cert.right, m, gens, cache))
    elif isinstance(cert, RetractTower):
        d = decompose_retract(cert, m, lambda mm: decompose_presented(cert.child, mm, gens, cache), gens)
    else:
        raise CertificateError(f"unknown certificate node {cert!r}")
    cache[key] = (cert, d)
    return d


class NegativityReport:
    def __init__(self, negative, i_max, witness=None, checked=0):
        self.negative = negative
        self.i_max = i_max
        self.witness = witness
        self.checked = checked

    def __bool__(self):
        return self.negative

    def to_json(self):
        return {"negative": self.negative, "i_max": self.i_max, "pairs_checked": self.checked,
                "witness": self.witness}


def negativity_check(gens):
    """``Hom(b1, b2[i]) = 0`` for all pairs and ``1 <= i <= i_max``.

    ``i_max`` is the width of the union of minimal-model supports: beyond it
    the supports of ``b1`` and ``b2[i]`` are disjoint, so Hom vanishes.
    """
    sups = [support(b) for b in gens]
    sups = [s for s in sups if s is not None]
    if not sups:
        return NegativityReport(True, 0)
    i_max = max(s[1] for s in sups) - min(s[0] for s in sups)
    checked = 0
    for a, b1 in enumerate(gens):
        for b, b2 in enumerate(gens):
            for i in range(1, i_max + 1):
                checked += 1
                dim = hom_dimension(b1, shift(b2, i))
                if dim:
                    return NegativityReport(False, i_max, {"b1": a, "b2": b, "i": i, "hom_dim": dim}, checked)
    return NegativityReport(True, i_max, None, checked)


def stalk_generators(cat):
    """The degree-0 indecomposable objects of the base."""
    return [Complex.stalk(BaseObject(cat, (v,)), 0) for v in cat.quiver.vertices]


def construct_from_negative(gens):
    """Weight structure generated by a negative family (raises if not negative)."""
    return WeightStructureSpec.generated_by_negative(gens, check=True)


__all__ = [
    "NotNegativeError", "Stupid", "GeneratedByNegative", "SlopeRestricted", "Custom", "support",
    "stupid_in_le", "stupid_in_ge", "WeightStructureSpec", "certify_by_filtration", "decompose_presented",
    "NegativityReport", "negativity_check", "stalk_generators", "construct_from_negative",
]
