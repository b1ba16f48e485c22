"""Certificate trees: objects presented as iterated extensions of generators.

A tree realizes a concrete complex from a list of generators ``B``:

* ``Generator(i)``          -> ``B[i]``
* ``Shift(child, k)``       -> ``child[k]``
* ``Extend(left, right, g)`` -> ``twist(left, right, g)`` (``g: right -> left`` of degree 1)
* ``RetractTower(child, s, r, n)`` -> the retract ``r.tgt`` of ``child`` (``r o s ~ 1``)
* ``Zero()``                -> the zero complex

Since every generator of a negative family lies in the heart of the weight
structure it generates, ``B[i][k]`` has weight exactly ``k``; the weight range
of a tree is therefore read off its leaves.
"""

from ..complexes import Complex, ComplexError, GradedMap, compose_graded, hom_differential, shift, twist
from ..homotopy import is_nullhomotopic
from ..serialize import complex_from_json, complex_to_json, morphism_entries_from_json


class CertificateError(ValueError):
    pass


class Node:
    kind = None

    def realize(self, gens):
        raise NotImplementedError

    def weight_range(self):
        raise NotImplementedError

    def size(self):
        return 1 + sum(c.size() for c in self.children())

    def children(self):
        return ()


class Zero(Node):
    kind = "zero"

    def realize(self, gens):
        if not gens:
            raise CertificateError("cannot realize a tree without generators")
        return Complex.zero(gens[0].cat)

    def weight_range(self):
        return None

    def to_json(self):
        return {"kind": "zero"}

    def __eq__(self, other):
        return isinstance(other, Zero)

    def __hash__(self):
        return hash("zero")


class Generator(Node):
    kind = "generator"

    def __init__(self, index):
        self.index = int(index)

    def realize(self, gens):
        if not 0 <= self.index < len(gens):
            raise CertificateError(f"generator index {self.index} out of range")
        return gens[self.index]

    def weight_range(self):
        return (0, 0)

    def to_json(self):
        return {"kind": "generator", "index": self.index}


class Shift(Node):
    kind = "shift"

    def __init__(self, child, k):
        self.child = child
        self.k = int(k)

    def children(self):
        return (self.child,)

    def realize(self, gens):
        return shift(self.child.realize(gens), self.k)

    def weight_range(self):
        r = self.child.weight_range()
        return None if r is None else (r[0] + self.k, r[1] + self.k)

    def to_json(self):
        return {"kind": "shift", "k": self.k, "child": self.child.to_json()}


class Extend(Node):
    """``twist(left, right, gluing)``: an extension of ``right`` by ``left``."""

    kind = "extend"

    def __init__(self, left, right, gluing=None):
        self.left = left
        self.right = right
        self.gluing = gluing

    def children(self):
        return (self.left, self.right)

    def realize(self, gens):
        a = self.left.realize(gens)
        b = self.right.realize(gens)
        g = self.gluing
        if g is not None:
            if g.src != b or g.tgt != a:
                raise CertificateError("gluing map does not match the realized children")
            g = GradedMap(b, a, 1, g.comps, check=False)
        return twist(a, b, g)

    def weight_range(self):
        rs = [r for r in (self.left.weight_range(), self.right.weight_range()) if r is not None]
        if not rs:
            return None
        return (min(r[0] for r in rs), max(r[1] for r in rs))

    def to_json(self):
        return {"kind": "extend", "left": self.left.to_json(), "right": self.right.to_json(),
                "gluing": graded_to_json(self.gluing) if self.gluing is not None else None}


class RetractTower(Node):
    """A retract ``N`` of the realized child ``M``: ``r: M -> N``, ``s: N -> M``, ``r o s ~ 1``."""

    kind = "retract_tower"

    def __init__(self, child, s, r, n=None):
        self.child = child
        self.s = s
        self.r = r
        self.n = n

    def children(self):
        return (self.child,)

    def realize(self, gens):
        m = self.child.realize(gens)
        if self.s.tgt != m or self.r.src != m:
            raise CertificateError("retraction data does not match the realized child")
        return self.r.tgt

    def weight_range(self):
        return self.child.weight_range()

    def to_json(self):
        return {"kind": "retract_tower", "n": self.n, "child": self.child.to_json(),
                "s": graded_to_json(self.s), "r": graded_to_json(self.r),
                "retract": complex_to_json(self.r.tgt)}


def verify_tree(tree, gens, obj=None):
    """Re-check a tree: realizations match, gluings are cycles, retractions split.

    Returns the list of failures (empty when the tree is sound).
    """
    failures = []

    def walk(node):
        try:
            real = node.realize(gens)
        except (CertificateError, ComplexError) as exc:
            failures.append(f"{node.kind}: {exc}")
            return None
        if isinstance(node, Extend) and node.gluing is not None:
            if not hom_differential(node.gluing).is_zero():
                failures.append("extend: gluing is not a cycle")
        if isinstance(node, RetractTower):
            rs = compose_graded(node.r, node.s)
            if rs.degree != 0 or not is_nullhomotopic(rs - GradedMap.identity(node.r.tgt)):
                failures.append("retract_tower: r o s is not homotopic to the identity")
            if not (hom_differential(node.r).is_zero() and hom_differential(node.s).is_zero()):
                failures.append("retract_tower: retraction data are not chain maps")
        for c in node.children():
            walk(c)
        return real

    real = walk(tree)
    if obj is not None and real is not None and real != obj:
        failures.append("tree does not realize the claimed object")
    return failures


# ---------------------------------------------------------------------------
# JSON


def graded_to_json(f):
    return {"degree": f.degree,
            "comps": {str(i): c.to_json()["entries"] for i, c in sorted(f.comps.items())}}


def tree_to_json(tree):
    return tree.to_json()


def tree_from_json(data, gens):
    """Rebuild a tree; gluing and retraction maps are re-bound to realized complexes."""
    if not isinstance(data, dict) or "kind" not in data:
        raise CertificateError("certificate node needs a 'kind'")
    kind = data["kind"]
    if kind == "zero":
        return Zero()
    if kind == "generator":
        return Generator(data["index"])
    if kind == "shift":
        return Shift(tree_from_json(data["child"], gens), data["k"])
    if kind == "extend":
        left = tree_from_json(data["left"], gens)
        right = tree_from_json(data["right"], gens)
        g = None
        if data.get("gluing") is not None:
            a, b = left.realize(gens), right.realize(gens)
            g = _graded_from_json(data["gluing"], b, a, morphism_entries_from_json)
        return Extend(left, right, g)
    if kind == "retract_tower":
        child = tree_from_json(data["child"], gens)
        m = child.realize(gens)
        cat = m.cat if not m.is_zero() else gens[0].cat
        n = complex_from_json(data["retract"], cat)
        s = _graded_from_json(data["s"], n, m, morphism_entries_from_json)
        r = _graded_from_json(data["r"], m, n, morphism_entries_from_json)
        return RetractTower(child, s, r, data.get("n"))
    raise CertificateError(f"unknown certificate node kind {kind!r}")


def _graded_from_json(data, src, tgt, loader):
    k = int(data["degree"])
    comps = {}
    for i, entries in data.get("comps", {}).items():
        i = int(i)
        comps[i] = loader(src.term(i), tgt.term(i + k), entries)
    return GradedMap(src, tgt, k, comps)


__all__ = [
    "CertificateError", "Node", "Zero", "Generator", "Shift", "Extend", "RetractTower",
    "verify_tree", "complex_to_json", "graded_to_json", "tree_to_json", "tree_from_json",
]
