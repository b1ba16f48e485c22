import pytest
from hypothesis import given, settings, strategies as st

from weightlab.base import (
    BaseCategory, BaseError, BaseMorphism, BaseObject, NotIdempotentError, Path, Quiver, compose,
    is_idempotent, is_retract_base, split_idempotent,
)
from weightlab.linalg import QQ, Matrix, PrimeField
from weightlab.sampling import random_automorphism, random_morphism


def arrow_map(cat, a, b):
    """The unique arrow path as a map P_a -> P_b (requires an arrow b -> a)."""
    src, tgt = BaseObject(cat, (a,)), BaseObject(cat, (b,))
    (p,) = [p for p in cat.hom_basis(a, b) if p.arrows]
    return BaseMorphism.from_entries(src, tgt, {(0, 0): {p: 1}})


def test_quiver_rejects_cycles_and_duplicates():
    with pytest.raises(BaseError):
        Quiver(["1", "2"], [("1", "2"), ("2", "1")])
    with pytest.raises(BaseError):
        Quiver(["1", "1"], [])
    with pytest.raises(BaseError):
        Quiver(["1"], [("1", "3")])


def test_quiver_json_roundtrip():
    q = Quiver(["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "c")])
    assert Quiver.from_json(q.to_json()) == q


def test_path_counts_in_a3(a3):
    # 1 -> 2 -> 3: exactly one path between each ordered comparable pair
    q = a3.quiver
    assert len(q.paths_between("1", "3")) == 1
    assert q.paths_between("3", "1") == []
    assert all(len(q.paths_between(v, v)) == 1 for v in q.vertices)


def test_hom_basis_vect(vect):
    (p,) = vect.hom_basis("k", "k")
    assert p.arrows == ()


def test_hom_basis_a2_convention(a2):
    sizes = {len(a2.hom_basis("1", "2")), len(a2.hom_basis("2", "1"))}
    assert sizes == {0, 1}
    assert [p.arrows for p in a2.hom_basis("1", "1")] == [()]


def test_compose_with_identity_and_zero(a3):
    f = arrow_map(a3, "2", "1")
    assert compose(BaseMorphism.identity(f.tgt), f) == f
    assert compose(f, BaseMorphism.identity(f.src)) == f
    z = BaseMorphism.zero(f.src, f.src)
    assert compose(f, z).is_zero()


def test_arrow_composition_is_path_concatenation(a3):
    f = arrow_map(a3, "3", "2")  # P3 -> P2
    g = arrow_map(a3, "2", "1")  # P2 -> P1
    gf = compose(g, f)
    (p,) = gf.comps
    assert p == a3.hom_basis("3", "1")[0] and len(p.arrows) == 2


def test_morphism_rejects_entries_outside_hom_space(a2):
    p1, p2 = BaseObject(a2, ("1",)), BaseObject(a2, ("2",))
    bad = {Path("1", "1", ()): Matrix(a2.field, [[1]])}
    with pytest.raises(BaseError):
        BaseMorphism(p1, p2, bad)


def test_split_idempotent_trivial_cases(vect):
    M = vect.obj(["k", "k"])
    s = split_idempotent(BaseMorphism.identity(M))
    assert s.image == M
    s0 = split_idempotent(BaseMorphism.zero(M, M))
    assert s0.image.is_zero()


def test_split_idempotent_diag_10(vect):
    M = vect.obj(["k", "k"])
    e = BaseMorphism(M, M, {Path("k", "k", ()): Matrix(QQ, [[1, 0], [0, 0]])})
    s = split_idempotent(e)
    assert len(s.image) == 1
    assert compose(s.retraction, s.section) == BaseMorphism.identity(s.image)
    assert compose(s.section, s.retraction) == e


def test_split_rejects_non_idempotent(vect):
    M = vect.obj(["k"])
    with pytest.raises(NotIdempotentError):
        split_idempotent(BaseMorphism.identity(M).scale(QQ(2)))


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_split_idempotent_random_conjugate(seed):
    # e = u diag(1..1,0..0) u^{-1} over A3; its image has the multiplicities of the 1-block
    import random
    from weightlab.sampling import _inverse_iso
    rng = random.Random(seed)
    cat = BaseCategory.from_quiver(Quiver.linear_a(3), PrimeField())
    summands = [rng.choice(cat.quiver.vertices) for _ in range(rng.randint(1, 4))]
    M = BaseObject(cat, tuple(summands))
    keep = [rng.random() < 0.5 for _ in summands]
    f = cat.field
    grids = {}
    for i, v in enumerate(summands):
        g = grids.setdefault(v, [[f.zero] * len(M) for _ in range(len(M))])
        g[i][i] = f.one if keep[i] else f.zero
    d = BaseMorphism(M, M, {Path(v, v, ()): Matrix(f, g) for v, g in grids.items()})
    u = random_automorphism(rng, M)
    e = compose(u, compose(d, _inverse_iso(u)))
    assert is_idempotent(e)
    s = split_idempotent(e)
    assert compose(s.retraction, s.section) == BaseMorphism.identity(s.image)
    assert compose(s.section, s.retraction) == e
    assert sorted(s.image.summands) == sorted(v for v, k in zip(summands, keep) if k)


def test_is_retract_base(a2):
    M = a2.obj(["1", "2"])
    assert is_retract_base(M, M)
    assert is_retract_base(a2.zero_object(), M)
    assert not is_retract_base(a2.obj(mult={"1": 2}), a2.obj(mult={"1": 1, "2": 5}))


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_composition_is_associative(seed):
    import random
    rng = random.Random(seed)
    cat = BaseCategory.from_quiver(Quiver.linear_a(3), PrimeField())

    def obj():
        return BaseObject(cat, tuple(rng.choice(cat.quiver.vertices) for _ in range(rng.randint(0, 3))))
    a, b, c, d = obj(), obj(), obj(), obj()
    f, g, h = random_morphism(rng, a, b), random_morphism(rng, b, c), random_morphism(rng, c, d)
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert compose(g, f + f) == compose(g, f) + compose(g, f)


def test_objects_from_different_categories_do_not_mix(vect, a2):
    with pytest.raises(BaseError):
        vect.obj(["k"]) + a2.obj(["1"])
