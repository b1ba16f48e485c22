import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from weightlab.base import BaseCategory, Quiver
from weightlab.complexes import Complex, GradedMap, cone, direct_sum, shift
from weightlab.homotopy import is_homotopy_equivalent_objects, is_contractible, summand_decompose
from weightlab.linalg import PrimeField
from weightlab.sampling import (
    contractible_piece, make_rng, random_chain_map, random_complex, random_heart_complex, random_splitting,
)
from weightlab.serialize import complex_from_json
from weightlab.weights import (
    Extend, Generator, NotNegativeError, RetractTower, Shift, WeightStructureSpec, Zero,
    construct_from_negative, negativity_check, retract_tower, stalk_generators, stupid_decomposition,
    verify_tree,
)
from weightlab.weights.certificates import tree_from_json, tree_to_json
from weightlab.weights.checks import check_axioms, corrupted_spec, heart_of, verify_extension_claims
from weightlab.weights.decomposition import combine_decompositions, trivial_high
from weightlab.weights.spec import decompose_presented, stupid_in_ge, stupid_in_le

seeds = st.integers(0, 2**32)
W = WeightStructureSpec.stupid()


def a3cat():
    return BaseCategory.from_quiver(Quiver.linear_a(3), PrimeField())


def vx(cat, terms, diff=None):
    return complex_from_json({"terms": {str(k): v for k, v in terms.items()},
                              "diff": {str(k): v for k, v in (diff or {}).items()}}, cat)


# --- membership ---------------------------------------------------------------

def test_membership_examples(vect):
    assert W.in_le(Complex.zero(vect)) and W.in_ge(Complex.zero(vect))
    k0 = vx(vect, {0: 1})
    assert W.in_le(k0) and W.in_ge(k0) and W.in_heart(k0)
    contractible = vx(vect, {-3: 1, -2: 1}, {-3: [[1]]})
    assert W.in_le(contractible) and W.in_ge(contractible)


def test_weight_direction_convention(vect):
    # high cohomological degree means low weight
    k1 = vx(vect, {1: 1})
    assert W.in_le(k1, 0) and W.in_le(k1, -1) and not W.in_le(k1, -2)
    assert not W.in_ge(k1, 0) and W.in_ge(k1, -1)


@given(seeds, st.integers(-2, 2), st.integers(-2, 2))
@settings(max_examples=40, deadline=None)
def test_shift_moves_weight(seed, m, k):
    rng = random.Random(seed)
    M = random_complex(rng, a3cat())
    assert W.in_le(M, m) == W.in_le(shift(M, k), m + k)
    assert W.in_ge(M, m) == W.in_ge(shift(M, k), m + k)


# --- decompositions -----------------------------------------------------------

def test_decomposition_trivial_cases(vect):
    M = vx(vect, {0: 1, 1: 1})
    d = W.decompose(M, 0)
    assert d.Y.is_zero() and not d.verify(W)
    d = W.decompose(shift(M, 3), 0)
    assert d.X.is_zero() and not d.verify(W)


def test_decomposition_of_two_term_split_complex(vect):
    M = vx(vect, {-1: 1, 0: 1})
    d = stupid_decomposition(M, 0)
    assert d.X.dims() == {0: 1} and d.Y.dims() == {-1: 1}
    assert d.verify(W) == []


@given(seeds, st.integers(-2, 2))
@settings(max_examples=40, deadline=None)
def test_stupid_decompositions_verify(seed, m):
    rng = random.Random(seed)
    M = random_complex(rng, a3cat())
    d = W.decompose(M, m)
    assert d.verify(W) == []


def test_verification_rejects_a_wrong_triangle(vect):
    M = vx(vect, {-1: 1, 0: 1})
    d2 = stupid_decomposition(M, 0)
    d2.x = GradedMap.zero(d2.X, d2.M)
    assert d2.verify(W)


# --- axiom checker ------------------------------------------------------------

def test_stupid_axioms_vect(vect):
    rng = make_rng(11)
    rep = check_axioms(W, [random_complex(rng, vect) for _ in range(30)])
    assert rep.ok, rep.to_json()


def test_corrupted_spec_has_orthogonality_witness(vect):
    rng = make_rng(11)
    rep = check_axioms(corrupted_spec(), [random_complex(rng, vect) for _ in range(10)])
    assert not rep.ok
    w = rep.first("orthogonality")
    assert w is not None and w.witness["hom_dim"] > 0


def test_axioms_on_empty_sample_list():
    rep = check_axioms(W, [])
    assert rep.ok
    assert all(a["checked"] == 0 for a in rep.to_json()["axioms"])


def test_axiom_report_is_deterministic(vect):
    def run():
        rng = make_rng(3)
        return json.dumps(check_axioms(W, [random_complex(rng, vect) for _ in range(10)]).to_json(), sort_keys=True)
    assert run() == run()


# --- negativity and generated structures --------------------------------------

def test_negativity_examples(vect):
    assert negativity_check(stalk_generators(vect)).negative
    M = vx(vect, {0: 1})
    rep = negativity_check([M, shift(M, 1)])
    assert not rep.negative and rep.witness["i"] == 1
    assert negativity_check([]).negative


def test_construct_rejects_non_negative(vect):
    M = vx(vect, {0: 1})
    with pytest.raises(NotNegativeError):
        construct_from_negative([M, shift(M, 1)])


@pytest.mark.parametrize("seed", range(3))
def test_generated_structure_equals_stupid(any_cat, seed):
    G = construct_from_negative(stalk_generators(any_cat))
    rng = make_rng(seed)
    for _ in range(15):
        M = random_complex(rng, any_cat, -1, 1, pieces=(1, 3), contractible=(0, 1))
        for m in (-1, 0, 1):
            assert G.in_le(M, m) == stupid_in_le(M, m)
            assert G.in_ge(M, m) == stupid_in_ge(M, m)


def test_generated_structure_examples(a3):
    G = construct_from_negative(stalk_generators(a3))
    b = stalk_generators(a3)[1]
    assert G.in_heart(b)
    # w>=0 is stable under [1] and w<=0 under [-1]: b[1] has weight exactly 1
    assert G.in_ge(shift(b, 1), 0) and not G.in_le(shift(b, 1), 0)
    assert G.in_le(shift(b, -1), 0) and not G.in_ge(shift(b, -1), 0)
    assert G.in_heart(shift(b, 1)) is False


def test_generated_decompositions_verify(a3):
    G = construct_from_negative(stalk_generators(a3))
    rng = make_rng(4)
    for _ in range(10):
        M = random_complex(rng, a3, -1, 1)
        for m in (-1, 0):
            d = G.decompose(M, m)
            assert d.verify(G) == []


def test_heart_examples(a3):
    gens = stalk_generators(a3)
    G = construct_from_negative(gens)
    b1, b2 = gens[0], gens[2]
    rep = heart_of(G, [b1, direct_sum(b1, b2), shift(b1, 1)])
    assert rep.ok and rep.heart_count == 2
    assert [e.in_heart for e in rep.entries] == [True, True, False]


def test_heart_on_random_heart_objects(a3):
    G = construct_from_negative(stalk_generators(a3))
    rng = make_rng(9)
    rep = heart_of(G, [random_heart_complex(rng, a3) for _ in range(10)])
    assert rep.ok and rep.heart_count == 10


# --- combining decompositions -------------------------------------------------

def test_combine_with_zero_pieces(vect):
    M = vx(vect, {-1: 1, 0: 2})
    Z = Complex.zero(vect)
    t = cone(GradedMap.zero(shift(M, -1), Z))
    d = combine_decompositions(t, W.decompose(t.N, 0), W.decompose(t.M1, 0))
    assert d.verify(W) == [] and is_homotopy_equivalent_objects(d.X, W.decompose(M, 0).X)
    t = cone(GradedMap.zero(Z, M))
    d = combine_decompositions(t, W.decompose(t.N, 0), W.decompose(t.M1, 0))
    assert d.verify(W) == []


def test_combine_split_extension(a3):
    rng = make_rng(2)
    A, B = random_complex(rng, a3), random_complex(rng, a3)
    t = cone(GradedMap.zero(shift(A, -1), B))
    d = combine_decompositions(t, W.decompose(t.N, 0), W.decompose(t.M1, 0))
    assert d.verify(W) == []
    dA, dB = W.decompose(A, 0), W.decompose(B, 0)
    assert is_homotopy_equivalent_objects(d.X, direct_sum(dA.X, dB.X))
    assert is_homotopy_equivalent_objects(d.Y, direct_sum(dA.Y, dB.Y))


@given(seeds, st.integers(-1, 1))
@settings(max_examples=30, deadline=None)
def test_combine_random_cones(seed, m):
    rng = random.Random(seed)
    cat = a3cat()
    A, B = random_complex(rng, cat, -1, 1), random_complex(rng, cat, -1, 1)
    t = cone(random_chain_map(rng, A, B))
    d = combine_decompositions(t, W.decompose(t.N, m), W.decompose(t.M1, m))
    assert d.M == t.cone
    assert d.verify(W) == []


# --- retract towers -----------------------------------------------------------

def test_tower_height_zero(vect):
    M = vx(vect, {0: 1})
    ident = GradedMap.identity(M)
    tris, _ = retract_tower(M, M, ident, ident, 0)
    assert tris == []


def test_tower_of_identity_has_zero_complement(vect):
    M = vx(vect, {0: 1, 1: 2})
    ident = GradedMap.identity(M)
    tris, sp = retract_tower(M, M, ident, ident, 1)
    assert len(tris) == 2 and sp.P.is_zero()
    assert all(t.verify() == [] for t in tris)


@given(seeds, st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_towers_of_random_splittings(seed, n):
    rng = random.Random(seed)
    N, M, r, s = random_splitting(rng, a3cat())
    tris, sp = retract_tower(N, M, r, s, n)
    assert sp.check()
    assert len(tris) == 2 * n
    assert all(t.verify() == [] for t in tris)
    # recomposing: M = N + P up to homotopy
    assert is_homotopy_equivalent_objects(M, direct_sum(sp.N, sp.P))


# --- certificates ---------------------------------------------------------------

def test_generator_and_shift_certificates(a3):
    gens = stalk_generators(a3)
    G = construct_from_negative(gens)
    d = decompose_presented(Generator(0), 0, gens)
    assert d.Y.is_zero() and d.verify(G) == []
    d = decompose_presented(Shift(Generator(0), 2), 0, gens)
    assert d.X.is_zero() and d.verify(G) == []
    d = decompose_presented(Shift(Generator(0), 2), 2, gens)
    assert d.Y.is_zero()


def test_split_extension_certificate(a3):
    gens = stalk_generators(a3)
    G = construct_from_negative(gens)
    tree = Extend(Generator(0), Shift(Generator(1), -1))
    assert verify_tree(tree, gens) == []
    d = decompose_presented(tree, 0, gens)
    assert d.verify(G) == []
    ref = W.decompose(tree.realize(gens), 0)
    assert is_homotopy_equivalent_objects(d.X, ref.X)
    assert is_homotopy_equivalent_objects(d.Y, ref.Y)


def test_retract_tower_certificate(a3):
    gens = stalk_generators(a3)
    G = construct_from_negative(gens)
    rng = make_rng(6)
    N, M, r, s = random_splitting(rng, a3)
    tree = RetractTower(G.certify(M), s, r)
    assert verify_tree(tree, gens) == []
    for m in (-1, 0, 1):
        d = decompose_presented(tree, m, gens)
        assert d.M == N and d.verify(G) == []


def test_tree_json_roundtrip(a3):
    gens = stalk_generators(a3)
    G = construct_from_negative(gens)
    rng = make_rng(8)
    M = random_complex(rng, a3)
    tree = G.certify(M)
    back = tree_from_json(json.loads(json.dumps(tree_to_json(tree))), gens)
    assert back.realize(gens) == tree.realize(gens) == M


def test_bad_tree_is_reported(a3):
    gens = stalk_generators(a3)
    assert verify_tree(Generator(7), gens)
    assert verify_tree(Zero(), gens) == []


# --- extension claims (slope pairs) ---------------------------------------------

def test_extension_identity_pair(vect):
    rng = make_rng(1)
    rep = verify_extension_claims("identity", [random_complex(rng, vect) for _ in range(5)], W)
    assert rep.ok


def test_extension_c_cprime_fails_with_witness():
    from weightlab import slopes as sl
    rng = random.Random(0)
    rep = verify_extension_claims("C-C'", [sl.random_cprime_object(rng) for _ in range(10)])
    assert not rep.ok
    # the reported witness re-verifies when fed back in
    M = sl.SlopeObject.from_json(rep.to_json()["obstruction"]["object"])
    assert sl.no_decomposition_witness(M).verify() == []
    found, tried = sl.exhaustive_decomposition_search(M)
    assert tried and not found
